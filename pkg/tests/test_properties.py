import itertools

from hypothesis import HealthCheck, given, settings, strategies as st

from flagsphere.complex import (
    Graph,
    SimplicialComplex,
    canonical_form,
    clique_complex,
    contract_edge,
    edge_subdivision,
    from_facets,
    induced_subcomplex,
    is_isomorphic,
    join,
    link,
    one_skeleton,
    relabel,
    simplex,
    star,
    suspension,
)
from flagsphere.dsl import Atom, Contract, Family, Join, Link, Split, Subdivide, Susp, parse_expr, to_text
from flagsphere.homology import betti_numbers, is_homology_sphere
from flagsphere.vectors import complex_gamma, f_vector

from conftest import brute_faces

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@st.composite
def complexes(draw, max_n=8):
    n = draw(st.integers(1, max_n))
    facets = draw(st.lists(st.sets(st.integers(0, n - 1), min_size=1, max_size=4), max_size=8))
    return from_facets(n, [tuple(sorted(f)) for f in facets])


@st.composite
def graphs(draw, max_n=7):
    n = draw(st.integers(1, max_n))
    pairs = list(itertools.combinations(range(n), 2))
    keep = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph.from_edges(n, [p for p, k in zip(pairs, keep) if k])


@given(complexes())
def test_downward_closure(c):
    for f in brute_faces(c):
        assert c.contains(f)
    assert all(any(v in F for F in c.facets) for v in range(c.n))


@given(complexes())
def test_star_is_join_of_face_and_link(c):
    for f in brute_faces(c):
        if f:
            assert is_isomorphic(star(c, f), join(simplex(len(f)), link(c, f)))


@given(graphs())
def test_flag_links_are_flag_and_induced(g):
    c = clique_complex(g)
    for f in brute_faces(c):
        lk = link(c, f)
        assert lk.is_flag
        if f:
            assert induced_subcomplex(c, lk.labels) == SimplicialComplex._make(lk.n, lk.facet_masks)


@given(complexes(max_n=6))
def test_clique_of_skeleton_equals_c_iff_flag(c):
    assert (clique_complex(one_skeleton(c)) == c) == c.is_flag


def test_clique_of_skeleton_all_graphs_up_to_5():
    for n in range(1, 6):
        pairs = list(itertools.combinations(range(n), 2))
        for mask in range(1 << len(pairs)):
            g = Graph.from_edges(n, [p for i, p in enumerate(pairs) if mask >> i & 1])
            c = clique_complex(g)
            assert c.is_flag and one_skeleton(c) == g


@given(graphs(max_n=9), st.data())
def test_subdivide_contract_round_trip(g, data):
    c = clique_complex(g)
    edges = c.graph.edges()
    if not edges:
        return
    u, w = data.draw(st.sampled_from(edges))
    s = edge_subdivision(c, (u, w))
    assert contract_edge(s, (u, c.n)) == c


@given(complexes(max_n=7), st.data())
def test_canonical_form_invariant(c, data):
    perm = data.draw(st.permutations(range(c.n)))
    assert canonical_form(relabel(c, perm)) == canonical_form(c)


@given(complexes(max_n=6), complexes(max_n=5), complexes(max_n=4))
def test_join_commutative_associative(a, b, c):
    assert is_isomorphic(join(a, b), join(b, a))
    assert is_isomorphic(join(join(a, b), c), join(a, join(b, c)))


@given(complexes(max_n=7))
def test_euler_poincare(c):
    f = f_vector(c)
    b = betti_numbers(c).reduced_betti
    assert sum((-1) ** i * x for i, x in enumerate(f)) == sum((-1) ** i * x for i, x in enumerate(b))


def test_suspension_invariance_on_subjects(subjects):
    for s in subjects:
        if s.c.n <= 12:
            assert complex_gamma(suspension(s.c)) == s.gamma


def test_join_gamma_is_product(census9):
    spheres = [e for e in census9 if 4 <= e.n <= 7]
    for a, b in itertools.combinations_with_replacement(spheres, 2):
        assert complex_gamma(join(a.complex(), b.complex())) == a.gamma * b.gamma


def test_dehn_sommerville_on_certified_spheres(census9):
    from flagsphere.vectors import h_polynomial, is_dehn_sommerville

    for e in census9:
        c = e.complex()
        assert is_homology_sphere(c)
        assert is_dehn_sommerville(h_polynomial(f_vector(c), e.d), e.d)


leaf = st.one_of(
    st.sampled_from([Atom("S0"), Atom("empty"), Atom("point")]),
    st.builds(Atom, st.sampled_from(["C", "oct", "simplex"]), st.integers(3, 9)),
    st.builds(Family, st.sampled_from(["upsilon1", "upsilon2"]), st.integers(0, 3), st.integers(0, 4)),
)
small = st.integers(0, 12)
vset = st.lists(small, min_size=1, max_size=3, unique=True).map(lambda xs: tuple(sorted(xs)))


def _extend(children):
    non_join = children.filter(lambda e: not isinstance(e, Join))
    return st.one_of(
        st.lists(non_join, min_size=2, max_size=3).map(lambda ps: Join(tuple(ps))),
        st.builds(Susp, children, st.integers(1, 4)),
        st.builds(Subdivide, children, small, small),
        st.builds(Contract, children, small, small),
        st.builds(Link, children, vset),
        st.builds(Split, children, small, vset),
    )


exprs = st.recursive(leaf, _extend, max_leaves=6)


@given(exprs)
def test_parse_print_round_trip(e):
    assert parse_expr(to_text(e)) == e
