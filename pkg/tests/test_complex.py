import itertools

import pytest

from flagsphere.complex import (
    Graph,
    SimplicialComplex,
    clique_complex,
    contract_edge,
    cycle,
    delete_face,
    delete_subcomplex,
    edge_in_induced_4cycle,
    edge_subdivision,
    empty_complex,
    f_vector,
    format_facets,
    from_facets,
    induced_subcomplex,
    is_flag,
    is_isomorphic,
    join,
    k_skeleton,
    link,
    missing_faces,
    octahedral,
    one_skeleton,
    parse_facets,
    point,
    relabel,
    simplex,
    sphere0,
    star,
    suspend_k,
    suspension,
    vertex_split,
)
from flagsphere.errors import InvalidParameter, InvalidVertex, JNotEquator, NotAFace, NotAnEdge

from conftest import brute_cliques, brute_faces
from oracles import f_vector_brute

C5 = cycle(5)
OCT = octahedral(3)


def test_from_facets_dedup_and_domination():
    c = from_facets(3, [(0, 1), (1, 2), (0, 1)])
    assert c.facets == ((0, 1), (1, 2))


def test_from_facets_promotes_isolated_vertices():
    c = from_facets(4, [(0, 1), (1,)])
    assert c.facets == ((0, 1), (2,), (3,))


def test_from_facets_rejects_out_of_range():
    with pytest.raises(InvalidVertex):
        from_facets(3, [(0, 3)])
    with pytest.raises(InvalidVertex):
        from_facets(3, [(-1, 0)])


def test_c5_basic():
    assert C5.dim == 1 and len(C5.facets) == 5
    assert f_vector(C5) == (1, 5, 5)


def test_octahedron_clique_complex_matches_brute_force():
    edges = [(a, b) for a, b in itertools.combinations(range(6), 2) if a // 2 != b // 2]
    c = clique_complex(Graph.from_edges(6, edges))
    assert f_vector(c) == (1, 6, 12, 8)
    assert {f for f in brute_faces(c)} == set(brute_cliques(6, edges))
    assert c == OCT


def test_clique_complex_k4_is_solid_tetrahedron():
    c = clique_complex(Graph.from_edges(4, itertools.combinations(range(4), 2)))
    assert c.facets == ((0, 1, 2, 3),)


def test_empty_complex_f_vector():
    assert f_vector(empty_complex()) == (1,)


def test_link_examples():
    assert is_isomorphic(link(OCT, (0,)), cycle(4))
    assert link(C5, (0, 1)) == empty_complex()
    sc = suspension(C5)
    assert link(sc, (5,)) == C5
    with pytest.raises(NotAFace):
        link(C5, (0, 2))


def test_link_reports_index_map():
    lk = link(C5, (0,))
    assert lk.labels == (1, 4)


def test_deletions():
    assert is_isomorphic(delete_subcomplex(C5, [0]), from_facets(4, [(0, 1), (1, 2), (2, 3)]))
    tri = simplex(3)
    assert delete_face(tri, (0, 1)).facets == ((0, 2), (1, 2))
    assert delete_subcomplex(suspension(C5), [5, 6]) == C5
    with pytest.raises(NotAFace):
        star(C5, (0, 2))


def test_star_is_cone_over_link():
    for c in (OCT, join(C5, C5), suspension(cycle(6))):
        for f in brute_faces(c):
            if not f:
                continue
            st = star(c, f)
            expect = join(simplex(len(f)), link(c, f))
            assert is_isomorphic(st, expect)


def test_induced_subcomplex_examples():
    assert induced_subcomplex(C5, [0, 1]).facets == ((0, 1),)
    assert induced_subcomplex(C5, [0, 2]).facets == ((0,), (1,))


def test_missing_faces():
    assert sorted(missing_faces(C5)) == sorted(
        (a, b) for a, b in itertools.combinations(range(5), 2) if (b - a) % 5 not in (1, 4)
    )
    c3 = cycle(3)
    assert missing_faces(c3) == [(0, 1, 2)]
    assert sorted(missing_faces(OCT)) == [(0, 1), (2, 3), (4, 5)]


def test_is_flag_examples():
    assert is_flag(C5) and is_flag(OCT)
    assert not is_flag(cycle(3))


def test_joins_and_suspensions():
    jj = join(C5, C5)
    f = f_vector(jj)
    assert f[1] == 10 and f[2] == 35
    assert suspension(empty_complex()) == sphere0()
    for d in range(5):
        assert suspend_k(empty_complex(), d) == octahedral(d)
    s = suspension(C5)
    assert s.n == 7 and not s.graph.has_edge(5, 6)


def test_constructors():
    assert f_vector(cycle(5)) == (1, 5, 5)
    with pytest.raises(InvalidParameter):
        cycle(2)
    assert join(simplex(3), point()) == simplex(4)
    assert octahedral(3).graph.has_edge(0, 2) and not octahedral(3).graph.has_edge(0, 1)


def test_induced_4cycle():
    c6 = cycle(6)
    assert not any(edge_in_induced_4cycle(c6, e) for e in c6.graph.edges())
    c4 = cycle(4)
    assert all(edge_in_induced_4cycle(c4, e) for e in c4.graph.edges())
    assert all(edge_in_induced_4cycle(OCT, e) for e in OCT.graph.edges())
    with pytest.raises(NotAnEdge):
        edge_in_induced_4cycle(C5, (0, 2))


def _brute_induced_4cycle(c, e):
    a, b = e
    g = c.graph
    for s, t in itertools.permutations(set(range(c.n)) - {a, b}, 2):
        if g.has_edge(b, s) and g.has_edge(s, t) and g.has_edge(t, a):
            if not g.has_edge(a, s) and not g.has_edge(b, t):
                return True
    return False


def test_induced_4cycle_matches_brute_force():
    for c in (suspension(C5), join(C5, C5), edge_subdivision(suspension(C5), (0, 5))):
        for e in c.graph.edges():
            assert edge_in_induced_4cycle(c, e) == _brute_induced_4cycle(c, e)


def test_contraction_examples():
    assert is_isomorphic(contract_edge(cycle(6), (0, 1)), C5)
    assert is_isomorphic(contract_edge(C5, (0, 1)), cycle(4))
    with pytest.raises(NotAnEdge):
        contract_edge(C5, (0, 2))


def test_subdivision_examples():
    assert is_isomorphic(edge_subdivision(C5, (0, 1)), cycle(6))
    e = (0, 2)
    s = edge_subdivision(OCT, e)
    before, after = f_vector(OCT), f_vector(s)
    assert after[1] == before[1] + 1
    assert after[2] == before[2] + 1 + link(OCT, e).n
    with pytest.raises(NotAnEdge):
        edge_subdivision(C5, (0, 2))


def test_subdivide_then_contract_round_trip():
    for c in (C5, OCT, suspension(C5), join(C5, C5), suspension(cycle(6))):
        for u, w in c.graph.edges():
            s = edge_subdivision(c, (u, w))
            assert contract_edge(s, (u, c.n)) == c


def test_vertex_split_matches_subdivision():
    for c in (OCT, suspension(C5), join(C5, C5)):
        for u, w in c.graph.edges():
            j = link(c, (u, w)).labels
            assert vertex_split(c, u, j, toward=w) == edge_subdivision(c, (u, w))


def test_vertex_split_suspension_vertex_of_sigma_c5():
    from flagsphere.structure import FamilyKind, recognize_family

    s = vertex_split(suspension(C5), 5, [1, 4])
    assert s.n == 8
    assert recognize_family(s).kind is FamilyKind.UPSILON2


def test_vertex_split_rejects_full_link():
    with pytest.raises(JNotEquator):
        vertex_split(suspension(C5), 5, range(5))
    with pytest.raises(JNotEquator):
        vertex_split(suspension(C5), 5, [1, 2])


def test_k_skeleton():
    sk = k_skeleton(OCT, 1)
    assert sk.dim == 1 and len(sk.facets) == 12
    assert k_skeleton(OCT, 5) == OCT
    assert f_vector(k_skeleton(join(C5, C5), 1))[2] == 35


def test_isomorphism_examples():
    perm = [3, 0, 4, 1, 2]
    assert is_isomorphic(C5, relabel(C5, perm))
    assert not is_isomorphic(C5, cycle(6))
    assert is_isomorphic(suspension(C5), join(C5, sphere0()))


def test_facet_file_round_trip():
    text = "#n=4\n0 1\n1 2\n"
    c, labels = parse_facets(text)
    assert c.n == 4 and c.facets == ((0, 1), (1, 2), (3,))
    sparse, labels = parse_facets("10 20\n20 30\n\n# comment\n")
    assert sparse.n == 3 and labels == {10: 0, 20: 1, 30: 2}
    assert parse_facets(format_facets(OCT))[0] == OCT


def test_clique_of_skeleton_iff_flag_small_graphs():
    n = 5
    pairs = list(itertools.combinations(range(n), 2))
    for mask in range(0, 1 << len(pairs), 7):
        g = Graph.from_edges(n, [p for i, p in enumerate(pairs) if mask >> i & 1])
        c = clique_complex(g)
        assert is_flag(c) and clique_complex(one_skeleton(c)) == c
    assert not is_flag(cycle(3))
    assert clique_complex(one_skeleton(cycle(3))) != cycle(3)


def test_f_vector_matches_brute_force():
    for c in (C5, OCT, join(C5, cycle(6)), suspend_k(C5, 2)):
        assert list(f_vector(c)) == f_vector_brute(c)
