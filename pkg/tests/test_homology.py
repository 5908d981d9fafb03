import pytest

from flagsphere.complex import (
    cycle,
    delete_subcomplex,
    empty_complex,
    from_facets,
    join,
    octahedral,
    simplex,
    sphere0,
    suspension,
)
from flagsphere.homology import (
    Field,
    betti_numbers,
    gf2_rank,
    homology_ball,
    is_acyclic,
    is_homology_ball,
    is_homology_sphere,
    is_pseudomanifold,
    rational_rank,
)
from flagsphere.structure import find_equators, hemispheres
from flagsphere.vectors import f_vector

from oracles import reduced_betti_dense

C5 = cycle(5)
OCT = octahedral(3)


def test_octahedral_betti():
    for d in range(1, 7):
        b = betti_numbers(octahedral(d))
        assert b.reduced_betti == tuple(1 if i == d else 0 for i in range(d + 1))
        assert is_homology_sphere(octahedral(d))


def test_small_betti_examples():
    assert betti_numbers(sphere0()).betti(0) == 1
    assert is_acyclic(simplex(4))
    assert betti_numbers(empty_complex()).reduced_betti == (1,)
    assert not is_acyclic(empty_complex())
    assert not is_acyclic(sphere0())


@pytest.mark.parametrize("field", ["gf2", "q"])
def test_spheres(field):
    for c in (C5, OCT, suspension(C5), join(C5, C5)):
        assert is_homology_sphere(c, field)
    assert not is_homology_sphere(simplex(3), field)
    two = from_facets(12, list(OCT.facets) + [tuple(v + 6 for v in f) for f in OCT.facets])
    assert not is_homology_sphere(two, field)
    assert betti_numbers(two, field).betti(2) == 2


def test_balls():
    path = from_facets(3, [(0, 1), (1, 2)])
    cert = homology_ball(path)
    assert cert.is_ball and sorted(cert.boundary.labels) == [0, 2]
    plus, minus = hemispheres(OCT, (2, 3, 4, 5))
    assert is_homology_ball(plus) and is_homology_ball(minus)
    assert len(plus.facets) == 4
    assert not is_homology_ball(C5)


def test_pseudomanifold():
    assert is_pseudomanifold(C5, closed=True)
    path = from_facets(3, [(0, 1), (1, 2)])
    assert is_pseudomanifold(path) and not is_pseudomanifold(path, closed=True)
    book = from_facets(5, [(0, 1, 2), (0, 1, 3), (0, 1, 4)])
    assert not is_pseudomanifold(book)


def test_ranks():
    assert gf2_rank([0b11, 0b110, 0b101]) == 2
    assert rational_rank([{0: 1, 1: 1}, {1: 1, 2: 1}, {0: 1, 2: -1}]) == 2
    assert rational_rank([{0: 1, 1: 1}, {1: 1, 2: 1}, {0: 1, 2: 1}]) == 3


def test_betti_matches_dense_oracle():
    rp2 = from_facets(6, [(0, 1, 2), (0, 2, 3), (0, 3, 4), (0, 4, 5), (0, 1, 5),
                          (1, 2, 4), (2, 3, 5), (1, 3, 4), (1, 3, 5), (2, 4, 5)])
    for c in (C5, OCT, join(C5, C5), rp2, from_facets(4, [(0, 1), (2, 3)])):
        assert betti_numbers(c, Field.GF2).reduced_betti == reduced_betti_dense(c, True)
        assert betti_numbers(c, Field.Q).reduced_betti == reduced_betti_dense(c, False)
    # the projective plane separates the two fields
    assert betti_numbers(rp2, "gf2").reduced_betti != betti_numbers(rp2, "q").reduced_betti
    assert not is_homology_sphere(rp2, "gf2")


def test_euler_poincare():
    for c in (C5, OCT, join(C5, C5), simplex(4), from_facets(4, [(0, 1), (2, 3)])):
        f = f_vector(c)
        b = betti_numbers(c).reduced_betti
        assert sum((-1) ** i * x for i, x in enumerate(f)) == sum((-1) ** i * x for i, x in enumerate(b))


def test_suspension_shifts_homology():
    for c in (C5, from_facets(4, [(0, 1), (2, 3)]), sphere0()):
        b, sb = betti_numbers(c), betti_numbers(suspension(c))
        for k in range(c.dim + 1):
            assert sb.betti(k + 1) == b.betti(k)


def test_equator_deletion_is_homologous_to_s0():
    for c in (OCT, suspension(C5), join(C5, C5)):
        for eq in find_equators(c):
            rest = delete_subcomplex(c, eq)
            assert betti_numbers(rest).reduced_betti[:2] == (0, 1)
            assert not any(betti_numbers(rest).reduced_betti[2:])
            assert len(rest.graph.components()) == 2
