"""Antipodes, suspensions, equators, join factors and the extremal families.

Most routines assume a flag homology sphere; they do not re-certify their
input unless stated.
"""

from __future__ import annotations

import enum
import itertools
import random
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .complex import (
    SimplicialComplex,
    contract_edge,
    cycle,
    delete_subcomplex,
    edge_in_induced_4cycle,
    edge_subdivision,
    empty_complex,
    face_mask,
    induced_subcomplex,
    is_isomorphic,
    iter_bits,
    join,
    join_all,
    link,
    mask_face,
    sphere0,
    suspend_k,
)
from .errors import ComponentCountNotTwo, HypothesisViolated, InvalidParameter
from .homology import Field, SphereCertifier, homology_ball
from .vectors import complex_gamma


# --- antipodes --------------------------------------------------------------------


def antipodes(c: SimplicialComplex, v: int) -> tuple[int, ...]:
    """Vertices ``w`` such that ``{v, w}`` is a missing edge."""
    full = (1 << c.n) - 1
    return mask_face(full & ~c.graph.adj[v] & ~(1 << v))


@dataclass(frozen=True)
class AntipodeProfile:
    iota: tuple[int, ...]
    polar_size: int

    def to_json(self) -> dict:
        return {"iota": list(self.iota), "polar_size": self.polar_size}


def antipode_profile(c: SimplicialComplex) -> AntipodeProfile:
    """Antipode counts per vertex and their minimum (0 for a vertexless complex)."""
    iota = tuple(len(antipodes(c, v)) for v in range(c.n))
    return AntipodeProfile(iota, min(iota) if iota else 0)


def excess(c: SimplicialComplex) -> int:
    """``n - 2d``: the vertex excess over the octahedral sphere of the same dimension."""
    return c.n - 2 * (c.dim + 1)


def polar_size_bounds_check(c: SimplicialComplex) -> bool:
    """``1 <= pi <= ell + 1`` and ``gamma_1(lk v) == ell - iota(v) + 1`` for every vertex."""
    ell = excess(c)
    prof = antipode_profile(c)
    if not 1 <= prof.polar_size <= ell + 1:
        return False
    for v in range(c.n):
        lk = link(c, (v,))
        if lk.n - 2 * (lk.dim + 1) != ell - prof.iota[v] + 1:
            return False
    return True


# --- suspensions ------------------------------------------------------------------


def suspension_pairs(c: SimplicialComplex) -> list[tuple[int, int]]:
    """Pairs of vertices that are each other's unique antipode."""
    out = []
    for u in range(c.n):
        a = antipodes(c, u)
        if len(a) == 1 and a[0] > u and antipodes(c, a[0]) == (u,):
            out.append((u, a[0]))
    return out


def is_suspension(c: SimplicialComplex) -> bool:
    return bool(suspension_pairs(c))


def desuspend_core(
    c: SimplicialComplex, rng: random.Random | None = None
) -> tuple[SimplicialComplex, int]:
    """Strip suspension pairs until none is left; returns ``(core, m)``.

    With ``rng`` the pair removed at each step is chosen at random, which is
    how order independence is exercised. The core's ``labels`` index into ``c``.
    """
    labels = list(range(c.n))
    m = 0
    core = c
    while True:
        pairs = suspension_pairs(core)
        if not pairs:
            break
        pair = rng.choice(pairs) if rng is not None else pairs[0]
        nxt = delete_subcomplex(core, pair)
        labels = [labels[i] for i in nxt.labels]
        core = nxt
        m += 1
    out = SimplicialComplex._make(core.n, core.facet_masks, labels=labels)
    return out, m


# --- equators and hemispheres -----------------------------------------------------


def is_equator(
    c: SimplicialComplex,
    vertices: Iterable[int],
    field: Field | str = Field.GF2,
    certifier: SphereCertifier | None = None,
) -> bool:
    sub = induced_subcomplex(c, vertices)
    if sub.dim != c.dim - 1:
        return False
    certifier = certifier or SphereCertifier(field)
    return certifier(sub)


def find_equators(
    c: SimplicialComplex, field: Field | str = Field.GF2
) -> list[tuple[int, ...]]:
    """All vertex sets spanning an equator, smallest first then lexicographic.

    Candidates are pruned before certification: at least ``2(d-1)`` vertices,
    at least two vertices left over, the complement splitting into exactly
    two components, and a pure induced complex of dimension ``d-2``.
    """
    d = c.dim + 1
    n = c.n
    certifier = SphereCertifier(field)
    g = c.graph
    full = (1 << n) - 1
    out = []
    for size in range(max(2 * (d - 1), 0), n - 1):
        for combo in itertools.combinations(range(n), size):
            s = face_mask(combo)
            if len(g.components(full & ~s)) != 2:
                continue
            sub = induced_subcomplex(c, combo)
            if sub.dim != d - 2 or not sub.is_pure:
                continue
            if certifier(sub):
                out.append(combo)
    return out


def hemispheres(
    c: SimplicialComplex, equator: Iterable[int]
) -> tuple[SimplicialComplex, SimplicialComplex]:
    """Split ``c`` along an equator into ``(plus, minus)``.

    ``plus`` contains the component of ``c - equator`` holding the smallest
    vertex index. Both results carry ``labels`` into ``c``.
    """
    s = face_mask(equator)
    full = (1 << c.n) - 1
    comps = c.graph.components(full & ~s)
    if len(comps) != 2:
        raise ComponentCountNotTwo(f"deleting the equator leaves {len(comps)} components")
    comps.sort(key=lambda m: m & -m)
    plus = induced_subcomplex(c, mask_face(full & ~comps[1]))
    minus = induced_subcomplex(c, mask_face(full & ~comps[0]))
    return plus, minus


def hemisphere_certificates(c: SimplicialComplex, equator: Sequence[int], field: Field | str = Field.GF2) -> bool:
    """Both hemispheres are homology balls whose boundary is the equator."""
    eq = induced_subcomplex(c, equator)
    for h in hemispheres(c, equator):
        cert = homology_ball(h, field)
        if not cert.is_ball:
            return False
        bverts = sorted(h.labels[i] for i in cert.boundary.labels)
        if bverts != sorted(equator) or not is_isomorphic(cert.boundary, eq):
            return False
    return True


# --- join factorisation -----------------------------------------------------------


def join_factorization(c: SimplicialComplex) -> list[SimplicialComplex]:
    """Maximal join factors: induced complexes on components of the missing-edge graph.

    Factors carry ``labels`` into ``c`` and are ordered by smallest vertex.
    """
    comps = c.graph.complement().components()
    comps.sort(key=lambda m: m & -m)
    return [induced_subcomplex(c, mask_face(m)) for m in comps]


def _is_cycle_of(c: SimplicialComplex, k: int) -> bool:
    if c.n != k or c.dim != 1 or len(c.facet_masks) != k:
        return False
    g = c.graph
    return all(g.degree(v) == 2 for v in range(k)) and len(g.components()) == 1


def _is_s0(c: SimplicialComplex) -> bool:
    return c.n == 2 and c.dim == 0


def _cycle_order(c: SimplicialComplex) -> list[int]:
    g = c.graph
    order = [0]
    prev = -1
    while len(order) < c.n:
        cur = order[-1]
        nxt = next(w for w in g.neighbors(cur) if w != prev)
        prev = cur
        order.append(nxt)
    return order


# --- families ---------------------------------------------------------------------


class FamilyKind(str, enum.Enum):
    OCT_C5 = "OctahedralJoinC5Power"
    UPSILON1 = "Upsilon1"
    UPSILON2 = "Upsilon2"
    OTHER = "Other"


@dataclass(frozen=True)
class FamilyDescriptor:
    kind: FamilyKind
    m: int = 0
    ell: int = 0
    witness: dict = field(default_factory=dict, compare=False)

    def to_json(self) -> dict:
        return {"kind": self.kind.value, "m": self.m, "ell": self.ell, "witness": self.witness}

    def rebuild(self) -> SimplicialComplex:
        return construct_family(self.kind, self.m, self.ell)


def join_power(c: SimplicialComplex, k: int) -> SimplicialComplex:
    return join_all([c] * k)


def construct_family(kind: FamilyKind | str, m: int, ell: int) -> SimplicialComplex:
    """Canonical instances of the three extremal families.

    * ``OctahedralJoinC5Power``: ``ell`` pentagons joined, then suspended ``m`` times.
    * ``Upsilon1``: ``ell - 2`` pentagons and a hexagon joined, suspended ``m`` times.
    * ``Upsilon2``: ``ell - 1`` pentagons suspended ``m`` times, with the edge from
      the first suspension vertex to vertex 0 subdivided.
    """
    kind = FamilyKind(kind)
    if m < 0 or ell < 0:
        raise InvalidParameter("m and ell must be non-negative")
    if kind is FamilyKind.OCT_C5:
        return suspend_k(join_power(cycle(5), ell), m)
    if kind is FamilyKind.UPSILON1:
        if ell < 2:
            raise InvalidParameter("Upsilon1 needs ell >= 2")
        return suspend_k(join(join_power(cycle(5), ell - 2), cycle(6)), m)
    if kind is FamilyKind.UPSILON2:
        if ell < 2 or m < 1:
            raise InvalidParameter("Upsilon2 needs ell >= 2 and m >= 1")
        base = suspend_k(join_power(cycle(5), ell - 1), m)
        return edge_subdivision(base, (0, 5 * (ell - 1)))
    raise InvalidParameter(f"cannot construct family {kind.value}")


def _oct_c5_witness(c: SimplicialComplex, factors: list[SimplicialComplex]) -> dict | None:
    pairs, c5 = [], []
    for f in factors:
        if _is_s0(f):
            pairs.append(list(f.labels))
        elif _is_cycle_of(f, 5):
            c5.append([f.labels[i] for i in _cycle_order(f)])
        else:
            return None
    return {"suspension_pairs": pairs, "c5_blocks": c5}


def recognize_family(c: SimplicialComplex) -> FamilyDescriptor:
    """Classify a flag homology sphere into one of the extremal families.

    The witness records the vertex partition (or contraction data for
    ``Upsilon2``) so the claim can be rechecked by reconstruction.
    """
    factors = join_factorization(c)
    w = _oct_c5_witness(c, factors)
    if w is not None:
        return FamilyDescriptor(FamilyKind.OCT_C5, len(w["suspension_pairs"]), len(w["c5_blocks"]), w)
    c6 = [f for f in factors if _is_cycle_of(f, 6)]
    if len(c6) == 1:
        rest = [f for f in factors if f is not c6[0]]
        w = _oct_c5_witness(c, rest)
        if w is not None:
            w["c6_block"] = [c6[0].labels[i] for i in _cycle_order(c6[0])]
            return FamilyDescriptor(FamilyKind.UPSILON1, len(w["suspension_pairs"]), len(w["c5_blocks"]) + 2, w)
    up2 = _recognize_upsilon2(c)
    if up2 is not None:
        return up2
    return FamilyDescriptor(FamilyKind.OTHER)


def _recognize_upsilon2(c: SimplicialComplex) -> FamilyDescriptor | None:
    ell = excess(c)
    rest = c.n - 5 * (ell - 1) - 1
    if ell < 2 or c.dim < 2 or rest < 2 or rest % 2:
        return None
    m = rest // 2
    target = None
    for a, b in c.graph.edges():
        if edge_in_induced_4cycle(c, (a, b)):
            continue
        base = contract_edge(c, (a, b))
        w = _oct_c5_witness(base, join_factorization(base))
        if w is None or len(w["suspension_pairs"]) != m or len(w["c5_blocks"]) != ell - 1:
            continue
        if target is None:
            target = construct_family(FamilyKind.UPSILON2, m, ell)
        if is_isomorphic(c, target):
            base_desc = FamilyDescriptor(FamilyKind.OCT_C5, m, ell - 1, w)
            return FamilyDescriptor(
                FamilyKind.UPSILON2,
                m,
                ell,
                {"contracted_edge": [a, b], "base": base_desc.to_json()},
            )
    return None


def extract_join_cycle(c: SimplicialComplex) -> tuple[SimplicialComplex, int] | None:
    """Find ``Gamma`` with ``c == Gamma * C_{pi+3}`` from a minimal-antipode vertex.

    Tries minimal-antipode vertices in index order and returns the first
    whose link is a suspension and whose join decomposition is confirmed by
    an isomorphism check; ``None`` when ``pi <= 1`` or nothing verifies.
    """
    prof = antipode_profile(c)
    pi = prof.polar_size
    if pi <= 1:
        return None
    for v0 in range(c.n):
        if prof.iota[v0] != pi:
            continue
        lk = link(c, (v0,))
        pairs = suspension_pairs(lk)
        if not pairs:
            continue
        gamma_cx = delete_subcomplex(lk, pairs[0])
        if is_isomorphic(c, join(gamma_cx, cycle(pi + 3))):
            labels = [lk.labels[i] for i in gamma_cx.labels]
            return SimplicialComplex._make(gamma_cx.n, gamma_cx.facet_masks, labels), pi + 3
    return None


def disjoint_facets(c: SimplicialComplex, avoid: int | None = None) -> tuple[tuple[int, ...], tuple[int, ...]] | None:
    """First pair (lexicographic) of disjoint facets, both missing ``avoid`` if given."""
    if avoid is not None and is_suspension(c):
        raise HypothesisViolated("avoiding a vertex requires a non-suspension")
    facets = c.facet_masks
    if avoid is not None:
        facets = tuple(F for F in facets if not F >> avoid & 1)
    for F, G in itertools.combinations(facets, 2):
        if not F & G:
            return mask_face(F), mask_face(G)
    return None


def gamma_of(c: SimplicialComplex):
    return complex_gamma(c)
