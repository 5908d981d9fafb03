"""Reduced simplicial homology over GF(2) or Q and sphere/ball certification.

Ranks come from boundary matrices of the augmented chain complex (the empty
face sits in degree -1). GF(2) rows are packed into Python integers and
reduced by XOR; the rational path uses integer elimination with gcd
normalisation so every step stays exact.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from math import gcd

from .complex import SimplicialComplex, iter_bits, link, mask_face


class Field(str, enum.Enum):
    GF2 = "gf2"
    Q = "q"

    @classmethod
    def parse(cls, value: "Field | str") -> "Field":
        if isinstance(value, Field):
            return value
        value = value.lower()
        if value in ("q", "rational", "qq"):
            return cls.Q
        if value in ("gf2", "z2", "f2"):
            return cls.GF2
        raise ValueError(f"unknown field {value!r}")


@dataclass(frozen=True)
class HomologyProfile:
    """Reduced Betti numbers; ``reduced_betti[i]`` belongs to dimension ``i - 1``."""

    field: Field
    reduced_betti: tuple[int, ...]

    def betti(self, dim: int) -> int:
        i = dim + 1
        return self.reduced_betti[i] if 0 <= i < len(self.reduced_betti) else 0

    def is_sphere_of_dim(self, dim: int) -> bool:
        return all(b == (1 if i - 1 == dim else 0) for i, b in enumerate(self.reduced_betti)) and (
            -1 <= dim < len(self.reduced_betti) - 1
        )

    @property
    def acyclic(self) -> bool:
        return not any(self.reduced_betti)

    def to_json(self) -> dict:
        return {"field": self.field.value, "reduced_betti": list(self.reduced_betti)}


def gf2_rank(rows) -> int:
    pivots: dict[int, int] = {}
    for r in rows:
        while r:
            top = r.bit_length() - 1
            p = pivots.get(top)
            if p is None:
                pivots[top] = r
                break
            r ^= p
    return len(pivots)


def rational_rank(rows: list[dict[int, int]]) -> int:
    """Rank over Q of a sparse integer matrix (rows as ``{column: value}``)."""
    pivots: dict[int, dict[int, int]] = {}
    rank = 0
    for row in rows:
        r = {k: v for k, v in row.items() if v}
        while r:
            col = max(r)
            p = pivots.get(col)
            if p is None:
                pivots[col] = r
                rank += 1
                break
            a, b = r[col], p[col]
            new = {k: v * b for k, v in r.items()}
            for k, v in p.items():
                new[k] = new.get(k, 0) - v * a
            r = {k: v for k, v in new.items() if v}
            if r:
                g = 0
                for v in r.values():
                    g = gcd(g, v)
                if g > 1:
                    r = {k: v // g for k, v in r.items()}
    return rank


def boundary_rank(c: SimplicialComplex, size: int, field: Field = Field.GF2) -> int:
    """Rank of the boundary map from faces of cardinality ``size`` to ``size - 1``."""
    if size < 1:
        return 0
    upper = c.faces(size)
    lower = c.faces(size - 1)
    if not upper or not lower:
        return 0
    index = {m: i for i, m in enumerate(lower)}
    if field is Field.GF2:
        rows = []
        for f in upper:
            r = 0
            for v in iter_bits(f):
                r |= 1 << index[f & ~(1 << v)]
            rows.append(r)
        return gf2_rank(rows)
    qrows = []
    for f in upper:
        qrows.append({index[f & ~(1 << v)]: (-1) ** j for j, v in enumerate(iter_bits(f))})
    return rational_rank(qrows)


def betti_numbers(c: SimplicialComplex, field: Field | str = Field.GF2) -> HomologyProfile:
    field = Field.parse(field)
    top = c.dim + 1
    ranks = [boundary_rank(c, s, field) for s in range(top + 2)]
    betti = []
    for s in range(top + 1):
        betti.append(len(c.faces(s)) - ranks[s] - ranks[s + 1])
    return HomologyProfile(field, tuple(betti))


def is_acyclic(c: SimplicialComplex, field: Field | str = Field.GF2) -> bool:
    return betti_numbers(c, field).acyclic


def is_pseudomanifold(c: SimplicialComplex, closed: bool = False) -> bool:
    """Pure, and every ridge lies in 1 or 2 facets (exactly 2 when ``closed``)."""
    if not c.is_pure or c.dim < 0:
        return False
    counts: dict[int, int] = {}
    for F in c.facet_masks:
        for v in iter_bits(F):
            ridge = F & ~(1 << v)
            counts[ridge] = counts.get(ridge, 0) + 1
    allowed = (2,) if closed else (1, 2)
    return all(k in allowed for k in counts.values())


class SphereCertifier:
    """Memoised homology-sphere test.

    A pure complex of dimension ``k`` is a homology ``k``-sphere iff it has the
    reduced homology of ``S^k`` and every vertex link is a homology
    ``(k-1)``-sphere; links of larger faces are reached as iterated vertex
    links. Results are cached by canonical form, so one instance can be
    reused across many related complexes.
    """

    def __init__(self, field: Field | str = Field.GF2):
        self.field = Field.parse(field)
        self.memo: dict[bytes, bool] = {}

    def __call__(self, c: SimplicialComplex) -> bool:
        if c.n == 0:
            return True
        if not c.is_pure:
            return False
        from .complex import canonical_form

        key = canonical_form(c)
        hit = self.memo.get(key)
        if hit is not None:
            return hit
        ok = self._check(c)
        self.memo[key] = ok
        return ok

    def _check(self, c: SimplicialComplex) -> bool:
        k = c.dim
        if k >= 1 and not is_pseudomanifold(c, closed=True):
            return False
        for v in range(c.n):
            lk = link(c, (v,))
            if lk.dim != k - 1 or not self(lk):
                return False
        return betti_numbers(c, self.field).is_sphere_of_dim(k)


def is_homology_sphere(c: SimplicialComplex, field: Field | str = Field.GF2, certifier: SphereCertifier | None = None) -> bool:
    """The empty complex counts as the (-1)-sphere."""
    certifier = certifier or SphereCertifier(field)
    return certifier(c)


@dataclass(frozen=True)
class BallCertificate:
    is_ball: bool
    boundary: SimplicialComplex | None = None


def homology_ball(c: SimplicialComplex, field: Field | str = Field.GF2, certifier: SphereCertifier | None = None) -> BallCertificate:
    """Check the homology-ball conditions and return the boundary sphere on success.

    Every face link must be a sphere of the complementary dimension or be
    acyclic, and the faces with acyclic links must form a homology sphere of
    one dimension lower. The boundary's ``labels`` index into ``c``.
    """
    field = Field.parse(field)
    certifier = certifier or SphereCertifier(field)
    if c.n == 0 or not c.is_pure:
        return BallCertificate(False)
    d = c.dim + 1
    boundary_faces: list[int] = []
    acyclic_memo: dict[tuple, bool] = {}
    for f in c.faces():
        lk = link(c, f)
        size = f.bit_count()
        if lk.dim == d - 1 - size and certifier(lk):
            continue
        key = (lk.n, lk.facet_masks)
        if key not in acyclic_memo:
            acyclic_memo[key] = lk.n > 0 and is_acyclic(lk, field)
        if not acyclic_memo[key]:
            return BallCertificate(False)
        boundary_faces.append(f)
    bset = set(boundary_faces)
    for f in boundary_faces:
        if any((f & ~(1 << v)) not in bset for v in iter_bits(f)):
            return BallCertificate(False)
    support = 0
    for f in boundary_faces:
        support |= f
    verts = mask_face(support)
    pos = {old: i for i, old in enumerate(verts)}
    gens = [sum(1 << pos[v] for v in iter_bits(f)) for f in boundary_faces]
    boundary = SimplicialComplex._make(len(verts), gens, labels=verts)
    if boundary.dim != d - 2 or not certifier(boundary):
        return BallCertificate(False)
    return BallCertificate(True, boundary)


def is_homology_ball(c: SimplicialComplex, field: Field | str = Field.GF2) -> bool:
    return homology_ball(c, field).is_ball
