"""f-, h- and gamma-polynomials with exact integer arithmetic."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from math import comb
from typing import Iterable, Sequence

from .complex import SimplicialComplex, f_vector
from .errors import DimensionMismatch, NotPalindromic


class IntPoly:
    """Integer polynomial; ``coeffs[i]`` is the coefficient of degree ``i``.

    Trailing zeros are trimmed, so the zero polynomial has no coefficients.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        c = [int(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.coeffs: tuple[int, ...] = tuple(c)

    @classmethod
    def binomial_power(cls, k: int, shift: int = 0) -> IntPoly:
        """``t**shift * (1 + t)**k``."""
        return cls([0] * shift + [comb(k, i) for i in range(k + 1)])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __len__(self) -> int:
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, IntPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (list, tuple)):
            return self.coeffs == IntPoly(other).coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __add__(self, other: IntPoly) -> IntPoly:
        other = _poly(other)
        n = max(len(self), len(other))
        return IntPoly(self[i] + other[i] for i in range(n))

    __radd__ = __add__

    def __neg__(self) -> IntPoly:
        return IntPoly(-x for x in self.coeffs)

    def __sub__(self, other: IntPoly) -> IntPoly:
        return self + (-_poly(other))

    def __mul__(self, other: IntPoly | int) -> IntPoly:
        if isinstance(other, int):
            return IntPoly(x * other for x in self.coeffs)
        other = _poly(other)
        if not self or not other:
            return IntPoly()
        out = [0] * (len(self) + len(other) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPoly(out)

    __rmul__ = __mul__

    def shift(self, k: int = 1) -> IntPoly:
        """Multiply by ``t**k``."""
        return IntPoly([0] * k + list(self.coeffs)) if self else IntPoly()

    def __call__(self, x: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def divmod_linear(self, root: int) -> tuple[IntPoly, int]:
        """Synthetic division by ``(t - root)``: returns quotient and remainder."""
        if not self:
            return IntPoly(), 0
        acc = 0
        out = []
        for c in reversed(self.coeffs):
            acc = acc * root + c
            out.append(acc)
        rem = out.pop()
        return IntPoly(reversed(out)), rem

    def to_list(self) -> list[int]:
        return list(self.coeffs)

    def __repr__(self) -> str:
        return f"IntPoly({list(self.coeffs)})"


def _poly(p: IntPoly | Sequence[int]) -> IntPoly:
    return p if isinstance(p, IntPoly) else IntPoly(p)


def h_polynomial(f: IntPoly | Sequence[int], d: int) -> IntPoly:
    """``h_k = sum_i (-1)**(k-i) * C(d-i, d-k) * f_i`` for ``0 <= k <= d``."""
    f = _poly(f)
    if f.degree > d:
        raise DimensionMismatch(f"f has degree {f.degree} > d = {d}")
    return IntPoly(
        sum((-1) ** (k - i) * comb(d - i, d - k) * f[i] for i in range(k + 1))
        for k in range(d + 1)
    )


def is_dehn_sommerville(h: IntPoly | Sequence[int], d: int) -> bool:
    h = _poly(h)
    if h.degree > d:
        return False
    return all(h[k] == h[d - k] for k in range(d + 1))


def gamma_basis(i: int, d: int) -> IntPoly:
    """``z**i * (1 + z)**(d - 2i)``."""
    return IntPoly.binomial_power(d - 2 * i, shift=i)


def gamma_vector(h: IntPoly | Sequence[int], d: int) -> IntPoly:
    """Coordinates of a palindromic ``h`` in the basis ``z**i (1+z)**(d-2i)``.

    The basis is triangular, so each coordinate is read off the lowest
    surviving coefficient and the corresponding basis element subtracted.
    """
    h = _poly(h)
    if not is_dehn_sommerville(h, d):
        raise NotPalindromic(f"h = {list(h)} is not palindromic for d = {d}")
    rest = h
    gamma = []
    for i in range(d // 2 + 1):
        g = rest[i]
        gamma.append(g)
        if g:
            rest = rest - gamma_basis(i, d) * g
    if rest:
        raise NotPalindromic(f"residual {list(rest)} after elimination")
    return IntPoly(gamma)


def h_from_gamma(gamma: IntPoly | Sequence[int], d: int) -> IntPoly:
    out = IntPoly()
    for i, g in enumerate(_poly(gamma)):
        out = out + gamma_basis(i, d) * g
    return out


def sphere_d(c: SimplicialComplex) -> int:
    """Number of vertices in a facet, i.e. ``dim + 1``."""
    return c.dim + 1


def f_polynomial(c: SimplicialComplex) -> IntPoly:
    return IntPoly(f_vector(c))


def complex_gamma(c: SimplicialComplex) -> IntPoly:
    d = sphere_d(c)
    return gamma_vector(h_polynomial(f_vector(c), d), d)


def gamma_closed_forms(c: SimplicialComplex) -> tuple[int, int, int]:
    """``(1, f1 - 2d, f2 - (2d-3) f1 + 2d(d-2))`` read off the f-vector."""
    d = sphere_d(c)
    f = f_vector(c)
    f1 = f[1] if len(f) > 1 else 0
    f2 = f[2] if len(f) > 2 else 0
    return 1, f1 - 2 * d, f2 - (2 * d - 3) * f1 + 2 * d * (d - 2)


def missing_edge_count(c: SimplicialComplex) -> int:
    """Number of vertex pairs that are not edges."""
    return c.n * (c.n - 1) // 2 - len(c.graph.edges())


def missing_edge_identity(c: SimplicialComplex) -> bool:
    """Check ``alpha + gamma_2 == gamma_1 (gamma_1 + 5) / 2 + d``."""
    _, g1, g2 = gamma_closed_forms(c)
    alpha = missing_edge_count(c)
    return 2 * (alpha + g2) == g1 * (g1 + 5) + 2 * sphere_d(c)


def gamma_join_product(a: IntPoly | Sequence[int], b: IntPoly | Sequence[int]) -> IntPoly:
    return _poly(a) * _poly(b)


class Verdict(str, enum.Enum):
    FORBIDDEN = "ForbiddenByThm53"
    NOT_APPLICABLE = "NotApplicable"


def forbidden_gamma_check(p: IntPoly | Sequence[int]) -> Verdict:
    """Decide whether ``p = (1+t)**k + t*r(t)`` with ``k >= 3``, ``deg r <= k-2``,
    ``r(0) = 1`` and ``(1+t)`` not dividing ``r``; such ``p`` are never gamma-polynomials
    of flag homology spheres.

    ``k`` is forced to be ``deg p``. Only this family is recognised; anything
    else is reported as not applicable.
    """
    p = _poly(p)
    k = p.degree
    if k < 3 or p[k] != 1:
        return Verdict.NOT_APPLICABLE
    diff = p - IntPoly.binomial_power(k)
    if diff[0] != 0:
        return Verdict.NOT_APPLICABLE
    r = IntPoly(diff.coeffs[1:])
    if r.degree > k - 2 or r[0] != 1:
        return Verdict.NOT_APPLICABLE
    if r(-1) == 0:
        return Verdict.NOT_APPLICABLE
    return Verdict.FORBIDDEN


@dataclass(frozen=True)
class GammaReport:
    d: int
    f: IntPoly
    h: IntPoly
    gamma: IntPoly | None
    palindromic: bool
    alpha: int

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "f": self.f.to_list(),
            "h": self.h.to_list(),
            "gamma": None if self.gamma is None else self.gamma.to_list(),
            "alpha": self.alpha,
            "palindromic": self.palindromic,
        }


def gamma_report(c: SimplicialComplex) -> GammaReport:
    """f, h and (when h is palindromic) gamma of ``c``; never certifies homology."""
    d = sphere_d(c)
    f = f_polynomial(c)
    h = h_polynomial(f, d)
    pal = is_dehn_sommerville(h, d)
    gamma = gamma_vector(h, d) if pal else None
    return GammaReport(d=d, f=f, h=h, gamma=gamma, palindromic=pal, alpha=missing_edge_count(c))
