"""Verification suites: named predicates run over a corpus of flag homology spheres.

Each predicate inspects one certified flag sphere and returns ``True``,
``False`` or ``None`` (hypotheses not met, so the case is skipped), plus a
detail dict that ends up in counterexample dumps. Report-only predicates
record observations without ever failing.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import cached_property
from math import comb
from typing import Callable, Iterable

from .complex import (
    SimplicialComplex,
    canonical_form,
    contract_edge,
    cycle,
    edge_in_induced_4cycle,
    edge_subdivision,
    induced_subcomplex,
    is_isomorphic,
    join,
    join_all,
    link,
    octahedral,
    suspend_k,
    suspension,
)
from .homology import Field, SphereCertifier
from .structure import (
    AntipodeProfile,
    FamilyDescriptor,
    FamilyKind,
    antipode_profile,
    antipodes,
    construct_family,
    desuspend_core,
    disjoint_facets,
    find_equators,
    is_suspension,
    polar_size_bounds_check,
    recognize_family,
)
from .vectors import (
    IntPoly,
    Verdict,
    complex_gamma,
    f_vector,
    forbidden_gamma_check,
    gamma_closed_forms,
    h_from_gamma,
    h_polynomial,
    is_dehn_sommerville,
    missing_edge_count,
    missing_edge_identity,
)


class Subject:
    """A flag homology sphere with lazily computed invariants."""

    def __init__(self, c: SimplicialComplex, name: str = "", field: Field | str = Field.GF2,
                 certifier: SphereCertifier | None = None):
        self.c = c
        self.name = name
        self.field = Field.parse(field)
        self.certifier = certifier or SphereCertifier(self.field)

    @cached_property
    def d(self) -> int:
        return self.c.dim + 1

    @cached_property
    def ell(self) -> int:
        return self.c.n - 2 * self.d

    @cached_property
    def h(self) -> IntPoly:
        return h_polynomial(f_vector(self.c), self.d)

    @cached_property
    def gamma(self) -> IntPoly:
        return complex_gamma(self.c)

    @cached_property
    def profile(self) -> AntipodeProfile:
        return antipode_profile(self.c)

    @cached_property
    def family(self) -> FamilyDescriptor:
        return recognize_family(self.c)

    @cached_property
    def key(self) -> str:
        return canonical_form(self.c).hex()

    def dump(self) -> dict:
        return {
            "name": self.name,
            "canonical_form": self.key,
            "n": self.c.n,
            "facets": [list(f) for f in self.c.facets],
        }


Outcome = tuple[bool | None, dict]
Predicate = Callable[[Subject], Outcome]


@dataclass(frozen=True)
class Suite:
    id: str
    description: str
    check: Predicate
    report_only: bool = False


SUITES: dict[str, Suite] = {}


def _suite(id: str, description: str, report_only: bool = False):
    def deco(fn: Predicate) -> Predicate:
        SUITES[id] = Suite(id, description, fn, report_only)
        return fn

    return deco


@_suite("dehn-sommerville", "h-vector is palindromic")
def _dehn_sommerville(s: Subject) -> Outcome:
    return is_dehn_sommerville(s.h, s.d), {"h": s.h.to_list()}


@_suite("roundtrip", "h rebuilt from gamma equals h from f")
def _roundtrip(s: Subject) -> Outcome:
    rebuilt = h_from_gamma(s.gamma, s.d)
    return rebuilt == s.h, {"h": s.h.to_list(), "rebuilt": rebuilt.to_list()}


@_suite("closed-forms", "gamma_1, gamma_2 closed forms and the missing-edge identity")
def _closed_forms(s: Subject) -> Outcome:
    g0, g1, g2 = gamma_closed_forms(s.c)
    ok = (g0, g1, g2) == (s.gamma[0], s.gamma[1], s.gamma[2]) and missing_edge_identity(s.c)
    return ok, {"closed": [g0, g1, g2], "gamma": s.gamma.to_list(), "alpha": missing_edge_count(s.c)}


@_suite("gamma-nonneg", "0 <= gamma_i <= C(gamma_1, i) (observational)", report_only=True)
def _gamma_nonneg(s: Subject) -> Outcome:
    g1 = s.gamma[1]
    bad = [i for i, g in enumerate(s.gamma) if not 0 <= g <= comb(max(g1, 0), i)]
    return not bad, {"gamma": s.gamma.to_list(), "outside_window": bad}


@_suite("thm3.8", "gamma_2 <= C(ell, 2), with equality exactly on suspended pentagon joins")
def _gamma2_bound(s: Subject) -> Outcome:
    bound = comb(s.ell, 2)
    g2 = s.gamma[2]
    is_oct = s.family.kind is FamilyKind.OCT_C5
    ok = g2 <= bound and (g2 == bound) == is_oct
    return ok, {"gamma2": g2, "bound": bound, "family": s.family.kind.value}


@_suite("thm4.2", "gamma_j = 0 for j > ell, gamma_ell in {0, 1}, gamma_ell = 1 iff suspended pentagon join")
def _gamma_ell(s: Subject) -> Outcome:
    if s.d < 2:
        return None, {"reason": "d < 2"}
    ell = s.ell
    tail_zero = all(s.gamma[j] == 0 for j in range(ell + 1, len(s.gamma)))
    top = s.gamma[ell]
    is_oct = s.family.kind is FamilyKind.OCT_C5
    ok = tail_zero and top in (0, 1) and (top == 1) == is_oct
    return ok, {"gamma": s.gamma.to_list(), "ell": ell, "family": s.family.kind.value}


@_suite("cor4.3", "polar size >= 3 and d >= 3 kills gamma_j for j >= ell - pi + 2")
def _polar_degree(s: Subject) -> Outcome:
    pi = s.profile.polar_size
    if pi < 3 or s.d < 3:
        return None, {"reason": "pi < 3 or d < 3"}
    cut = s.ell - pi + 2
    ok = all(s.gamma[j] == 0 for j in range(max(cut, 0), len(s.gamma)))
    if s.d >= 2 * cut:
        ok = ok and s.gamma[s.gamma.degree] % (pi - 1) == 0
    return ok, {"gamma": s.gamma.to_list(), "pi": pi, "ell": s.ell}


@_suite("thm5.2", "gamma_{ell-1} in {0,1,2,ell}; value 2 with gamma_ell = 0 exactly on Upsilon families")
def _gamma_ell_minus_one(s: Subject) -> Outcome:
    ell = s.ell
    if ell < 2:
        return None, {"reason": "ell < 2"}
    g = s.gamma[ell - 1]
    top = s.gamma[ell]
    ok = g in (0, 1, 2, ell)
    upsilon = s.family.kind in (FamilyKind.UPSILON1, FamilyKind.UPSILON2)
    if top == 0:
        ok = ok and 0 <= g <= 2 and (g == 2) == upsilon
    elif upsilon:
        ok = False
    return ok, {"gamma": s.gamma.to_list(), "ell": ell, "family": s.family.kind.value}


@_suite("lem5.1", "every equator of a suspended pentagon join is a vertex link of the two predicted types")
def _equator_types(s: Subject) -> Outcome:
    fam = s.family
    if fam.kind is not FamilyKind.OCT_C5 or fam.m + fam.ell < 1:
        return None, {"reason": "not a suspended pentagon join"}
    return equator_classification(s.c, fam.m, fam.ell, s.field)


def equator_classification(c: SimplicialComplex, m: int, k: int, field: Field | str = Field.GF2) -> Outcome:
    shapes = []
    if m >= 1:
        shapes.append(construct_family(FamilyKind.OCT_C5, m - 1, k))
    if k >= 1:
        shapes.append(construct_family(FamilyKind.OCT_C5, m + 1, k - 1))
    link_sets = {tuple(link(c, (v,)).labels) for v in range(c.n)}
    eqs = find_equators(c, field)
    bad = []
    for eq in eqs:
        sub = induced_subcomplex(c, eq)
        if eq not in link_sets or not any(is_isomorphic(sub, t) for t in shapes):
            bad.append(list(eq))
    return not bad and bool(eqs), {"equators": len(eqs), "bad": bad}


@_suite("thm5.3", "no gamma-polynomial lies in the forbidden (1+t)^k + t r(t) family")
def _forbidden(s: Subject) -> Outcome:
    verdict = forbidden_gamma_check(s.gamma)
    return verdict is not Verdict.FORBIDDEN, {"gamma": s.gamma.to_list(), "verdict": verdict.value}


@_suite("lem2.4", "suspension keeps gamma; contraction recursion on edges outside induced 4-cycles")
def _recursions(s: Subject) -> Outcome:
    c = s.c
    if complex_gamma(suspension(c)) != s.gamma:
        return False, {"reason": "suspension changed gamma"}
    bad = []
    for a, b in c.graph.edges():
        if edge_in_induced_4cycle(c, (a, b)):
            continue
        low = contract_edge(c, (a, b))
        if not (low.is_flag and s.certifier(low)):
            bad.append({"edge": [a, b], "reason": "contraction is not a flag sphere"})
            continue
        rhs = complex_gamma(low) + complex_gamma(link(c, (a, b))).shift(1)
        if rhs != s.gamma:
            bad.append({"edge": [a, b], "rhs": rhs.to_list()})
    return not bad, {"gamma": s.gamma.to_list(), "bad_edges": bad}


@_suite("lem3.2", "antipode counts: link gamma_1, polar size range, suspension and octahedral cases")
def _polar_values(s: Subject) -> Outcome:
    c, prof = s.c, s.profile
    detail = {"iota": list(prof.iota), "pi": prof.polar_size, "ell": s.ell}
    if c.n == 0:
        return None, {"reason": "no vertices"}
    ok = sum(prof.iota) == 2 * missing_edge_count(c)
    ok = ok and polar_size_bounds_check(c)
    ok = ok and (prof.polar_size == 1) == is_suspension(c)
    if s.d >= 3:
        octa = s.family.kind is FamilyKind.OCT_C5 and s.family.ell == 0 and s.family.m == s.d
        ok = ok and (prof.polar_size == s.ell + 1) == octa
    return ok, detail


@_suite("lem3.5", "a vertex with two antipodes: they span an edge outside induced 4-cycles, and gamma splits")
def _iota_two(s: Subject) -> Outcome:
    c = s.c
    hits = [v for v in range(c.n) if s.profile.iota[v] == 2]
    if not hits:
        return None, {"reason": "no vertex with two antipodes"}
    bad = []
    for v in hits:
        x, y = antipodes(c, v)
        if not c.graph.has_edge(x, y) or edge_in_induced_4cycle(c, (x, y)):
            bad.append({"vertex": v, "reason": "antipodes do not span a good edge"})
            continue
        rhs = complex_gamma(link(c, (v,))) + complex_gamma(link(c, (x, y))).shift(1)
        if rhs != s.gamma:
            bad.append({"vertex": v, "rhs": rhs.to_list()})
    return not bad, {"bad": bad}


@_suite("lem3.9", "disjoint facets exist, also avoiding any vertex of a non-suspension")
def _disjoint(s: Subject) -> Outcome:
    c = s.c
    if c.dim < 0:
        return None, {"reason": "empty complex"}
    for T in c.facet_masks:
        if not any(not T & U for U in c.facet_masks):
            return False, {"facet_without_partner": T}
    if not is_suspension(c):
        for v in range(c.n):
            if disjoint_facets(c, avoid=v) is None:
                return False, {"avoid": v}
    return True, {}


@_suite("lem4.1", "d >= 2 ell + 1 forces a suspension")
def _bound_dim(s: Subject) -> Outcome:
    if s.d < 2 * s.ell + 1 or s.c.n == 0:
        return None, {"reason": "d < 2 ell + 1"}
    return is_suspension(s.c), {"d": s.d, "ell": s.ell}


@_suite("desuspension", "stripping suspension pairs in random orders gives one core with the same gamma")
def _desuspension(s: Subject, orders: int = 100, seed: int = 0) -> Outcome:
    core, m = desuspend_core(s.c)
    if complex_gamma(core) != s.gamma:
        return False, {"reason": "core gamma differs"}
    if m == 0:
        return True, {"m": 0}
    rng = random.Random(seed)
    key = canonical_form(core)
    for _ in range(orders):
        other, m2 = desuspend_core(s.c, rng)
        if m2 != m or canonical_form(other) != key:
            return False, {"reason": "order dependent", "m": m, "m_other": m2}
    return True, {"m": m}


SUITE_IDS = tuple(SUITES)


# --- running ----------------------------------------------------------------------


@dataclass
class SuiteReport:
    suite: str
    report_only: bool
    total: int = 0
    passed: int = 0
    failed: int = 0
    skipped: int = 0
    counterexamples: list[dict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.report_only or self.failed == 0

    def to_json(self) -> dict:
        return {
            "suite": self.suite,
            "report_only": self.report_only,
            "total": self.total,
            "passed": self.passed,
            "failed": self.failed,
            "skipped": self.skipped,
            "ok": self.ok,
            "counterexamples": self.counterexamples,
        }


def verify_on_census(subjects: Iterable[Subject | SimplicialComplex], suite_id: str) -> SuiteReport:
    """Run one suite over every subject; failing cases are kept with their data."""
    try:
        suite = SUITES[suite_id]
    except KeyError:
        raise KeyError(f"unknown suite {suite_id!r}; known: {', '.join(SUITE_IDS)}") from None
    report = SuiteReport(suite_id, suite.report_only)
    for s in subjects:
        if not isinstance(s, Subject):
            s = Subject(s)
        report.total += 1
        ok, detail = suite.check(s)
        if ok is None:
            report.skipped += 1
        elif ok:
            report.passed += 1
        else:
            report.failed += 1
            report.counterexamples.append({**s.dump(), "detail": detail})
    return report


# --- constructed corpus -----------------------------------------------------------


def constructed_corpus(max_n: int = 14) -> list[tuple[str, SimplicialComplex]]:
    """Named flag spheres from joins, suspensions and the extremal families, deduplicated."""
    items: list[tuple[str, SimplicialComplex]] = []
    for k in range(4, max_n + 1):
        items.append((f"C{k}", cycle(k)))
    for d in range(1, max_n // 2 + 1):
        items.append((f"oct{d}", octahedral(d)))
    for kind in FamilyKind:
        if kind is FamilyKind.OTHER:
            continue
        for m in range(0, max_n // 2 + 1):
            for ell in range(0, max_n // 5 + 2):
                try:
                    c = construct_family(kind, m, ell)
                except Exception:
                    continue
                if c.n <= max_n:
                    items.append((f"{kind.value}({m},{ell})", c))
    for a in range(4, max_n):
        for b in range(a, max_n + 1 - a):
            base = join(cycle(a), cycle(b))
            for m in range(0, (max_n - a - b) // 2 + 1):
                items.append((f"susp^{m}(C{a}*C{b})", suspend_k(base, m)))
    for a in range(4, max_n - 1):
        for m in range(1, (max_n - a) // 2 + 1):
            items.append((f"susp^{m}(C{a})", suspend_k(cycle(a), m)))
    for a, b, c_ in ((4, 4, 4), (4, 4, 5), (4, 5, 5)):
        if a + b + c_ <= max_n:
            items.append((f"C{a}*C{b}*C{c_}", join_all([cycle(a), cycle(b), cycle(c_)])))
    # edge subdivisions of small joins give non-join, non-suspension spheres
    for name, base in (("C5*C5", join(cycle(5), cycle(5))), ("C5*C6", join(cycle(5), cycle(6)))):
        for e in ((0, 1), (0, 5)):
            s = edge_subdivision(base, e)
            if s.n <= max_n:
                items.append((f"subdivide({name},{e[0]},{e[1]})", s))
                s2 = edge_subdivision(s, (1, 2))
                if s2.n <= max_n:
                    items.append((f"subdivide(subdivide({name},{e[0]},{e[1]}),1,2)", s2))
    seen: set[bytes] = set()
    out = []
    for name, c in items:
        key = canonical_form(c)
        if key not in seen:
            seen.add(key)
            out.append((name, c))
    return out
