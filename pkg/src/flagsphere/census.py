"""Exhaustive generation of flag homology spheres up to isomorphism.

Every flag homology sphere of dimension ``d-1 >= 1`` is rebuilt around a
vertex ``v`` of maximum degree ``D``: the neighbourhood of ``v`` spans its
link, a flag homology ``(d-2)``-sphere on ``D`` vertices taken from the
smaller census, and the remaining ``k = n-1-D`` vertices are attached by
backtracking. Three facts keep the search small:

* each facet of the link lies in exactly one further facet, whose extra
  vertex is a non-neighbour of ``v`` (the link is induced), so link facets
  are distributed over the outer vertices as an exact cover;
* no vertex may exceed degree ``D`` and no clique may exceed size ``d``;
* a finished graph is accepted only when every vertex link is itself a
  census sphere and the clique complex has the homology of a sphere.

Isomorphic copies produced from different choices are merged by canonical
form. For ``n <= 7`` an independent brute-force sweep over all labelled
graphs provides an oracle.
"""

from __future__ import annotations

import itertools
import json
import os
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Iterator

from .canon import complex_canonical_form, from_canonical_form, graph_canonical_labeling
from .complex import Graph, SimplicialComplex, clique_complex, empty_complex, iter_bits, sphere0
from .errors import CapExceeded, InvalidParameter
from .homology import Field, betti_numbers
from .structure import FamilyDescriptor, antipode_profile, recognize_family
from .vectors import IntPoly, complex_gamma

DEFAULT_MAX_N = 12
NAIVE_MAX_N = 7


@dataclass(frozen=True)
class EnumerationTask:
    n: int
    dim: int | None = None
    field: Field = Field.GF2
    shard: tuple[int, int] = (0, 1)

    def __post_init__(self):
        i, k = self.shard
        if k < 1 or not 0 <= i < k:
            raise InvalidParameter(f"bad shard {i}/{k}")
        if self.n < 0:
            raise InvalidParameter("n must be non-negative")
        object.__setattr__(self, "field", Field.parse(self.field))


@dataclass(frozen=True)
class CensusEntry:
    canonical_form: bytes
    n: int
    d: int
    gamma: IntPoly
    polar_size: int
    family: FamilyDescriptor

    @property
    def key(self) -> str:
        return self.canonical_form.hex()

    def complex(self) -> SimplicialComplex:
        return from_canonical_form(self.canonical_form)

    def to_json(self) -> dict:
        return {
            "canonical_form": self.key,
            "n": self.n,
            "d": self.d,
            "gamma": self.gamma.to_list(),
            "polar_size": self.polar_size,
            "family": self.family.to_json(),
            "facets": [list(f) for f in self.complex().facets],
        }

    @classmethod
    def from_json(cls, obj: dict) -> CensusEntry:
        fam = obj["family"]
        from .structure import FamilyKind

        return cls(
            canonical_form=bytes.fromhex(obj["canonical_form"]),
            n=obj["n"],
            d=obj["d"],
            gamma=IntPoly(obj["gamma"]),
            polar_size=obj["polar_size"],
            family=FamilyDescriptor(FamilyKind(fam["kind"]), fam["m"], fam["ell"], fam["witness"]),
        )


def make_entry(form: bytes) -> CensusEntry:
    c = from_canonical_form(form)
    return CensusEntry(
        canonical_form=form,
        n=c.n,
        d=c.dim + 1,
        gamma=complex_gamma(c),
        polar_size=antipode_profile(c).polar_size,
        family=recognize_family(c),
    )


# --- cone-over-link generator -----------------------------------------------------


def _has_clique(adj: list[int], cand: int, size: int) -> bool:
    if size <= 0:
        return True
    if cand.bit_count() < size:
        return False
    while cand:
        low = cand & -cand
        v = low.bit_length() - 1
        cand ^= low
        if _has_clique(adj, cand & adj[v], size - 1):
            return True
        if cand.bit_count() < size:
            return False
    return False


def _graph_form(n: int, rows) -> bytes:
    return b"F" + bytes([n]) + b"".join(r.to_bytes(8, "little") for r in rows)


class _Generator:
    """All flag homology spheres with ``n`` vertices and facets of size ``d``."""

    def __init__(self, n: int, d: int, census: "Census"):
        self.n, self.d, self.census = n, d, census
        self.link_forms: dict[int, set[bytes]] = {}
        self.link_memo: dict[tuple[int, ...], bool] = {}

    def branches(self) -> list[tuple[int, SimplicialComplex]]:
        n, d = self.n, self.d
        out = []
        for D in range(2 * (d - 1), n - 1):
            for L in self.census.spheres(D, d - 1):
                out.append((D, L))
        return out

    def run_branch(self, D: int, L: SimplicialComplex) -> set[bytes]:
        n, d = self.n, self.d
        k = n - 1 - D
        adj = [0] * n
        adj[0] = ((1 << (D + 1)) - 1) & ~1
        for a, b in L.graph.edges():
            adj[a + 1] |= 1 << (b + 1)
            adj[b + 1] |= 1 << (a + 1)
        for x in range(1, D + 1):
            adj[x] |= 1
        facets = [F << 1 for F in L.facet_masks]
        found: set[bytes] = set()
        self._extend(adj, D, k, 0, facets, 0, found)
        return found

    def _extend(self, adj, D, k, i, facets, covered, found) -> None:
        n, d = self.n, self.d
        if i == k:
            if covered == (1 << len(facets)) - 1:
                form = self._accept(adj)
                if form is not None:
                    found.add(form)
            return
        r = D + 1 + i
        left_after = k - 1 - i
        nv = ((1 << (D + 1)) - 1) & ~1
        open_ = [x for x in range(1, D + 1) if adj[x].bit_count() < D]
        uncovered = [j for j in range(len(facets)) if not covered >> j & 1]
        if uncovered:
            first = facets[uncovered[0]]
            if any(adj[x].bit_count() >= D for x in iter_bits(first)):
                return
            pool = [x for x in open_ if not first >> x & 1]
            base = first
        else:
            pool = open_
            base = 0
        earlier = [D + 1 + j for j in range(i) if adj[D + 1 + j].bit_count() < D]
        # Vertices that can never reach the minimum degree are pruned at the leaf;
        # here a cheap bound on this vertex keeps the branching in check.
        min_deg = 2 * (d - 1)
        for extra in _subsets(pool):
            A = base | extra
            newly = 0
            bad = False
            for j, F in enumerate(facets):
                if F & ~A == 0:
                    if covered >> j & 1:
                        bad = True
                        break
                    newly |= 1 << j
            if bad or (uncovered and not newly >> uncovered[0] & 1):
                continue
            if not uncovered and newly:
                continue
            a_size = A.bit_count()
            if a_size > D:
                continue
            for S in _subsets(earlier):
                nb = A | S
                deg = nb.bit_count()
                if deg > D or deg + left_after < min_deg:
                    continue
                if _has_clique(adj, nb, d):
                    continue
                for x in iter_bits(nb):
                    adj[x] |= 1 << r
                adj[r] = nb
                self._extend(adj, D, k, i + 1, facets, covered | newly, found)
                for x in iter_bits(nb):
                    adj[x] &= ~(1 << r)
                adj[r] = 0

    def _accept(self, adj: list[int]) -> bytes | None:
        n, d = self.n, self.d
        lo = 2 * (d - 1)
        if any(row.bit_count() < lo for row in adj):
            return None
        for u in range(n):
            nb = adj[u]
            verts = list(iter_bits(nb))
            pos = {x: j for j, x in enumerate(verts)}
            rows = tuple(sum(1 << pos[y] for y in iter_bits(adj[x] & nb)) for x in verts)
            hit = self.link_memo.get(rows)
            if hit is None:
                g = Graph(len(verts), list(rows))
                cert, _ = graph_canonical_labeling(g)
                hit = _graph_form(len(verts), cert) in self.census.forms(len(verts), d - 1)
                self.link_memo[rows] = hit
            if not hit:
                return None
        c = clique_complex(Graph(n, list(adj)))
        if c.dim != d - 1 or not betti_numbers(c, self.census.field).is_sphere_of_dim(d - 1):
            return None
        return complex_canonical_form(c)


def _subsets(items: list[int]) -> Iterator[int]:
    for size in range(len(items) + 1):
        for combo in itertools.combinations(items, size):
            m = 0
            for x in combo:
                m |= 1 << x
            yield m


# --- census container -------------------------------------------------------------


class Census:
    """Memoised census of flag homology spheres by ``(n, d)`` over one field."""

    def __init__(self, field: Field | str = Field.GF2, max_n: int = DEFAULT_MAX_N):
        self.field = Field.parse(field)
        self.max_n = max_n
        self._forms: dict[tuple[int, int], set[bytes]] = {}
        self._spheres: dict[tuple[int, int], list[SimplicialComplex]] = {}

    def _check(self, n: int) -> None:
        if n > self.max_n:
            raise CapExceeded(f"n = {n} exceeds the enumeration cap {self.max_n}")

    def forms(self, n: int, d: int, shard: tuple[int, int] = (0, 1)) -> set[bytes]:
        """Canonical forms of all flag homology ``(d-1)``-spheres on ``n`` vertices."""
        self._check(n)
        if shard != (0, 1):
            return self._generate(n, d, shard)
        key = (n, d)
        if key not in self._forms:
            self._forms[key] = self._generate(n, d, (0, 1))
        return self._forms[key]

    def spheres(self, n: int, d: int) -> list[SimplicialComplex]:
        key = (n, d)
        if key not in self._spheres:
            self._spheres[key] = [from_canonical_form(f) for f in sorted(self.forms(n, d))]
        return self._spheres[key]

    def _generate(self, n: int, d: int, shard: tuple[int, int]) -> set[bytes]:
        if d <= 1 or n < 2 * d:
            base = {(0, 0): empty_complex(), (2, 1): sphere0()}.get((n, d))
            if base is None or shard[0] != 0:
                return set()
            return {complex_canonical_form(base)}
        gen = _Generator(n, d, self)
        out: set[bytes] = set()
        i, k = shard
        for idx, (D, L) in enumerate(gen.branches()):
            if idx % k == i:
                out |= gen.run_branch(D, L)
        return out

    def dims_for(self, n: int) -> list[int]:
        """Possible ``d`` values for a flag sphere on ``n`` vertices."""
        if n == 0:
            return [0]
        if n == 2:
            return [1]
        return list(range(2, n // 2 + 1))


def enumerate_flag_spheres(
    task: EnumerationTask,
    census: Census | None = None,
    max_n: int = DEFAULT_MAX_N,
) -> list[CensusEntry]:
    """Census entries for ``task``, sorted by canonical form.

    ``task.dim`` is the geometric dimension ``d - 1`` (``None`` means all).
    """
    if task.n > max_n:
        raise CapExceeded(f"n = {task.n} exceeds the enumeration cap {max_n}")
    census = census or Census(task.field, max_n)
    dims = census.dims_for(task.n)
    if task.dim is not None:
        dims = [d for d in dims if d == task.dim + 1]
    forms: set[bytes] = set()
    for d in dims:
        forms |= census.forms(task.n, d, task.shard)
    return [make_entry(f) for f in sorted(forms)]


def merge_shards(parts: Iterable[Iterable[CensusEntry]]) -> list[CensusEntry]:
    seen: dict[bytes, CensusEntry] = {}
    for part in parts:
        for e in part:
            seen.setdefault(e.canonical_form, e)
    return [seen[k] for k in sorted(seen)]


def full_census(max_n: int, field: Field | str = Field.GF2, census: Census | None = None) -> list[CensusEntry]:
    """Every flag homology sphere with at most ``max_n`` vertices."""
    census = census or Census(field, max(max_n, DEFAULT_MAX_N))
    out: list[CensusEntry] = []
    for n in range(max_n + 1):
        out.extend(enumerate_flag_spheres(EnumerationTask(n, None, census.field), census, census.max_n))
    return out


# --- brute-force oracle -----------------------------------------------------------


def naive_flag_sphere_forms(n: int, field: Field | str = Field.GF2) -> set[bytes]:
    """Sweep all ``2**C(n,2)`` labelled graphs, one representative per orbit.

    Orbits under vertex permutations are marked in a boolean table, so each
    isomorphism class is certified once. Only meant for ``n <= 7``.
    """
    import numpy as np

    if n > NAIVE_MAX_N:
        raise CapExceeded(f"the brute-force sweep is limited to n <= {NAIVE_MAX_N}")
    field = Field.parse(field)
    pairs = list(itertools.combinations(range(n), 2))
    m = len(pairs)
    index = {p: i for i, p in enumerate(pairs)}
    perms = list(itertools.permutations(range(n)))
    table = np.array(
        [[index[tuple(sorted((p[a], p[b])))] for a, b in pairs] for p in perms], dtype=np.int64
    ).reshape(len(perms), m)
    weights = np.left_shift(np.int64(1), table) if m else np.zeros((len(perms), 0), dtype=np.int64)
    seen = np.zeros(1 << m, dtype=bool)
    out: set[bytes] = set()
    ptr = 0
    total = 1 << m
    while ptr < total:
        mask = ptr
        bits = [i for i in range(m) if mask >> i & 1]
        images = weights[:, bits].sum(axis=1) if bits else np.zeros(len(perms), dtype=np.int64)
        seen[images] = True
        adj = [0] * n
        for i in bits:
            a, b = pairs[i]
            adj[a] |= 1 << b
            adj[b] |= 1 << a
        form = _naive_check(n, adj, field)
        if form is not None:
            out.add(form)
        rest = seen[ptr:]
        nxt = int(rest.argmin())
        if rest[nxt]:
            break
        ptr += nxt
    return out


def _naive_check(n: int, adj: list[int], field: Field) -> bytes | None:
    from .homology import SphereCertifier

    c = clique_complex(Graph(n, adj))
    d = c.dim + 1
    if n and min(row.bit_count() for row in adj) < d - 1:
        return None
    if SphereCertifier(field)(c):
        return complex_canonical_form(c)
    return None


# --- persistence ------------------------------------------------------------------


def cache_dir() -> Path | None:
    root = os.environ.get("FLAGSPHERE_CACHE")
    return Path(root) if root else None


def write_ndjson(entries: Iterable[CensusEntry], path: Path) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_suffix(path.suffix + ".tmp")
    with open(tmp, "w") as fh:
        for e in entries:
            fh.write(json.dumps(e.to_json(), separators=(",", ":")) + "\n")
    tmp.replace(path)


def read_ndjson(path: Path) -> list[CensusEntry]:
    with open(path) as fh:
        return [CensusEntry.from_json(json.loads(line)) for line in fh if line.strip()]


def shard_path(root: Path, task: EnumerationTask) -> Path:
    dim = "all" if task.dim is None else str(task.dim)
    i, k = task.shard
    return root / f"census-n{task.n}-dim{dim}-{task.field.value}-shard{i}of{k}.ndjson"


def run_task_cached(task: EnumerationTask, root: Path | None = None, census: Census | None = None,
                    max_n: int = DEFAULT_MAX_N) -> list[CensusEntry]:
    """Run a task, reusing a completed shard file when its marker exists."""
    root = root or cache_dir()
    if root is None:
        return enumerate_flag_spheres(task, census, max_n)
    path = shard_path(root, task)
    marker = path.with_suffix(".done")
    if marker.exists() and path.exists():
        return read_ndjson(path)
    entries = enumerate_flag_spheres(task, census, max_n)
    write_ndjson(entries, path)
    marker.write_text("ok\n")
    return entries
