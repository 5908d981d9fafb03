"""Immutable simplicial complexes on a dense vertex set ``[0, n)``.

Faces are held as integer bitmasks (bit ``i`` set iff vertex ``i`` is in the
face), so subset tests and contraction images are single integer operations.
A complex is stored by its facets only; membership of a face means "subset
of some facet" and the full face lattice is materialised lazily.

Operations that return a complex on a subset of the vertices re-index the
surviving vertices densely, in increasing order, and record the old indices
in :attr:`SimplicialComplex.labels` (``labels[new] == old``).
"""

from __future__ import annotations

import itertools
import re
from functools import cached_property
from pathlib import Path
from typing import Iterable, Iterator, Sequence

from .errors import (
    FacetFileError,
    InvalidParameter,
    InvalidVertex,
    JNotEquator,
    NotAFace,
    NotAnEdge,
)

MAX_VERTICES = 64

Face = tuple[int, ...]


def face_mask(face: Iterable[int]) -> int:
    mask = 0
    for v in face:
        mask |= 1 << v
    return mask


def mask_face(mask: int) -> Face:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return tuple(out)


def iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _check_n(n: int) -> None:
    if n < 0:
        raise InvalidParameter(f"vertex count must be non-negative, got {n}")
    if n > MAX_VERTICES:
        raise InvalidParameter(f"at most {MAX_VERTICES} vertices supported, got {n}")


class Graph:
    """Simple undirected graph on ``[0, n)`` with bitmask adjacency rows."""

    __slots__ = ("n", "adj")

    def __init__(self, n: int, adjacency: Sequence[int]):
        _check_n(n)
        if len(adjacency) != n:
            raise InvalidParameter("adjacency must have one row per vertex")
        full = (1 << n) - 1
        for v, row in enumerate(adjacency):
            if row & ~full:
                raise InvalidVertex(f"row {v} references a vertex >= {n}")
            if row >> v & 1:
                raise InvalidParameter(f"self-loop at vertex {v}")
            for w in iter_bits(row):
                if not adjacency[w] >> v & 1:
                    raise InvalidParameter(f"adjacency not symmetric at ({v}, {w})")
        self.n = n
        self.adj = tuple(adjacency)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Iterable[int]]) -> Graph:
        rows = [0] * n
        for e in edges:
            u, v = e
            if not (0 <= u < n and 0 <= v < n):
                raise InvalidVertex(f"edge {(u, v)} outside [0, {n})")
            if u == v:
                raise InvalidParameter(f"self-loop at vertex {u}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, rows)

    def edges(self) -> list[tuple[int, int]]:
        return [(u, w) for u in range(self.n) for w in iter_bits(self.adj[u]) if u < w]

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def neighbors(self, v: int) -> Face:
        return mask_face(self.adj[v])

    def complement(self) -> Graph:
        full = (1 << self.n) - 1
        return Graph(self.n, [full & ~row & ~(1 << v) for v, row in enumerate(self.adj)])

    def components(self, within: int | None = None) -> list[int]:
        """Connected components (as vertex masks) of the subgraph induced on ``within``."""
        remaining = (1 << self.n) - 1 if within is None else within
        comps = []
        while remaining:
            seed = remaining & -remaining
            comp = frontier = seed
            while frontier:
                v = (frontier & -frontier).bit_length() - 1
                frontier &= frontier - 1
                new = self.adj[v] & remaining & ~comp
                comp |= new
                frontier |= new
            comps.append(comp)
            remaining &= ~comp
        return comps

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Graph) and self.n == other.n and self.adj == other.adj

    def __hash__(self) -> int:
        return hash((self.n, self.adj))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={self.edges()})"


class SimplicialComplex:
    """A simplicial complex given by its facets over the vertex set ``[0, n)``.

    Instances are immutable; derived data (face lists, 1-skeleton, flagness)
    is cached on first use. Every vertex is a face, so isolated vertices
    appear as singleton facets. The empty complex has ``n == 0`` and the
    single facet ``()``.

    Use :func:`from_facets` (or call the class directly) to build one from
    arbitrary generating faces.
    """

    def __init__(self, n: int, facets: Iterable[Iterable[int]] = ()):
        _check_n(n)
        masks = []
        full = (1 << n) - 1
        for f in facets:
            f = tuple(f)
            if any(v < 0 for v in f) or face_mask(f) & ~full:
                raise InvalidVertex(f"facet {f} has a vertex outside [0, {n})")
            masks.append(face_mask(f))
        self._init(n, _maximal(n, masks), None)

    def _init(self, n: int, masks: Sequence[int], labels: Sequence[int] | None) -> None:
        self.n = n
        self.facet_masks: tuple[int, ...] = tuple(sorted(masks, key=mask_face))
        self.labels: tuple[int, ...] = tuple(range(n)) if labels is None else tuple(labels)

    @classmethod
    def _make(cls, n: int, gens: Iterable[int], labels: Sequence[int] | None = None) -> SimplicialComplex:
        obj = cls.__new__(cls)
        obj._init(n, _maximal(n, list(gens)), labels)
        return obj

    @property
    def facets(self) -> tuple[Face, ...]:
        return tuple(mask_face(m) for m in self.facet_masks)

    @cached_property
    def dim(self) -> int:
        return max(m.bit_count() for m in self.facet_masks) - 1

    @cached_property
    def is_pure(self) -> bool:
        return len({m.bit_count() for m in self.facet_masks}) == 1

    @cached_property
    def _faces(self) -> tuple[tuple[int, ...], ...]:
        seen: set[int] = set()
        for facet in self.facet_masks:
            sub = facet
            while True:
                seen.add(sub)
                if sub == 0:
                    break
                sub = (sub - 1) & facet
        by_size: list[list[int]] = [[] for _ in range(self.dim + 2)]
        for m in seen:
            by_size[m.bit_count()].append(m)
        return tuple(tuple(sorted(group, key=mask_face)) for group in by_size)

    def faces(self, size: int | None = None) -> tuple[int, ...]:
        """Face masks of the given cardinality (all faces if ``size`` is None), lexicographic."""
        if size is None:
            return tuple(itertools.chain.from_iterable(self._faces))
        if size < 0 or size >= len(self._faces):
            return ()
        return self._faces[size]

    @cached_property
    def graph(self) -> Graph:
        rows = [0] * self.n
        for facet in self.facet_masks:
            for v in iter_bits(facet):
                rows[v] |= facet & ~(1 << v)
        return Graph(self.n, rows)

    def contains(self, face: Iterable[int] | int) -> bool:
        m = face if isinstance(face, int) else face_mask(face)
        return any(m & ~f == 0 for f in self.facet_masks)

    @cached_property
    def is_flag(self) -> bool:
        return set(maximal_cliques(self.graph)) == set(self.facet_masks)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SimplicialComplex):
            return NotImplemented
        return self.n == other.n and self.facet_masks == other.facet_masks

    def __hash__(self) -> int:
        return hash((self.n, self.facet_masks))

    def __repr__(self) -> str:
        return f"SimplicialComplex(n={self.n}, facets={list(self.facets)})"


def _maximal(n: int, gens: list[int]) -> list[int]:
    uniq = sorted(set(gens), key=int.bit_count, reverse=True)
    kept: list[int] = []
    for g in uniq:
        if not any(g & ~k == 0 for k in kept):
            kept.append(g)
    covered = 0
    for k in kept:
        covered |= k
    for v in range(n):
        if not covered >> v & 1:
            kept.append(1 << v)
    if n == 0:
        return [0]
    return [k for k in kept if k]


def _restrict(c: SimplicialComplex, keep_mask: int, gens: Iterable[int]) -> SimplicialComplex:
    keep = mask_face(keep_mask)
    pos = {old: new for new, old in enumerate(keep)}
    new_gens = []
    for g in gens:
        m = 0
        for v in iter_bits(g):
            m |= 1 << pos[v]
        new_gens.append(m)
    return SimplicialComplex._make(len(keep), new_gens, labels=keep)


# --- constructors -----------------------------------------------------------------


def from_facets(n: int, facets: Iterable[Iterable[int]]) -> SimplicialComplex:
    return SimplicialComplex(n, facets)


def empty_complex() -> SimplicialComplex:
    return SimplicialComplex(0)


def simplex(k: int) -> SimplicialComplex:
    """The solid simplex with one facet on ``k`` vertices (dimension ``k - 1``)."""
    if k < 0:
        raise InvalidParameter(f"simplex needs k >= 0, got {k}")
    return SimplicialComplex(k, [range(k)])


def point() -> SimplicialComplex:
    return simplex(1)


def sphere0() -> SimplicialComplex:
    return SimplicialComplex(2)


def cycle(k: int) -> SimplicialComplex:
    """The k-gon: vertex ``i`` adjacent to ``i +- 1 (mod k)``."""
    if k < 3:
        raise InvalidParameter(f"cycle needs k >= 3, got {k}")
    return SimplicialComplex(k, [(i, (i + 1) % k) for i in range(k)])


def octahedral(d: int) -> SimplicialComplex:
    """Boundary of the d-dimensional cross-polytope; antipodal pairs are ``(2i, 2i+1)``."""
    if d < 0:
        raise InvalidParameter(f"octahedral needs d >= 0, got {d}")
    return suspend_k(empty_complex(), d)


def clique_complex(g: Graph) -> SimplicialComplex:
    return SimplicialComplex._make(g.n, maximal_cliques(g))


def maximal_cliques(g: Graph) -> list[int]:
    """Bron-Kerbosch with pivoting over bitmasks."""
    adj = g.adj
    out: list[int] = []

    def expand(r: int, p: int, x: int) -> None:
        if not p and not x:
            out.append(r)
            return
        pivot = max(iter_bits(p | x), key=lambda w: (p & adj[w]).bit_count())
        cand = p & ~adj[pivot]
        while cand:
            low = cand & -cand
            v = low.bit_length() - 1
            expand(r | low, p & adj[v], x & adj[v])
            p &= ~low
            x |= low
            cand ^= low

    expand(0, (1 << g.n) - 1, 0)
    return out


def one_skeleton(c: SimplicialComplex) -> Graph:
    return c.graph


# --- queries ----------------------------------------------------------------------


def f_vector(c: SimplicialComplex) -> tuple[int, ...]:
    """``(f_0, ..., f_d)`` with ``f_i`` the number of faces of cardinality ``i``."""
    return tuple(len(group) for group in c._faces)


def _as_mask(c: SimplicialComplex, face: Iterable[int] | int) -> int:
    if isinstance(face, int):
        return face
    face = tuple(face)
    for v in face:
        if not 0 <= v < c.n:
            raise InvalidVertex(f"vertex {v} outside [0, {c.n})")
    return face_mask(face)


def link(c: SimplicialComplex, face: Iterable[int]) -> SimplicialComplex:
    f = _as_mask(c, face)
    if not c.contains(f):
        raise NotAFace(f"{mask_face(f)} is not a face")
    gens = [F & ~f for F in c.facet_masks if f & ~F == 0]
    support = 0
    for g in gens:
        support |= g
    return _restrict(c, support, gens)


def star(c: SimplicialComplex, face: Iterable[int]) -> SimplicialComplex:
    f = _as_mask(c, face)
    if not c.contains(f):
        raise NotAFace(f"{mask_face(f)} is not a face")
    gens = [F for F in c.facet_masks if f & ~F == 0]
    support = 0
    for g in gens:
        support |= g
    return _restrict(c, support, gens)


def delete_face(c: SimplicialComplex, face: Iterable[int]) -> SimplicialComplex:
    """All faces not containing ``face``; proper subfaces of ``face`` survive."""
    f = _as_mask(c, face)
    if f == 0:
        raise InvalidParameter("deleting the empty face leaves no complex")
    gens = []
    for F in c.facet_masks:
        if f & ~F:
            gens.append(F)
        else:
            gens.extend(F & ~(1 << v) for v in iter_bits(f))
    support = 0
    for g in gens:
        support |= g
    return _restrict(c, support, gens)


def induced_subcomplex(c: SimplicialComplex, vertices: Iterable[int]) -> SimplicialComplex:
    s = _as_mask(c, vertices)
    return _restrict(c, s, [F & s for F in c.facet_masks])


def delete_subcomplex(c: SimplicialComplex, vertices: Iterable[int]) -> SimplicialComplex:
    """Remove every face touching ``vertices`` (the deletion of a subcomplex)."""
    s = _as_mask(c, vertices)
    return induced_subcomplex(c, mask_face(((1 << c.n) - 1) & ~s))


def missing_faces(c: SimplicialComplex) -> list[Face]:
    """All minimal non-faces of cardinality >= 2, ordered by size then lexicographically."""
    out: list[int] = []
    adj = c.graph.adj
    out.extend(
        (1 << u) | (1 << w)
        for u in range(c.n)
        for w in range(u + 1, c.n)
        if not adj[u] >> w & 1
    )
    for size in range(3, c.dim + 3):
        smaller = set(c.faces(size - 1))
        found = set()
        for g in c.faces(size - 1):
            top = g.bit_length()
            for v in range(top, c.n):
                cand = g | (1 << v)
                if c.contains(cand):
                    continue
                if all((cand & ~(1 << x)) in smaller for x in iter_bits(cand)):
                    found.add(cand)
        out.extend(sorted(found, key=mask_face))
    return [mask_face(m) for m in out]


def is_flag(c: SimplicialComplex) -> bool:
    return c.is_flag


def edge_in_induced_4cycle(c: SimplicialComplex, edge: Iterable[int]) -> bool:
    """Whether ``edge`` lies on an induced 4-cycle ``a-b-s-t-a`` of the 1-skeleton."""
    a, b = _require_edge(c, edge)
    adj = c.graph.adj
    s_side = adj[b] & ~adj[a] & ~(1 << a)
    t_side = adj[a] & ~adj[b] & ~(1 << b)
    return any(adj[s] & t_side for s in iter_bits(s_side))


def _require_edge(c: SimplicialComplex, edge: Iterable[int]) -> tuple[int, int]:
    e = tuple(sorted(edge))
    if len(e) != 2 or len(set(e)) != 2:
        raise NotAnEdge(f"{e} is not a pair of vertices")
    if not all(0 <= v < c.n for v in e) or not c.graph.has_edge(*e):
        raise NotAnEdge(f"{e} is not an edge")
    return e  # type: ignore[return-value]


def k_skeleton(c: SimplicialComplex, k: int) -> SimplicialComplex:
    if k < 0:
        raise InvalidParameter(f"skeleton dimension must be >= 0, got {k}")
    gens: set[int] = set()
    for F in c.facet_masks:
        if F.bit_count() <= k + 1:
            gens.add(F)
        else:
            gens.update(face_mask(s) for s in itertools.combinations(mask_face(F), k + 1))
    return SimplicialComplex._make(c.n, gens)


# --- joins and suspensions ------------------------------------------------------


def join(a: SimplicialComplex, b: SimplicialComplex) -> SimplicialComplex:
    """Join with ``b``'s vertices shifted past ``a``'s."""
    shift = a.n
    _check_n(a.n + b.n)
    return SimplicialComplex._make(
        a.n + b.n, [F | (G << shift) for F in a.facet_masks for G in b.facet_masks]
    )


def join_all(parts: Iterable[SimplicialComplex]) -> SimplicialComplex:
    out = empty_complex()
    for p in parts:
        out = join(out, p)
    return out


def suspension(c: SimplicialComplex) -> SimplicialComplex:
    """Join with S^0; the two new vertices get indices ``n`` and ``n + 1``."""
    return join(c, sphere0())


def suspend_k(c: SimplicialComplex, k: int) -> SimplicialComplex:
    if k < 0:
        raise InvalidParameter(f"suspension count must be >= 0, got {k}")
    for _ in range(k):
        c = suspension(c)
    return c


# --- contraction, subdivision, vertex split ----------------------------------------


def contract_edge(c: SimplicialComplex, edge: Iterable[int]) -> SimplicialComplex:
    """Identify the endpoints of ``edge``: the larger index ``b`` maps onto ``a``.

    Vertices above ``b`` shift down by one; ``labels`` gives the old index of
    each surviving vertex.
    """
    a, b = _require_edge(c, edge)
    bit_a, bit_b = 1 << a, 1 << b
    low_mask = bit_b - 1
    gens = []
    for F in c.facet_masks:
        if F & bit_b:
            F = (F & ~bit_b) | bit_a
        gens.append((F & low_mask) | ((F >> (b + 1)) << b))
    labels = [v for v in range(c.n) if v != b]
    return SimplicialComplex._make(c.n - 1, gens, labels=labels)


def edge_subdivision(c: SimplicialComplex, edge: Iterable[int]) -> SimplicialComplex:
    """Stellar subdivision of ``edge`` with the new vertex at index ``n``.

    Contracting ``{u, n}`` for either endpoint ``u`` of the edge restores ``c``.
    """
    u, w = _require_edge(c, edge)
    _check_n(c.n + 1)
    e = (1 << u) | (1 << w)
    z = 1 << c.n
    gens = []
    for F in c.facet_masks:
        if F & e == e:
            gens.append((F & ~(1 << w)) | z)
            gens.append((F & ~(1 << u)) | z)
        else:
            gens.append(F)
    return SimplicialComplex._make(c.n + 1, gens)


def vertex_split(
    c: SimplicialComplex,
    v: int,
    equator: Iterable[int],
    *,
    toward: int | None = None,
    check: bool = True,
) -> SimplicialComplex:
    """Split ``v`` along an equator of its link.

    ``equator`` is a set of neighbours of ``v`` (indices of ``c``) spanning an
    equator ``J`` of ``lk(v)``. Vertex ``v`` keeps one hemisphere of the link
    (``v+``), the new vertex ``n`` (``v-``) receives the other, and both are
    coned over ``J``. By default ``v+`` keeps the hemisphere holding the
    smallest link vertex outside ``J``; pass ``toward`` (a link vertex outside
    ``J``) to send that vertex's hemisphere to the new vertex instead.
    ``check=False`` skips the homology certification of ``J``.
    """
    from .structure import hemispheres, is_equator

    if not 0 <= v < c.n:
        raise InvalidVertex(f"vertex {v} outside [0, {c.n})")
    _check_n(c.n + 1)
    lk = link(c, (v,))
    pos = {old: new for new, old in enumerate(lk.labels)}
    j_old = set(equator)
    if not j_old <= pos.keys():
        raise JNotEquator(f"{sorted(j_old - pos.keys())} are not neighbours of {v}")
    j_local = [pos[x] for x in sorted(j_old)]
    if check and not is_equator(lk, j_local):
        raise JNotEquator(f"{sorted(j_old)} does not span an equator of lk({v})")
    try:
        plus, minus = hemispheres(lk, j_local)
    except Exception as exc:  # the component split failed, so J cannot separate the link
        raise JNotEquator(str(exc)) from exc
    if toward is not None:
        if toward not in pos or toward in j_old:
            raise InvalidParameter(f"toward={toward} must be a link vertex outside the equator")
        plus_side = {lk.labels[i] for i in plus.labels}
        if toward in plus_side:
            plus, minus = minus, plus

    def lift(h: SimplicialComplex) -> list[int]:
        return [face_mask(lk.labels[h.labels[i]] for i in mask_face(F)) for F in h.facet_masks]

    bv, bz = 1 << v, 1 << c.n
    j_cx = induced_subcomplex(lk, j_local)
    j_facets = [face_mask(lk.labels[j_cx.labels[i]] for i in mask_face(F)) for F in j_cx.facet_masks]
    gens = [F & ~bv for F in c.facet_masks]
    gens += [g | bv | bz for g in j_facets]
    gens += [h | bv for h in lift(plus)]
    gens += [h | bz for h in lift(minus)]
    return SimplicialComplex._make(c.n + 1, gens)


# --- isomorphism ------------------------------------------------------------------


def canonical_form(c: SimplicialComplex) -> bytes:
    from .canon import complex_canonical_form

    return complex_canonical_form(c)


def is_isomorphic(a: SimplicialComplex, b: SimplicialComplex) -> bool:
    if a.n != b.n or len(a.facet_masks) != len(b.facet_masks):
        return False
    if f_vector(a) != f_vector(b):
        return False
    return canonical_form(a) == canonical_form(b)


def relabel(c: SimplicialComplex, perm: Sequence[int]) -> SimplicialComplex:
    """Apply the vertex bijection ``v -> perm[v]``."""
    if sorted(perm) != list(range(c.n)):
        raise InvalidParameter("perm must be a permutation of the vertex set")
    return SimplicialComplex._make(
        c.n, [face_mask(perm[v] for v in iter_bits(F)) for F in c.facet_masks]
    )


# --- facet files ------------------------------------------------------------------

_HEADER = re.compile(r"#\s*n\s*=\s*(\d+)\s*$")


def parse_facets(text: str) -> tuple[SimplicialComplex, dict[int, int]]:
    """Parse the facet text format; returns the complex and the label -> index map."""
    declared: int | None = None
    rows: list[list[int]] = []
    first = True
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            m = _HEADER.match(line)
            if m and first and not rows:
                declared = int(m.group(1))
            first = False
            continue
        first = False
        try:
            labels = [int(tok) for tok in line.split()]
        except ValueError as exc:
            raise FacetFileError(f"line {lineno}: {exc}") from exc
        if any(x < 0 for x in labels):
            raise FacetFileError(f"line {lineno}: negative vertex label")
        rows.append(labels)
    used = sorted({x for row in rows for x in row})
    if declared is not None:
        if used and used[-1] >= declared:
            raise FacetFileError(f"label {used[-1]} exceeds declared #n={declared}")
        mapping = {x: x for x in range(declared)}
        n = declared
    else:
        mapping = {x: i for i, x in enumerate(used)}
        n = len(used)
    try:
        cx = SimplicialComplex(n, [[mapping[x] for x in row] for row in rows])
    except (InvalidVertex, InvalidParameter) as exc:
        raise FacetFileError(str(exc)) from exc
    return cx, mapping


def format_facets(c: SimplicialComplex) -> str:
    lines = [f"#n={c.n}"]
    lines += [" ".join(map(str, f)) for f in c.facets if f]
    return "\n".join(lines) + "\n"


def read_facets(path: str | Path) -> tuple[SimplicialComplex, dict[int, int]]:
    return parse_facets(Path(path).read_text())


def write_facets(c: SimplicialComplex, path: str | Path) -> None:
    Path(path).write_text(format_facets(c))
