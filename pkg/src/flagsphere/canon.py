"""Canonical labeling by colour refinement plus individualisation search.

The search explores an ordered-partition tree: refine to an equitable
partition, individualise a vertex of the first non-trivial cell, recurse.
Leaves are discrete vertex orderings, each scored by a certificate (the
relabelled structure); the canonical form is the smallest certificate.
Automorphisms found when two leaves share a certificate prune sibling
branches that lie in the same orbit.

Flag complexes are canonised through their 1-skeleton. Other complexes use
the vertex/facet incidence graph, individualising only vertex nodes.
"""

from __future__ import annotations

from typing import Callable, Sequence

from .complex import Graph, SimplicialComplex, iter_bits

Cert = tuple[int, ...]


def _refine(adj: Sequence[int], cells: list[list[int]]) -> list[list[int]]:
    while True:
        masks = []
        for cell in cells:
            m = 0
            for x in cell:
                m |= 1 << x
            masks.append(m)
        new: list[list[int]] = []
        split = False
        for cell in cells:
            if len(cell) == 1:
                new.append(cell)
                continue
            groups: dict[tuple[int, ...], list[int]] = {}
            for x in cell:
                row = adj[x]
                groups.setdefault(tuple((row & m).bit_count() for m in masks), []).append(x)
            if len(groups) == 1:
                new.append(cell)
                continue
            split = True
            new.extend(groups[key] for key in sorted(groups))
        if not split:
            return new
        cells = new


class _Search:
    def __init__(self, adj: Sequence[int], nv: int, cert: Callable[[list[int]], Cert]):
        self.adj = adj
        self.nv = nv
        self.cert = cert
        self.first: tuple[Cert, list[int]] | None = None
        self.best: tuple[Cert, list[int]] | None = None
        self.autos: list[dict[int, int]] = []

    def run(self, cells: list[list[int]], prefix: list[int]) -> None:
        cells = _refine(self.adj, cells)
        target = next(
            (i for i, c in enumerate(cells) if len(c) > 1 and c[0] < self.nv), None
        )
        if target is None:
            self._leaf([c[0] for c in cells if c[0] < self.nv])
            return
        cell = cells[target]
        done: list[int] = []
        for x in sorted(cell):
            if done and self._same_orbit(x, done, prefix):
                continue
            rest = [y for y in cell if y != x]
            self.run(cells[:target] + [[x], rest] + cells[target + 1:], prefix + [x])
            done.append(x)

    def _leaf(self, order: list[int]) -> None:
        cert = self.cert(order)
        if self.first is None:
            self.first = self.best = (cert, order)
            return
        for ref_cert, ref_order in (self.first, self.best):
            if cert == ref_cert:
                self.autos.append(dict(zip(ref_order, order)))
                return
        if cert < self.best[0]:
            self.best = (cert, order)

    def _same_orbit(self, x: int, done: list[int], prefix: list[int]) -> bool:
        gens = [g for g in self.autos if all(g[p] == p for p in prefix)]
        if not gens:
            return False
        parent = {}

        def find(a: int) -> int:
            while parent.get(a, a) != a:
                a = parent[a]
            return a

        for g in gens:
            for a, b in g.items():
                ra, rb = find(a), find(b)
                if ra != rb:
                    parent[ra] = rb
        rx = find(x)
        return any(find(y) == rx for y in done)


def _canonical(adj: Sequence[int], nv: int, colours: list[list[int]], cert) -> tuple[Cert, list[int]]:
    if nv == 0:
        return cert([]), []
    search = _Search(adj, nv, cert)
    search.run([c for c in colours if c], [])
    assert search.best is not None
    return search.best


def graph_canonical_labeling(g: Graph) -> tuple[Cert, list[int]]:
    """Return ``(certificate, order)``; ``order[i]`` is the vertex placed at position ``i``."""
    adj = g.adj

    def cert(order: list[int]) -> Cert:
        pos = {v: i for i, v in enumerate(order)}
        rows = []
        for v in order:
            m = 0
            for w in iter_bits(adj[v]):
                m |= 1 << pos[w]
            rows.append(m)
        return tuple(rows)

    return _canonical(adj, g.n, [list(range(g.n))], cert)


def graph_canonical_form(g: Graph) -> bytes:
    rows, _ = graph_canonical_labeling(g)
    return b"G" + bytes([g.n]) + b"".join(r.to_bytes(8, "little") for r in rows)


def complex_canonical_labeling(c: SimplicialComplex) -> tuple[Cert, list[int]]:
    if c.is_flag:
        return graph_canonical_labeling(c.graph)
    n = c.n
    facets = c.facet_masks
    adj = [0] * (n + len(facets))
    for j, F in enumerate(facets):
        node = n + j
        for v in iter_bits(F):
            adj[v] |= 1 << node
            adj[node] |= 1 << v

    def cert(order: list[int]) -> Cert:
        pos = {v: i for i, v in enumerate(order)}
        out = []
        for F in facets:
            m = 0
            for v in iter_bits(F):
                m |= 1 << pos[v]
            out.append(m)
        return tuple(sorted(out))

    return _canonical(adj, n, [list(range(n)), list(range(n, n + len(facets)))], cert)


def complex_canonical_form(c: SimplicialComplex) -> bytes:
    """Byte string equal for isomorphic complexes and distinct otherwise."""
    cert, _ = complex_canonical_labeling(c)
    if c.is_flag:
        body = b"".join(r.to_bytes(8, "little") for r in cert)
        return b"F" + bytes([c.n]) + body
    body = b"".join(r.to_bytes(8, "little") for r in cert)
    return b"N" + bytes([c.n]) + len(cert).to_bytes(4, "little") + body


def from_canonical_form(form: bytes) -> SimplicialComplex:
    """Rebuild the canonically labelled complex encoded by :func:`complex_canonical_form`."""
    from .complex import clique_complex

    tag, n = form[:1], form[1]
    if tag == b"F":
        rows = [int.from_bytes(form[2 + 8 * i: 10 + 8 * i], "little") for i in range(n)]
        return clique_complex(Graph(n, rows))
    if tag == b"N":
        count = int.from_bytes(form[2:6], "little")
        masks = [int.from_bytes(form[6 + 8 * i: 14 + 8 * i], "little") for i in range(count)]
        return SimplicialComplex._make(n, masks)
    raise ValueError(f"unknown canonical form tag {tag!r}")


def canonical_relabel(c: SimplicialComplex) -> SimplicialComplex:
    """The isomorphic copy of ``c`` whose labelling is the canonical one."""
    _, order = complex_canonical_labeling(c)
    pos = {v: i for i, v in enumerate(order)}
    return SimplicialComplex._make(
        c.n, [sum(1 << pos[v] for v in iter_bits(F)) for F in c.facet_masks]
    )
