"""Independent reference computations used only by the tests."""

import itertools
from fractions import Fraction

import numpy as np
import sympy


def f_vector_brute(c):
    faces = set()
    for F in c.facets:
        for k in range(len(F) + 1):
            faces.update(itertools.combinations(F, k))
    d = c.dim + 1
    return [sum(1 for f in faces if len(f) == i) for i in range(d + 1)]


def h_from_f_sympy(f, d):
    """h(z) = (z-1)^d f(1/(z-1)) expanded symbolically."""
    z = sympy.symbols("z")
    expr = sum(fi * (z - 1) ** (d - i) for i, fi in enumerate(f))
    poly = sympy.Poly(sympy.expand(expr), z)
    coeffs = [int(poly.coeff_monomial(z ** k)) for k in range(d + 1)]
    return coeffs


def gamma_linear_solve(h, d):
    """Solve h = sum_i g_i z^i (1+z)^(d-2i) as an exact linear system."""
    z = sympy.symbols("z")
    m = d // 2 + 1
    gs = sympy.symbols(f"g0:{m}")
    expr = sum(g * z ** i * (1 + z) ** (d - 2 * i) for i, g in enumerate(gs))
    poly = sympy.Poly(sympy.expand(expr), z)
    eqs = [sympy.Eq(poly.coeff_monomial(z ** k), h[k] if k < len(h) else 0) for k in range(d + 1)]
    sol = sympy.solve(eqs, gs, dict=True)
    if not sol:
        return None
    out = [int(sol[0][g]) for g in gs]
    while out and out[-1] == 0:
        out.pop()
    return out


def reduced_betti_dense(c, mod2=True):
    """Reduced Betti numbers from dense boundary matrices (numpy / Fraction elimination)."""
    faces = set()
    for F in c.facets:
        for k in range(len(F) + 1):
            faces.update(itertools.combinations(F, k))
    by = {}
    for f in faces:
        by.setdefault(len(f), []).append(f)
    for k in by:
        by[k].sort()
    top = c.dim + 1

    def rank(s):
        if s < 1 or s not in by or (s - 1) not in by:
            return 0
        rows, cols = by[s], {f: i for i, f in enumerate(by[s - 1])}
        M = [[0] * len(cols) for _ in rows]
        for r, f in enumerate(rows):
            for j in range(len(f)):
                g = f[:j] + f[j + 1:]
                M[r][cols[g]] = 1 if mod2 else (-1) ** j
        return _rank(M, mod2)

    ranks = [rank(s) for s in range(top + 2)]
    return tuple(len(by.get(s, [])) - ranks[s] - ranks[s + 1] for s in range(top + 1))


def _rank(M, mod2):
    if not M or not M[0]:
        return 0
    if mod2:
        A = np.array(M, dtype=np.uint8) % 2
        r = 0
        rows, cols = A.shape
        for c in range(cols):
            piv = next((i for i in range(r, rows) if A[i, c]), None)
            if piv is None:
                continue
            A[[r, piv]] = A[[piv, r]]
            for i in range(rows):
                if i != r and A[i, c]:
                    A[i] ^= A[r]
            r += 1
        return r
    A = [[Fraction(x) for x in row] for row in M]
    return sympy.Matrix(A).rank()


def all_graph_isomorphic(g1, g2):
    """Brute-force isomorphism over all permutations (small n only)."""
    if g1.n != g2.n or len(g1.edges()) != len(g2.edges()):
        return False
    e2 = set(g2.edges())
    for p in itertools.permutations(range(g1.n)):
        if all(tuple(sorted((p[a], p[b]))) in e2 for a, b in g1.edges()):
            return True
    return False
