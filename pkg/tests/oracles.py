"""Independent reference implementations used only by the tests.

Linear algebra goes through sympy (a different code path from the
package's Bareiss elimination); graph quantities are recomputed by brute
force without networkx.
"""

from __future__ import annotations

import random
from collections import deque
from fractions import Fraction
from itertools import combinations

import sympy

from twostep.algebra import BasisChange, StructureTensor, TwoStepAlgebra
from twostep.linalg import RatMatrix, rank


def to_sympy(M: RatMatrix) -> sympy.Matrix:
    return sympy.Matrix(M.rows, M.cols, [sympy.Rational(x.numerator, x.denominator) for x in M.entries])


def sympy_rank(M: RatMatrix) -> int:
    if M.rows == 0 or M.cols == 0:
        return 0
    return to_sympy(M).rank()


def sympy_det(M: RatMatrix) -> Fraction:
    d = to_sympy(M).det()
    return Fraction(int(d.p), int(d.q))


def gaussian_rank_complex(rows):
    """Rank over Q(i) with entries as (re, im) Fraction pairs; plain Gauss-Jordan."""
    a = [list(r) for r in rows]
    m = len(a)
    n = len(a[0]) if m else 0

    def mul(x, y):
        return (x[0] * y[0] - x[1] * y[1], x[0] * y[1] + x[1] * y[0])

    def inv(x):
        d = x[0] ** 2 + x[1] ** 2
        return (x[0] / d, -x[1] / d)

    def sub(x, y):
        return (x[0] - y[0], x[1] - y[1])

    r = 0
    for c in range(n):
        piv = next((i for i in range(r, m) if a[i][c] != (0, 0)), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        iv = inv(a[r][c])
        a[r] = [mul(iv, x) for x in a[r]]
        for i in range(m):
            if i != r and a[i][c] != (0, 0):
                f = a[i][c]
                a[i] = [sub(x, mul(f, y)) for x, y in zip(a[i], a[r])]
        r += 1
    return r


def brute_girth(q: int, edges) -> int | None:
    """Shortest cycle by BFS from every vertex."""
    adj = {v: set() for v in range(1, q + 1)}
    for i, j in edges:
        adj[i].add(j)
        adj[j].add(i)
    best = None
    for s in adj:
        dist, parent = {s: 0}, {s: None}
        dq = deque([s])
        while dq:
            u = dq.popleft()
            for w in adj[u]:
                if w not in dist:
                    dist[w], parent[w] = dist[u] + 1, u
                    dq.append(w)
                elif parent[u] != w:
                    c = dist[u] + dist[w] + 1
                    best = c if best is None else min(best, c)
    return best


def union_find_components(q: int, p: int, edges):
    """Components of the hypergraph over generators 1..q and centers 1..p."""
    parent = {("x", i): ("x", i) for i in range(1, q + 1)}
    parent.update({("y", k): ("y", k) for k in range(1, p + 1)})

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    def union(a, b):
        parent[find(a)] = find(b)

    for i, j, ks in edges:
        union(("x", i), ("x", j))
        for k in ks:
            union(("x", i), ("y", k))
    groups = {}
    for v in parent:
        groups.setdefault(find(v), set()).add(v)
    return sorted(
        (frozenset(v[1] for v in g if v[0] == "x"), frozenset(v[1] for v in g if v[0] == "y"))
        for g in groups.values()
    )


def random_invertible(n: int, rng: random.Random, height: int = 3) -> RatMatrix:
    while True:
        M = RatMatrix(
            [[Fraction(rng.randint(-height, height), rng.randint(1, height)) for _ in range(n)] for _ in range(n)]
        )
        if rank(M) == n:  # plumbing, not an oracle check
            return M


def random_basis_change(q: int, p: int, rng: random.Random) -> BasisChange:
    return BasisChange(random_invertible(q, rng), random_invertible(p, rng))


def monomial_change(q: int, p: int, rng: random.Random) -> BasisChange:
    """Random permutation times nonzero scalings, on both blocks."""

    def mono(n):
        perm = list(range(n))
        rng.shuffle(perm)
        rows = [[0] * n for _ in range(n)]
        for i, j in enumerate(perm):
            rows[i][j] = Fraction(rng.choice([-3, -2, -1, 1, 2, 3]), rng.choice([1, 2]))
        return RatMatrix(rows, cols=n)

    return BasisChange(mono(q), mono(p))


def random_algebra(rng: random.Random, q: int, p: int, density: float = 0.5) -> TwoStepAlgebra:
    """Random valid algebra: random small-integer brackets, retried until derived dim = p."""
    pairs = list(combinations(range(1, q + 1), 2))
    if not 1 <= p <= len(pairs):
        raise ValueError(f"no algebra with q={q}, p={p}")
    while True:
        brackets = {}
        for pr in pairs:
            if rng.random() < density:
                vec = {k: rng.randint(-2, 2) for k in range(1, p + 1)}
                vec = {k: c for k, c in vec.items() if c}
                if vec:
                    brackets[pr] = vec
        t = StructureTensor.from_brackets(q, p, brackets)
        try:
            return TwoStepAlgebra(t)
        except ValueError:
            continue

