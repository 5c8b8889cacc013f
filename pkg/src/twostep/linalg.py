"""Exact linear algebra over the rationals.

Everything here works on :class:`fractions.Fraction` values, so no floating
point ever enters a rank decision.  The pieces are:

* :class:`RatPoly`, univariate polynomials over Q;
* :class:`RatMatrix`, small dense immutable matrices;
* fraction-free (Bareiss) rank and determinant, reduced row echelon form and
  nullspaces;
* the pencil helpers used by the decomposability criterion: ``det(A + tB)``
  as a polynomial, the rank-drop locus of a pencil, and ranks of ``A + tB``
  at roots of an irreducible (or merely squarefree) modulus, computed in
  ``Q[t]/(m)``.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from math import gcd, lcm
from typing import Iterable, Iterator, Sequence, Union

Scalar = Union[int, Fraction]


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, str)):
        return Fraction(x)
    raise TypeError(f"expected int, str or Fraction, got {type(x).__name__}")


# ---------------------------------------------------------------------------
# Polynomials
# ---------------------------------------------------------------------------


class RatPoly:
    """Polynomial in ``t`` with rational coefficients, lowest degree first.

    The zero polynomial has an empty coefficient tuple and degree ``-1``.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Scalar] = ()):
        cs = [_frac(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)

    @classmethod
    def constant(cls, c: Scalar) -> RatPoly:
        return cls([c])

    @classmethod
    def linear_root(cls, root: Scalar) -> RatPoly:
        """The monic polynomial ``t - root``."""
        return cls([-_frac(root), 1])

    @classmethod
    def t(cls) -> RatPoly:
        return cls([0, 1])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lead(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = RatPoly([other])
        return isinstance(other, RatPoly) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"RatPoly({[str(c) for c in self.coeffs]})"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            mag = abs(c)
            sign = "-" if c < 0 else "+"
            if k == 0:
                body = str(mag)
            else:
                mono = "t" if k == 1 else f"t^{k}"
                body = mono if mag == 1 else f"{mag}*{mono}"
            terms.append((sign, body))
        first_sign, first_body = terms[0]
        out = ("-" if first_sign == "-" else "") + first_body
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out

    def __call__(self, x: Scalar) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __neg__(self) -> RatPoly:
        return RatPoly([-c for c in self.coeffs])

    def __add__(self, other) -> RatPoly:
        other = _as_poly(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (Fraction(0),) * (n - len(self.coeffs))
        b = other.coeffs + (Fraction(0),) * (n - len(other.coeffs))
        return RatPoly([x + y for x, y in zip(a, b)])

    __radd__ = __add__

    def __sub__(self, other) -> RatPoly:
        return self + (-_as_poly(other))

    def __rsub__(self, other) -> RatPoly:
        return _as_poly(other) - self

    def __mul__(self, other) -> RatPoly:
        other = _as_poly(other)
        if not self.coeffs or not other.coeffs:
            return RatPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return RatPoly(out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> RatPoly:
        out = RatPoly([1])
        for _ in range(e):
            out = out * self
        return out

    def __divmod__(self, other) -> tuple[RatPoly, RatPoly]:
        other = _as_poly(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = other.degree
        inv_lead = 1 / other.lead
        quo = [Fraction(0)] * max(len(rem) - dq, 0)
        for k in range(len(rem) - 1, dq - 1, -1):
            c = rem[k] * inv_lead
            if c == 0:
                continue
            quo[k - dq] = c
            for j, b in enumerate(other.coeffs):
                rem[k - dq + j] -= c * b
        return RatPoly(quo), RatPoly(rem[:dq] if dq > 0 else [])

    def __floordiv__(self, other) -> RatPoly:
        return divmod(self, other)[0]

    def __mod__(self, other) -> RatPoly:
        return divmod(self, other)[1]

    def monic(self) -> RatPoly:
        if self.is_zero():
            return self
        inv = 1 / self.lead
        return RatPoly([c * inv for c in self.coeffs])

    def derivative(self) -> RatPoly:
        return RatPoly([k * c for k, c in enumerate(self.coeffs)][1:])

    def integer_coefficients(self) -> list[int]:
        """Primitive integer multiple of ``self`` (positive leading coefficient)."""
        if self.is_zero():
            return []
        den = lcm(*(c.denominator for c in self.coeffs))
        ints = [c.numerator * (den // c.denominator) for c in self.coeffs]
        g = 0
        for v in ints:
            g = gcd(g, v)
        ints = [v // g for v in ints]
        if ints[-1] < 0:
            ints = [-v for v in ints]
        return ints


def _as_poly(x) -> RatPoly:
    if isinstance(x, RatPoly):
        return x
    return RatPoly([x])


def poly_gcd(a: RatPoly, b: RatPoly) -> RatPoly:
    """Monic gcd; ``gcd(0, 0) = 0``."""
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def poly_xgcd(a: RatPoly, b: RatPoly) -> tuple[RatPoly, RatPoly, RatPoly]:
    """Return ``(g, s, u)`` with ``s*a + u*b = g`` and ``g`` monic."""
    r0, r1 = a, b
    s0, s1 = RatPoly([1]), RatPoly()
    u0, u1 = RatPoly(), RatPoly([1])
    while not r1.is_zero():
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        u0, u1 = u1, u0 - q * u1
    if r0.is_zero():
        return r0, s0, u0
    inv = 1 / r0.lead
    return r0 * inv, s0 * inv, u0 * inv


def is_squarefree(f: RatPoly) -> bool:
    if f.degree <= 0:
        return not f.is_zero()
    return poly_gcd(f, f.derivative()).degree == 0


def squarefree_part(f: RatPoly) -> RatPoly:
    if f.degree <= 0:
        return f.monic()
    return (f // poly_gcd(f, f.derivative())).monic()


def squarefree_decomposition(f: RatPoly) -> list[tuple[RatPoly, int]]:
    """Yun's algorithm: monic ``f = prod(g_i ** i)`` with pairwise coprime ``g_i``.

    Only factors of positive degree are returned.
    """
    f = f.monic()
    if f.degree <= 0:
        return []
    out = []
    a = poly_gcd(f, f.derivative())
    b = f // a
    c = f.derivative() // a
    d = c - b.derivative()
    i = 1
    while b.degree > 0:
        g = poly_gcd(b, d)
        if g.degree > 0:
            out.append((g, i))
        b = b // g
        c = d // g
        d = c - b.derivative()
        i += 1
    return out


def _divisors(n: int) -> list[int]:
    n = abs(n)
    small, large = [], []
    k = 1
    while k * k <= n:
        if n % k == 0:
            small.append(k)
            if k * k != n:
                large.append(n // k)
        k += 1
    return small + large[::-1]


def rational_roots(f: RatPoly) -> list[Fraction]:
    """Distinct rational roots of ``f`` in increasing order (rational root test)."""
    if f.degree <= 0:
        return []
    ints = f.integer_coefficients()
    roots: set[Fraction] = set()
    while ints and ints[0] == 0:
        roots.add(Fraction(0))
        ints = ints[1:]
    if len(ints) > 1:
        g = RatPoly(ints)
        for num in _divisors(ints[0]):
            for den in _divisors(ints[-1]):
                for cand in (Fraction(num, den), Fraction(-num, den)):
                    if cand not in roots and g(cand) == 0:
                        roots.add(cand)
    return sorted(roots)


def interpolate(points: Sequence[tuple[Scalar, Scalar]]) -> RatPoly:
    """Exact Newton interpolation through ``(x, y)`` pairs with distinct ``x``."""
    xs = [_frac(x) for x, _ in points]
    coef = [_frac(y) for _, y in points]
    n = len(xs)
    for level in range(1, n):
        for i in range(n - 1, level - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - level])
    out = RatPoly([coef[-1]]) if n else RatPoly()
    for i in range(n - 2, -1, -1):
        out = out * RatPoly([-xs[i], 1]) + coef[i]
    return out


# ---------------------------------------------------------------------------
# Matrices
# ---------------------------------------------------------------------------


class RatMatrix:
    """Immutable dense matrix of Fractions."""

    __slots__ = ("rows", "cols", "_data")

    def __init__(self, data: Iterable[Iterable[Scalar]] = (), cols: int | None = None):
        rows = tuple(tuple(_frac(x) for x in row) for row in data)
        if cols is None:
            cols = len(rows[0]) if rows else 0
        for row in rows:
            if len(row) != cols:
                raise ValueError("ragged matrix rows")
        self.rows = len(rows)
        self.cols = cols
        self._data = rows

    @classmethod
    def zeros(cls, rows: int, cols: int) -> RatMatrix:
        return cls([[0] * cols for _ in range(rows)], cols=cols)

    @classmethod
    def identity(cls, n: int) -> RatMatrix:
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)], cols=n)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[Scalar]], rows: int | None = None) -> RatMatrix:
        if not columns:
            return cls.zeros(rows or 0, 0)
        return cls(zip(*columns), cols=len(columns))

    @classmethod
    def column_vector(cls, values: Sequence[Scalar]) -> RatMatrix:
        return cls([[v] for v in values], cols=1)

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        return self._data[i][j]

    def row(self, i: int) -> tuple[Fraction, ...]:
        return self._data[i]

    def column(self, j: int) -> tuple[Fraction, ...]:
        return tuple(row[j] for row in self._data)

    def tolist(self) -> list[list[Fraction]]:
        return [list(r) for r in self._data]

    def __iter__(self) -> Iterator[tuple[Fraction, ...]]:
        return iter(self._data)

    @property
    def entries(self) -> tuple[Fraction, ...]:
        """Row-major entries."""
        return tuple(x for row in self._data for x in row)

    def __eq__(self, other) -> bool:
        return isinstance(other, RatMatrix) and self.shape == other.shape and self._data == other._data

    def __hash__(self) -> int:
        return hash((self.shape, self._data))

    def __repr__(self) -> str:
        body = "; ".join(" ".join(str(x) for x in row) for row in self._data)
        return f"RatMatrix({self.rows}x{self.cols}: [{body}])"

    @property
    def T(self) -> RatMatrix:
        return RatMatrix(zip(*self._data), cols=self.rows) if self.rows else RatMatrix.zeros(self.cols, 0)

    def __add__(self, other: RatMatrix) -> RatMatrix:
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")
        return RatMatrix(
            ([a + b for a, b in zip(r, s)] for r, s in zip(self._data, other._data)), cols=self.cols
        )

    def __sub__(self, other: RatMatrix) -> RatMatrix:
        return self + (-other)

    def __neg__(self) -> RatMatrix:
        return RatMatrix(([-a for a in r] for r in self._data), cols=self.cols)

    def __mul__(self, c: Scalar) -> RatMatrix:
        c = _frac(c)
        return RatMatrix(([c * a for a in r] for r in self._data), cols=self.cols)

    __rmul__ = __mul__

    def __matmul__(self, other: RatMatrix) -> RatMatrix:
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        cols = other.T._data if other.cols else ()
        return RatMatrix(
            ([sum((a * b for a, b in zip(r, c)), Fraction(0)) for c in cols] for r in self._data),
            cols=other.cols,
        )

    def hstack(self, *others: RatMatrix) -> RatMatrix:
        mats = (self,) + others
        if len({m.rows for m in mats}) != 1:
            raise ValueError("hstack needs equal row counts")
        return RatMatrix(
            (sum((m._data[i] for m in mats), ()) for i in range(self.rows)),
            cols=sum(m.cols for m in mats),
        )

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> RatMatrix:
        return RatMatrix(([self._data[i][j] for j in cols] for i in rows), cols=len(cols))

    def is_zero(self) -> bool:
        return all(x == 0 for row in self._data for x in row)

    def is_square(self) -> bool:
        return self.rows == self.cols

    def inverse(self) -> RatMatrix:
        return inverse(self)


def _integer_rows(M: RatMatrix) -> list[list[int]]:
    """Scale each row by the lcm of its denominators (rank preserving)."""
    out = []
    for row in M:
        den = lcm(*(x.denominator for x in row)) if row else 1
        out.append([x.numerator * (den // x.denominator) for x in row])
    return out


def _bareiss(a: list[list[int]]) -> tuple[int, int, int]:
    """In-place fraction-free elimination of an integer matrix.

    Returns ``(rank, last_pivot, sign)``; for a square nonsingular input the
    determinant is ``sign * last_pivot``.
    """
    m = len(a)
    n = len(a[0]) if m else 0
    r = 0
    prev = 1
    sign = 1
    for c in range(n):
        if r == m:
            break
        piv = next((i for i in range(r, m) if a[i][c]), None)
        if piv is None:
            continue
        if piv != r:
            a[r], a[piv] = a[piv], a[r]
            sign = -sign
        p = a[r][c]
        pr = a[r]
        for i in range(r + 1, m):
            ai = a[i]
            f = ai[c]
            for j in range(c + 1, n):
                ai[j] = (p * ai[j] - f * pr[j]) // prev
            ai[c] = 0
        prev = p
        r += 1
    return r, prev, sign


def rank(M: RatMatrix) -> int:
    """Exact rank over Q by fraction-free Gaussian elimination."""
    if M.rows == 0 or M.cols == 0:
        return 0
    # Work on the shorter side.
    rows = _integer_rows(M if M.rows <= M.cols else M.T)
    return _bareiss(rows)[0]


def determinant(M: RatMatrix) -> Fraction:
    if not M.is_square():
        raise ValueError(f"determinant of non-square {M.shape} matrix")
    if M.rows == 0:
        return Fraction(1)
    scale = 1
    for row in M:
        scale *= lcm(*(x.denominator for x in row))
    a = _integer_rows(M)
    r, last, sign = _bareiss(a)
    if r < M.rows:
        return Fraction(0)
    return Fraction(sign * last, scale)


def rref(M: RatMatrix) -> tuple[RatMatrix, tuple[int, ...]]:
    """Reduced row echelon form with zero rows dropped, plus pivot columns."""
    a = [list(r) for r in M]
    pivots: list[int] = []
    r = 0
    for c in range(M.cols):
        piv = next((i for i in range(r, len(a)) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == len(a):
            break
    return RatMatrix(a[:r], cols=M.cols), tuple(pivots)


def nullspace(M: RatMatrix) -> list[RatMatrix]:
    """Basis of the right kernel as column vectors (``cols - rank`` of them)."""
    R, pivots = rref(M)
    free = [c for c in range(M.cols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * M.cols
        v[f] = Fraction(1)
        for row_idx, pc in enumerate(pivots):
            v[pc] = -R[row_idx, f]
        basis.append(RatMatrix.column_vector(v))
    return basis


def row_space_basis(vectors: Sequence[Sequence[Scalar]], dim: int) -> list[tuple[Fraction, ...]]:
    """RREF basis of the span of ``vectors`` in ``Q^dim``."""
    if not vectors:
        return []
    R, _ = rref(RatMatrix(vectors, cols=dim))
    return [R.row(i) for i in range(R.rows)]


def inverse(M: RatMatrix) -> RatMatrix:
    if not M.is_square():
        raise ValueError(f"inverse of non-square {M.shape} matrix")
    n = M.rows
    R, pivots = rref(M.hstack(RatMatrix.identity(n)))
    if pivots[:n] != tuple(range(n)) or R.rows < n:
        raise ZeroDivisionError("matrix is singular")
    return R.submatrix(range(n), range(n, 2 * n))


# ---------------------------------------------------------------------------
# Pencils A + tB
# ---------------------------------------------------------------------------


def _check_pencil(A: RatMatrix, B: RatMatrix) -> None:
    if A.shape != B.shape:
        raise ValueError(f"pencil shape mismatch {A.shape} vs {B.shape}")


def det_poly(A: RatMatrix, B: RatMatrix) -> RatPoly:
    """``det(A + tB)`` as a polynomial in ``t``.

    Evaluated at ``n + 1`` integer points and interpolated, which is exact
    because the determinant has degree at most ``n``.
    """
    _check_pencil(A, B)
    if not A.is_square():
        raise ValueError(f"det_poly needs square matrices, got {A.shape}")
    n = A.rows
    return interpolate([(t, determinant(A + B * t)) for t in range(n + 1)])


def pencil_generic_rank(A: RatMatrix, B: RatMatrix) -> int:
    """Rank of ``A + tB`` at a generic ``t``.

    Any nonzero ``r x r`` minor has degree at most ``min(rows, cols)`` in
    ``t``, so among ``min(rows, cols) + 2`` distinct samples at least one is
    off the drop locus.
    """
    _check_pencil(A, B)
    k = min(A.shape) + 2
    return max(rank(A + B * t) for t in range(k))


def pencil_drop_polynomial(A: RatMatrix, B: RatMatrix, generic_rank: int | None = None) -> RatPoly:
    """Monic gcd of all ``r x r`` minors of ``A + tB`` where ``r`` is the generic rank.

    Its roots are exactly the finite ``t`` where the rank falls below ``r``.
    """
    _check_pencil(A, B)
    r = pencil_generic_rank(A, B) if generic_rank is None else generic_rank
    g = RatPoly()
    if r == 0:
        return RatPoly([1])
    for rows in combinations(range(A.rows), r):
        for cols in combinations(range(A.cols), r):
            d = det_poly(A.submatrix(rows, cols), B.submatrix(rows, cols))
            if d.is_zero():
                continue
            g = poly_gcd(g, d)
            if g.degree == 0:
                return g
    return g


class ZeroDivisorFound(ArithmeticError):
    """Raised when elimination over ``Q[t]/(m)`` meets a non-invertible nonzero pivot."""

    def __init__(self, factor: RatPoly):
        super().__init__(f"modulus has proper factor {factor}")
        self.factor = factor


class QuotientRingMatrix:
    """Matrix with entries in ``Q[t]/(m)``, every entry reduced modulo ``m``.

    ``m`` should be squarefree.  Rank is computed by Gaussian elimination;
    a nonzero pivot sharing a factor with ``m`` shows that ``m`` is
    reducible, in which case :meth:`rank_pieces` splits the modulus and
    carries on with each factor.
    """

    __slots__ = ("modulus", "rows", "cols", "entries")

    def __init__(self, modulus: RatPoly, entries: Sequence[Sequence[RatPoly]]):
        if modulus.degree < 1:
            raise ValueError("modulus must have positive degree")
        self.modulus = modulus.monic()
        self.entries = tuple(tuple(_as_poly(e) % self.modulus for e in row) for row in entries)
        self.rows = len(self.entries)
        self.cols = len(self.entries[0]) if self.entries else 0

    @classmethod
    def pencil(cls, A: RatMatrix, B: RatMatrix, modulus: RatPoly) -> QuotientRingMatrix:
        _check_pencil(A, B)
        return cls(
            modulus,
            [[RatPoly([A[i, j], B[i, j]]) for j in range(A.cols)] for i in range(A.rows)],
        )

    def _inverse(self, a: RatPoly, m: RatPoly) -> RatPoly:
        g, s, _ = poly_xgcd(a, m)
        if g.degree > 0:
            raise ZeroDivisorFound(g)
        return s % m

    def _rank_mod(self, rows: list[list[RatPoly]], m: RatPoly) -> int:
        a = [[e % m for e in row] for row in rows]
        r = 0
        ncols = len(a[0]) if a else 0
        for c in range(ncols):
            piv = next((i for i in range(r, len(a)) if not a[i][c].is_zero()), None)
            if piv is None:
                continue
            a[r], a[piv] = a[piv], a[r]
            inv = self._inverse(a[r][c], m)
            pr = [(x * inv) % m for x in a[r]]
            a[r] = pr
            for i in range(r + 1, len(a)):
                f = a[i][c]
                if f.is_zero():
                    continue
                a[i] = [(x - f * y) % m for x, y in zip(a[i], pr)]
            r += 1
            if r == len(a):
                break
        return r

    def rank_pieces(self) -> list[tuple[RatPoly, int]]:
        """Pairwise coprime factors of the modulus with the rank at their roots."""
        out = []
        pending = [self.modulus]
        rows = [list(r) for r in self.entries]
        while pending:
            m = pending.pop()
            try:
                out.append((m, self._rank_mod(rows, m)))
            except ZeroDivisorFound as exc:
                g = exc.factor.monic()
                pending.extend([m // g, g])
        out.sort(key=lambda item: (item[0].degree, item[0].coeffs))
        return out

    def rank(self) -> int:
        pieces = self.rank_pieces()
        ranks = {r for _, r in pieces}
        if len(ranks) != 1:
            raise ValueError(
                "modulus is reducible and the rank differs between its factors: "
                + ", ".join(f"({m}) -> {r}" for m, r in pieces)
            )
        return ranks.pop()


def rank_at_root(A: RatMatrix, B: RatMatrix, m: RatPoly) -> int:
    """Rank of ``A + tau*B`` for a root ``tau`` of the irreducible polynomial ``m``.

    All conjugate roots give the same rank, so the answer is well defined.
    """
    _check_pencil(A, B)
    if m.degree < 1:
        raise ValueError("modulus must have positive degree")
    if not is_squarefree(m):
        raise ValueError(f"modulus {m} is not squarefree")
    if m.degree == 1:
        return rank(A + B * (-m.coeffs[0] / m.coeffs[1]))
    return QuotientRingMatrix.pencil(A, B, m).rank()
