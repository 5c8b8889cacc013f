"""Two-step nilpotent Lie algebras as validated structure tensors.

An algebra ``N = X + I`` with generators ``x_1..x_q`` and a center basis
``y_1..y_p`` is stored as the ``q x q x p`` array ``a[i][j][k]`` with
``[x_i, x_j] = sum_k a[i][j][k] y_k``.  Every triple bracket vanishes, so the
Jacobi identity holds automatically and is never checked.

Indices are 1-based in every public function (matching the usual bracket
notation); storage is 0-based.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import isqrt
from typing import TYPE_CHECKING, Mapping, Optional, Sequence, Tuple

from .errors import DerivedDimDeficit, SkewViolation, ValidationError
from .linalg import RatMatrix, Scalar, inverse, rank
from .notation import parse_bracket_table

if TYPE_CHECKING:
    from .duality import RelationIdeal

Entries = Tuple[Tuple[Tuple[Fraction, ...], ...], ...]


@dataclass(frozen=True)
class StructureTensor:
    """Raw ``q x q x p`` bracket table.  Skew-symmetry is checked by :func:`validate`."""

    q: int
    p: int
    entries: Entries

    def __post_init__(self):
        if self.q < 1 or self.p < 0:
            raise ValueError(f"bad tensor dimensions q={self.q}, p={self.p}")
        ok = len(self.entries) == self.q and all(
            len(row) == self.q and all(len(cell) == self.p for cell in row) for row in self.entries
        )
        if not ok:
            raise ValueError(f"entries do not have shape ({self.q}, {self.q}, {self.p})")

    @classmethod
    def from_array(cls, q: int, p: int, array) -> StructureTensor:
        entries = tuple(
            tuple(tuple(Fraction(array[i][j][k]) for k in range(p)) for j in range(q)) for i in range(q)
        )
        return cls(q, p, entries)

    @classmethod
    def zeros(cls, q: int, p: int) -> StructureTensor:
        zero = tuple(Fraction(0) for _ in range(p))
        return cls(q, p, tuple(tuple(zero for _ in range(q)) for _ in range(q)))

    @classmethod
    def from_brackets(
        cls, q: int, p: int, brackets: Mapping[Tuple[int, int], Mapping[int, Scalar]]
    ) -> StructureTensor:
        """Build from ``{(i, j): {k: coeff}}`` (1-based); fills both orientations."""
        a = [[[Fraction(0)] * p for _ in range(q)] for _ in range(q)]
        for (i, j), coeffs in brackets.items():
            if not (1 <= i <= q and 1 <= j <= q):
                raise ValidationError(f"bracket [x{i},x{j}] out of range for q={q}")
            if i == j:
                raise ValidationError(f"bracket [x{i},x{i}] must vanish")
            for k, c in coeffs.items():
                if not 1 <= k <= p:
                    raise ValidationError(f"center index y{k} out of range for p={p}")
                c = Fraction(c)
                a[i - 1][j - 1][k - 1] += c
                a[j - 1][i - 1][k - 1] -= c
        return cls.from_array(q, p, a)

    @classmethod
    def from_text(cls, text: str, q: int | None = None, p: int | None = None) -> StructureTensor:
        """Parse chained bracket notation, e.g. ``"[x5,x2]=[x6,x1]=y1; [x5,x3]=y2"``."""
        table = parse_bracket_table(text)
        q = q or max(max(i, j) for i, j in table)
        p = p or max((k for coeffs in table.values() for k in coeffs), default=0)
        return cls.from_brackets(q, p, table)

    def a(self, i: int, j: int, k: int) -> Fraction:
        """Entry ``a[i][j][k]`` with 1-based indices."""
        return self.entries[i - 1][j - 1][k - 1]

    def bracket_vector(self, i: int, j: int) -> Tuple[Fraction, ...]:
        return self.entries[i - 1][j - 1]

    def slice(self, k: int) -> RatMatrix:
        """The ``q x q`` skew matrix of coefficients of ``y_k``."""
        if not 1 <= k <= self.p:
            raise IndexError(f"slice index {k} out of range 1..{self.p}")
        return RatMatrix(
            ([self.entries[i][j][k - 1] for j in range(self.q)] for i in range(self.q)), cols=self.q
        )

    def slices(self) -> list[RatMatrix]:
        return [self.slice(k) for k in range(1, self.p + 1)]

    @classmethod
    def from_slices(cls, slices: Sequence[RatMatrix]) -> StructureTensor:
        p = len(slices)
        q = slices[0].rows
        return cls.from_array(q, p, [[[slices[k][i, j] for k in range(p)] for j in range(q)] for i in range(q)])

    def pair_matrix(self) -> RatMatrix:
        """Rows indexed by pairs ``i < j`` (lexicographic), columns by ``k``."""
        return RatMatrix(
            (self.entries[i][j] for i, j in combinations(range(self.q), 2)), cols=self.p
        )

    def nonzero_brackets(self) -> dict[Tuple[int, int], Tuple[Fraction, ...]]:
        """``{(i, j): vector}`` over 1-based ``i < j`` with a nonzero bracket."""
        return {
            (i + 1, j + 1): self.entries[i][j]
            for i, j in combinations(range(self.q), 2)
            if any(self.entries[i][j])
        }

    def permuted(self, gen_perm: Sequence[int], center_perm: Sequence[int] | None = None) -> StructureTensor:
        """Relabel: new generator ``r`` is old generator ``gen_perm[r]`` (0-based), likewise centers."""
        cp = list(center_perm) if center_perm is not None else list(range(self.p))
        e = self.entries
        return StructureTensor.from_array(
            self.q,
            self.p,
            [[[e[gen_perm[i]][gen_perm[j]][cp[k]] for k in range(self.p)] for j in range(self.q)] for i in range(self.q)],
        )


@dataclass(frozen=True)
class CatalogMeta:
    n: int
    p: int
    q: int
    source_label: str
    rank_r: Optional[int] = None
    t_name: Optional[str] = None

    def __post_init__(self):
        if self.n != self.q + self.p:
            raise ValueError(f"catalog metadata n={self.n} != q + p = {self.q + self.p}")


def derived_dimension(t: StructureTensor) -> int:
    return rank(t.pair_matrix()) if t.p and t.q > 1 else 0


def check_skew(t: StructureTensor) -> None:
    e = t.entries
    for i in range(t.q):
        for k in range(t.p):
            if e[i][i][k] != 0:
                raise SkewViolation(i + 1, i + 1, k + 1)
        for j in range(i + 1, t.q):
            for k in range(t.p):
                if e[i][j][k] != -e[j][i][k]:
                    raise SkewViolation(i + 1, j + 1, k + 1)


@dataclass(frozen=True)
class TwoStepAlgebra:
    """A structure tensor that passed validation, plus optional labels.

    Construction validates: the tensor must be skew and its brackets must
    span a ``p``-dimensional space, i.e. the ``y_k`` form a basis of
    ``[N, N]``.  Full marginal rank is not required.
    """

    tensor: StructureTensor
    name: Optional[str] = None
    labels: Optional[Tuple[Tuple[str, ...], Tuple[str, ...]]] = None
    meta: Optional[CatalogMeta] = None
    presentation: Optional["RelationIdeal"] = field(default=None, compare=False)

    def __post_init__(self):
        t = self.tensor
        if t.q < 2 or t.p < 1:
            raise ValidationError(f"need q >= 2 and p >= 1, got q={t.q}, p={t.p}")
        check_skew(t)
        d = derived_dimension(t)
        if d != t.p:
            raise DerivedDimDeficit(d, t.p)
        if self.labels is not None:
            gens, cents = self.labels
            if len(gens) != t.q or len(cents) != t.p:
                raise ValidationError("label counts do not match (q, p)")
        if self.meta is not None and (self.meta.q, self.meta.p) != (t.q, t.p):
            raise ValidationError(
                f"metadata says (q, p) = ({self.meta.q}, {self.meta.p}) but the table has ({t.q}, {t.p})"
            )

    @property
    def q(self) -> int:
        return self.tensor.q

    @property
    def p(self) -> int:
        return self.tensor.p

    @property
    def n(self) -> int:
        return self.q + self.p

    @classmethod
    def from_text(cls, text: str, q: int | None = None, p: int | None = None, **kw) -> TwoStepAlgebra:
        return cls(StructureTensor.from_text(text, q, p), **kw)

    def generator_label(self, i: int) -> str:
        return self.labels[0][i - 1] if self.labels else f"x{i}"

    def center_label(self, k: int) -> str:
        return self.labels[1][k - 1] if self.labels else f"y{k}"

    def bracket_lines(self) -> list[str]:
        lines = []
        for (i, j), vec in self.tensor.nonzero_brackets().items():
            lines.append(
                f"[{self.generator_label(i)},{self.generator_label(j)}] = "
                + format_combination(vec, [self.center_label(k) for k in range(1, self.p + 1)])
            )
        return lines


def format_combination(vec: Sequence[Fraction], symbols: Sequence[str]) -> str:
    out = ""
    for c, s in zip(vec, symbols):
        if c == 0:
            continue
        mag = abs(c)
        body = s if mag == 1 else f"{mag}{s}" if mag.denominator == 1 else f"{mag}*{s}"
        if not out:
            out = ("-" if c < 0 else "") + body
        else:
            out += (" - " if c < 0 else " + ") + body
    return out or "0"


def validate(t: StructureTensor, **kw) -> TwoStepAlgebra:
    """Validate a raw tensor; raises :class:`SkewViolation` or :class:`DerivedDimDeficit`."""
    return TwoStepAlgebra(t, **kw)


def bracket(alg: TwoStepAlgebra, u: Sequence[Scalar], v: Sequence[Scalar]) -> Tuple[Fraction, ...]:
    """``[u, v]`` for generator-space coordinate vectors, as a center vector."""
    q, p = alg.q, alg.p
    if len(u) != q or len(v) != q:
        raise ValueError(f"expected vectors of length {q}, got {len(u)} and {len(v)}")
    u = [Fraction(x) for x in u]
    v = [Fraction(x) for x in v]
    out = [Fraction(0)] * p
    e = alg.tensor.entries
    for i in range(q):
        if u[i] == 0:
            continue
        for j in range(q):
            c = u[i] * v[j]
            if c == 0:
                continue
            cell = e[i][j]
            for k in range(p):
                if cell[k]:
                    out[k] += c * cell[k]
    return tuple(out)


@dataclass(frozen=True)
class BasisChange:
    """Change from basis ``(X, I)`` to ``(X', I')``.

    Old vectors in terms of new ones: ``x_i = sum_r S[r, i] x'_r + (center
    part given by P)`` and ``y_k = sum_c C[c, k] y'_c``.  The mixing block
    ``P`` (p x q) only moves generators by central elements, which leaves the
    bracket table unchanged; it is kept for completeness.
    """

    S: RatMatrix
    C: RatMatrix
    P: Optional[RatMatrix] = None

    def __post_init__(self):
        if not self.S.is_square() or not self.C.is_square():
            raise ValueError("S and C must be square")
        if rank(self.S) < self.S.rows:
            raise ZeroDivisionError("generator block S is singular")
        if rank(self.C) < self.C.rows:
            raise ZeroDivisionError("center block C is singular")
        if self.P is not None and self.P.shape != (self.C.rows, self.S.rows):
            raise ValueError(f"mixing block P must be {self.C.rows}x{self.S.rows}")

    @classmethod
    def identity(cls, q: int, p: int) -> BasisChange:
        return cls(RatMatrix.identity(q), RatMatrix.identity(p))

    @classmethod
    def from_new_basis(cls, generators: RatMatrix, centers: RatMatrix) -> BasisChange:
        """Columns of ``generators``/``centers`` are the new basis vectors in old coordinates."""
        return cls(inverse(generators), inverse(centers))

    def then(self, other: BasisChange) -> BasisChange:
        """Apply ``self`` first, then ``other``."""
        return BasisChange(other.S @ self.S, other.C @ self.C)

    def inverse(self) -> BasisChange:
        return BasisChange(inverse(self.S), inverse(self.C))


def apply_basis_change(t: StructureTensor, bc: BasisChange) -> StructureTensor:
    """Bracket table in the new basis.

    New slice ``k`` is ``S^-T (sum_m C[k, m] A_m) S^-1``.
    """
    if bc.S.rows != t.q or bc.C.rows != t.p:
        raise ValueError(f"basis change of size ({bc.S.rows}, {bc.C.rows}) for tensor ({t.q}, {t.p})")
    Sinv = inverse(bc.S)
    SinvT = Sinv.T
    old = t.slices()
    new = []
    for k in range(t.p):
        acc = RatMatrix.zeros(t.q, t.q)
        for m in range(t.p):
            c = bc.C[k, m]
            if c != 0:
                acc = acc + old[m] * c
        new.append(SinvT @ acc @ Sinv)
    return StructureTensor.from_slices(new) if new else StructureTensor.zeros(t.q, 0)


def coefficient_tensor(alg: TwoStepAlgebra) -> Tuple[Tuple[Tuple[Fraction, ...], ...], ...]:
    """Full ``n x n x n`` structure constants over the basis ``x_1..x_q, y_1..y_p``."""
    q, n = alg.q, alg.n
    zero = Fraction(0)
    e = alg.tensor.entries
    return tuple(
        tuple(
            tuple(e[i][j][k - q] if (i < q and j < q and k >= q) else zero for k in range(n))
            for j in range(n)
        )
        for i in range(n)
    )


def direct_sum(a: TwoStepAlgebra, b: TwoStepAlgebra, name: str | None = None) -> TwoStepAlgebra:
    """Block concatenation: generators of ``a`` then ``b``, centers likewise."""
    q, p = a.q + b.q, a.p + b.p
    arr = [[[Fraction(0)] * p for _ in range(q)] for _ in range(q)]
    for i in range(a.q):
        for j in range(a.q):
            for k in range(a.p):
                arr[i][j][k] = a.tensor.entries[i][j][k]
    for i in range(b.q):
        for j in range(b.q):
            for k in range(b.p):
                arr[a.q + i][a.q + j][a.p + k] = b.tensor.entries[i][j][k]
    if name is None and a.name and b.name:
        name = f"{a.name} + {b.name}"
    return TwoStepAlgebra(StructureTensor.from_array(q, p, arr), name=name)


def dimension_bound(n: int) -> int:
    """Largest center dimension ``p`` of an indecomposable ``n``-dimensional two-step algebra.

    Equivalent to ``floor(n + 1/2 - sqrt(2n + 1/4))``: the largest ``p`` with
    ``n <= q(q+1)/2`` where ``q = n - p``.
    """
    if n < 3:
        raise ValueError(f"dimension must be at least 3, got {n}")
    # smallest q with q(q+1)/2 >= n
    q = (isqrt(8 * n + 1) - 1) // 2
    if q * (q + 1) // 2 < n:
        q += 1
    return n - q
