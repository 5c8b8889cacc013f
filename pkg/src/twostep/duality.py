"""Generator-relation presentations and Gauger duality.

The free two-step nilpotent algebra on ``q`` generators has center ``V``
spanned by the pair symbols ``(u_i, u_j)``, ``i < j``, in lexicographic
order.  Every ``q``-generator two-step algebra is ``N^q / I`` for a proper
subspace ``I`` of ``V``, and its dual is ``N^q / I^perp`` with respect to the
standard inner product in the pair basis.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Sequence, Tuple

from .algebra import StructureTensor, TwoStepAlgebra
from .errors import ParseError, PreconditionError, TwoStepError
from .linalg import RatMatrix, Scalar, nullspace, rref
from .notation import parse_pair_combination


@dataclass(frozen=True)
class PairBasis:
    q: int

    def __post_init__(self):
        if self.q < 2:
            raise ValueError(f"need q >= 2, got {self.q}")

    @cached_property
    def pairs(self) -> Tuple[Tuple[int, int], ...]:
        """1-based pairs ``(i, j)``, ``i < j``, lexicographic."""
        return tuple((i + 1, j + 1) for i, j in combinations(range(self.q), 2))

    @cached_property
    def _index(self) -> dict:
        return {pair: n for n, pair in enumerate(self.pairs)}

    def __len__(self) -> int:
        return self.q * (self.q - 1) // 2

    def index(self, i: int, j: int) -> Tuple[int, int]:
        """Coordinate of ``[u_i, u_j]`` and its sign (``-1`` when ``i > j``)."""
        if i == j:
            raise ValueError(f"[u{i},u{j}] is zero")
        if i > j:
            return self._index[(j, i)], -1
        return self._index[(i, j)], 1

    def symbol(self, n: int) -> str:
        i, j = self.pairs[n]
        return f"[u{i},u{j}]"


@dataclass(frozen=True)
class RelationIdeal:
    """Subspace of ``V`` stored in reduced row echelon form.

    Because the form is canonical, ``==`` is equality of subspaces.  The zero
    subspace and ``V`` itself are representable (``V`` arises as the
    complement of zero), but :func:`quotient` only accepts proper ideals.
    """

    q: int
    span: RatMatrix

    def __post_init__(self):
        dimV = self.q * (self.q - 1) // 2
        if self.span.cols != dimV:
            raise ValueError(f"span has {self.span.cols} columns, expected {dimV}")
        R, _ = rref(self.span)
        if R != self.span:
            object.__setattr__(self, "span", R)

    @classmethod
    def from_vectors(cls, q: int, vectors: Sequence[Sequence[Scalar]]) -> RelationIdeal:
        dimV = q * (q - 1) // 2
        return cls(q, RatMatrix(vectors, cols=dimV))

    @classmethod
    def zero(cls, q: int) -> RelationIdeal:
        return cls(q, RatMatrix.zeros(0, q * (q - 1) // 2))

    @property
    def basis(self) -> PairBasis:
        return PairBasis(self.q)

    @property
    def dim(self) -> int:
        return self.span.rows

    @property
    def ambient_dim(self) -> int:
        return self.q * (self.q - 1) // 2

    @property
    def is_proper(self) -> bool:
        return self.dim < self.ambient_dim

    @property
    def pivots(self) -> Tuple[int, ...]:
        return rref(self.span)[1]

    def vectors(self) -> list[Tuple[Fraction, ...]]:
        return [self.span.row(r) for r in range(self.dim)]

    def to_text(self) -> str:
        pb = self.basis
        rows = []
        for vec in self.vectors():
            terms = ""
            for n, c in enumerate(vec):
                if c == 0:
                    continue
                mag = abs(c)
                body = pb.symbol(n) if mag == 1 else f"{mag}{pb.symbol(n)}"
                if not terms:
                    terms = ("-" if c < 0 else "") + body
                else:
                    terms += (" - " if c < 0 else " + ") + body
            rows.append(terms)
        return "; ".join(rows)


def free_algebra(q: int) -> TwoStepAlgebra:
    """``N^q``: center basis = the pair symbols in lexicographic order."""
    if q < 2:
        raise ValueError(f"free two-step algebra needs q >= 2, got {q}")
    pb = PairBasis(q)
    brackets = {pair: {n + 1: 1} for n, pair in enumerate(pb.pairs)}
    t = StructureTensor.from_brackets(q, len(pb), brackets)
    return TwoStepAlgebra(t, name=f"N^{q}", presentation=RelationIdeal.zero(q))


def parse_relation(q: int, expr: str | Sequence[str]) -> RelationIdeal:
    """Parse ``"[u1,u2] + [u5,u6]; [u3,u4] + [u5,u6]"`` into a proper ideal.

    ``expr`` may also be a list of single-vector strings.
    """
    pb = PairBasis(q)
    chunks = [s.strip() for s in re.split(r"[;\n]", expr)] if isinstance(expr, str) else list(expr)
    chunks = [c for c in chunks if c]
    if not chunks:
        raise ParseError("no relations given")
    vectors = []
    for chunk in chunks:
        vec = [Fraction(0)] * len(pb)
        for coeff, i, j in parse_pair_combination(chunk):
            if not (1 <= i <= q and 1 <= j <= q):
                raise ParseError(f"[u{i},u{j}] out of range for q={q}")
            if i == j:
                raise ParseError(f"[u{i},u{j}] is identically zero")
            n, sign = pb.index(i, j)
            vec[n] += sign * coeff
        if not any(vec):
            raise ParseError(f"relation {chunk!r} is the zero vector")
        vectors.append(vec)
    ideal = RelationIdeal.from_vectors(q, vectors)
    if not ideal.is_proper:
        raise TwoStepError(f"relations span all of V (dimension {len(pb)}); the ideal must be proper")
    return ideal


def orthogonal_complement(ideal: RelationIdeal) -> RelationIdeal:
    """Complement for the standard dot product in the pair basis."""
    kernel = nullspace(ideal.span)
    return RelationIdeal.from_vectors(ideal.q, [v.column(0) for v in kernel])


def quotient(q: int, ideal: RelationIdeal, name: str | None = None) -> TwoStepAlgebra:
    """``N^q / I``.

    The center basis is the images of the pair symbols in the non-pivot
    columns of the ideal's reduced row echelon form, in lexicographic order.
    A pivot symbol reduces to minus the rest of its echelon row.
    """
    if ideal.q != q:
        raise ValueError(f"ideal lives in N^{ideal.q}, not N^{q}")
    if not ideal.is_proper:
        raise TwoStepError("cannot take the quotient by all of V")
    pb = PairBasis(q)
    R = ideal.span
    pivots = ideal.pivots
    free = [c for c in range(len(pb)) if c not in pivots]
    col_of = {c: k for k, c in enumerate(free)}
    row_of = {c: r for r, c in enumerate(pivots)}
    brackets = {}
    for n, pair in enumerate(pb.pairs):
        if n in col_of:
            brackets[pair] = {col_of[n] + 1: 1}
        else:
            r = row_of[n]
            brackets[pair] = {col_of[f] + 1: -R[r, f] for f in free if R[r, f] != 0}
    t = StructureTensor.from_brackets(q, len(free), brackets)
    return TwoStepAlgebra(t, name=name, presentation=ideal)


def dual(alg: TwoStepAlgebra, name: str | None = None) -> TwoStepAlgebra:
    """``N^perp = N^q / I^perp`` for an algebra that carries its presentation ``I``."""
    if alg.presentation is None:
        raise PreconditionError("duality needs the algebra's defining relation ideal")
    ideal = alg.presentation
    return quotient(ideal.q, orthogonal_complement(ideal), name=name)
