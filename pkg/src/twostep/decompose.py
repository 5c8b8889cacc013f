"""Decomposability of two-step nilpotent Lie algebras.

``decide`` runs three exact tests in order:

1. the generating hypergraph is disconnected in the given basis, which
   exhibits a direct sum outright;
2. the marginal rank (rank of ``[A_1 | ... | A_p]``) is below ``q``, which
   splits off abelian generators;
3. for ``p = 2``, the pencil criterion: if for every pair of distinct points
   ``[a:b] != [c:d]`` of the projective line ``rank(aA + bB) + rank(cA + dB) > q``,
   no basis puts the tensor in block diagonal form, so the algebra is
   indecomposable.

Anything else is reported as inconclusive.  :func:`brute_force_oracle` is a
separate budgeted search for an explicit decomposing basis; it never feeds
into ``decide``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from itertools import combinations, product
from typing import Iterator, Optional, Sequence, Tuple, Union

from .algebra import (
    BasisChange,
    StructureTensor,
    TwoStepAlgebra,
    apply_basis_change,
    bracket,
)
from .errors import PreconditionError
from .invariants import build_hypergraph, components
from .linalg import (
    QuotientRingMatrix,
    RatMatrix,
    RatPoly,
    det_poly,
    inverse,
    nullspace,
    pencil_drop_polynomial,
    pencil_generic_rank,
    poly_xgcd,
    rank,
    rational_roots,
    row_space_basis,
    rref,
    squarefree_decomposition,
    squarefree_part,
)


def is_block_diagonal(t: StructureTensor, S: frozenset, T: frozenset) -> bool:
    """True when every nonzero entry lies in ``S x S x T`` or ``S' x S' x T'`` (1-based)."""
    for i in range(t.q):
        for j in range(t.q):
            for k in range(t.p):
                if t.entries[i][j][k] == 0:
                    continue
                a, b, c = (i + 1) in S, (j + 1) in S, (k + 1) in T
                if not (a == b == c):
                    return False
    return True


@dataclass(frozen=True)
class BlockDiagonalWitness:
    """After ``basis_change``, the tensor is block diagonal with blocks ``(S, T)`` and their complements."""

    S_subset: frozenset
    T_subset: frozenset
    basis_change: BasisChange

    def transformed(self, t: StructureTensor) -> StructureTensor:
        return apply_basis_change(t, self.basis_change)

    def verify(self, t: StructureTensor) -> bool:
        return 0 < len(self.S_subset) < t.q and is_block_diagonal(
            self.transformed(t), self.S_subset, self.T_subset
        )

    def describe(self) -> str:
        xs = ",".join(f"x{i}" for i in sorted(self.S_subset))
        ys = ",".join(f"y{k}" for k in sorted(self.T_subset))
        return "{" + xs + "|" + ys + "}"


def _identity_witness(alg: TwoStepAlgebra, S, T) -> BlockDiagonalWitness:
    return BlockDiagonalWitness(frozenset(S), frozenset(T), BasisChange.identity(alg.q, alg.p))


def hypergraph_witness(alg: TwoStepAlgebra) -> Optional[BlockDiagonalWitness]:
    """Block split read off a disconnected hypergraph in the current basis.

    ``S``/``T`` is the smallest component; ``None`` says nothing about
    decomposability, since connectivity depends on the basis.
    """
    comps = components(build_hypergraph(alg))
    if len(comps) < 2:
        return None
    smallest = min(comps, key=lambda c: (len(c.generators) + len(c.centers), c.sort_key))
    return _identity_witness(alg, smallest.generators, smallest.centers)


def marginal_matrix(alg: TwoStepAlgebra) -> RatMatrix:
    slices = alg.tensor.slices()
    return slices[0].hstack(*slices[1:])


def marginal_rank(alg: TwoStepAlgebra) -> int:
    """Rank of the ``q x pq`` concatenation of the center slices (basis independent)."""
    return rank(marginal_matrix(alg))


@dataclass(frozen=True)
class TrivialSplit:
    summand: TwoStepAlgebra
    abelian_count: int
    witness: BlockDiagonalWitness


def trivial_split(alg: TwoStepAlgebra) -> Optional[TrivialSplit]:
    """Split off ``q - s`` central generators when the marginal rank ``s`` is below ``q``.

    ``Q`` row-reduces the marginal matrix so only its first ``s`` rows are
    nonzero; the slices ``Q A_k Q^T`` then vanish outside the leading
    ``s x s`` block.
    """
    q = alg.q
    M = marginal_matrix(alg)
    s = rank(M)
    if s == q:
        return None
    R, _ = rref(M.hstack(RatMatrix.identity(q)))
    Q = R.submatrix(range(q), range(M.cols, M.cols + q))
    bc = BasisChange(inverse(Q).T, RatMatrix.identity(alg.p))
    new = apply_basis_change(alg.tensor, bc)
    e = new.entries
    summand_t = StructureTensor(s, alg.p, tuple(tuple(e[i][j] for j in range(s)) for i in range(s)))
    summand = TwoStepAlgebra(summand_t, name=f"{alg.name} (core)" if alg.name else None)
    witness = BlockDiagonalWitness(frozenset(range(1, s + 1)), frozenset(range(1, alg.p + 1)), bc)
    return TrivialSplit(summand, q - s, witness)


@dataclass(frozen=True)
class DropPoint:
    """Points of the pencil where the rank falls below the generic rank.

    ``modulus`` is the polynomial whose roots are the affine parameters
    ``t`` of ``A + tB`` (all roots share the rank); ``None`` marks the
    point at infinity, i.e. ``B`` alone.
    """

    modulus: Optional[RatPoly]
    rank: int

    @property
    def point_count(self) -> int:
        return 1 if self.modulus is None else self.modulus.degree

    @property
    def root(self) -> Optional[Fraction]:
        if self.modulus is not None and self.modulus.degree == 1:
            return -self.modulus.coeffs[0] / self.modulus.coeffs[1]
        return None

    def label(self) -> str:
        if self.modulus is None:
            return "[0:1] (B alone)"
        if self.root is not None:
            return f"t = {self.root}"
        return f"roots of {self.modulus}"


@dataclass(frozen=True)
class PencilReport:
    q: int
    generic_rank: int
    rank_a: int
    rank_b: int
    drop_polynomial: RatPoly
    drop_points: Tuple[DropPoint, ...]
    min_pair_sum: int

    @property
    def criterion_holds(self) -> bool:
        return self.min_pair_sum > self.q

    def summary(self) -> str:
        pts = ", ".join(f"{d.label()} -> {d.rank}" for d in self.drop_points) or "none"
        return (
            f"pencil A + tB: generic rank {self.generic_rank}, rank(A) = {self.rank_a}, "
            f"rank(B) = {self.rank_b}; drops: {pts}; min pair sum {self.min_pair_sum}"
        )


def pencil_analyze(alg: TwoStepAlgebra) -> PencilReport:
    """Exact rank profile of the slice pencil of a ``p = 2`` algebra with full marginal rank."""
    if alg.p != 2:
        raise PreconditionError(f"pencil analysis needs p = 2, got p = {alg.p}")
    if marginal_rank(alg) != alg.q:
        raise PreconditionError("pencil analysis needs marginal rank q")
    A, B = alg.tensor.slices()
    r = pencil_generic_rank(A, B)
    rank_a, rank_b = rank(A), rank(B)
    drop = pencil_drop_polynomial(A, B, r)
    points: list[DropPoint] = []
    rest = squarefree_part(drop)
    for root in rational_roots(rest):
        lin = RatPoly.linear_root(root)
        points.append(DropPoint(lin, rank(A + B * root)))
        rest = rest // lin
    if rest.degree > 0:
        for m, rk in QuotientRingMatrix.pencil(A, B, rest).rank_pieces():
            points.append(DropPoint(m, rk))
    if rank_b < r:
        points.append(DropPoint(None, rank_b))
    ranks = sorted([r, r] + [d.rank for d in points for _ in range(d.point_count)])
    return PencilReport(
        q=alg.q,
        generic_rank=r,
        rank_a=rank_a,
        rank_b=rank_b,
        drop_polynomial=drop,
        drop_points=tuple(points),
        min_pair_sum=ranks[0] + ranks[1],
    )


@dataclass(frozen=True)
class MarginalRankCertificate:
    marginal_rank: int
    q: int


class Status(str, Enum):
    DECOMPOSABLE = "Decomposable"
    INDECOMPOSABLE = "Indecomposable"
    INCONCLUSIVE = "Inconclusive"


@dataclass(frozen=True)
class DecomposabilityVerdict:
    status: Status
    witness: Optional[BlockDiagonalWitness] = None
    certificate: Optional[Union[PencilReport, MarginalRankCertificate]] = None
    notes: Tuple[str, ...] = ()
    method: str = ""
    split: Optional[TrivialSplit] = field(default=None, compare=False)

    def __post_init__(self):
        if self.status is Status.DECOMPOSABLE and self.witness is None:
            raise ValueError("a Decomposable verdict needs a witness")
        if self.status is Status.INDECOMPOSABLE and self.certificate is None:
            raise ValueError("an Indecomposable verdict needs a certificate")


def decide(alg: TwoStepAlgebra) -> DecomposabilityVerdict:
    notes = []
    w = hypergraph_witness(alg)
    if w is not None:
        comps = components(build_hypergraph(alg))
        return DecomposabilityVerdict(
            Status.DECOMPOSABLE,
            witness=w,
            notes=("hypergraph components " + " / ".join(str(c) for c in comps),),
            method="hypergraph",
        )
    notes.append("hypergraph connected in the given basis (basis-dependent; proves nothing)")
    mr = marginal_rank(alg)
    cert = MarginalRankCertificate(mr, alg.q)
    if mr < alg.q:
        split = trivial_split(alg)
        return DecomposabilityVerdict(
            Status.DECOMPOSABLE,
            witness=split.witness,
            certificate=cert,
            notes=tuple(notes)
            + (f"marginal rank {mr} < q = {alg.q}: {alg.q - mr} abelian generator(s) split off",),
            method="marginal-rank",
            split=split,
        )
    notes.append(f"marginal rank {mr} = q")
    if alg.p == 2:
        report = pencil_analyze(alg)
        if report.criterion_holds:
            return DecomposabilityVerdict(
                Status.INDECOMPOSABLE,
                certificate=report,
                notes=tuple(notes) + (f"pencil min-pair-sum {report.min_pair_sum} > q={alg.q}",),
                method="pencil",
            )
        notes.append(f"pencil min-pair-sum {report.min_pair_sum} <= q={alg.q}: criterion does not apply")
        return DecomposabilityVerdict(Status.INCONCLUSIVE, certificate=report, notes=tuple(notes), method="pencil")
    notes.append(f"no criterion for p = {alg.p} beyond the checks above")
    return DecomposabilityVerdict(Status.INCONCLUSIVE, notes=tuple(notes), method="exhausted")


# ---------------------------------------------------------------------------
# Oracle
# ---------------------------------------------------------------------------


def _centralizer(alg: TwoStepAlgebra, X1: Sequence[Sequence[Fraction]]) -> list[Tuple[Fraction, ...]]:
    """Basis of ``{v : [u, v] = 0 for all u in X1}``."""
    e = alg.tensor.entries
    q, p = alg.q, alg.p
    eqs = []
    for u in X1:
        for k in range(p):
            eqs.append([sum((u[i] * e[i][j][k] for i in range(q)), Fraction(0)) for j in range(q)])
    return [v.column(0) for v in nullspace(RatMatrix(eqs, cols=q))]


def _bracket_span(alg: TwoStepAlgebra, vecs) -> list[Tuple[Fraction, ...]]:
    images = [bracket(alg, u, v) for u, v in combinations(vecs, 2)]
    return row_space_basis([w for w in images if any(w)], alg.p)


def split_from_subspace(alg: TwoStepAlgebra, X1: Sequence[Sequence]) -> Optional[BlockDiagonalWitness]:
    """Try to complete ``X1`` to a direct decomposition ``X1 + X2``.

    ``X2`` must lie in the centralizer of ``X1``; any complement of
    ``X1`` inside it gives the same ``[X2, X2]``.  Success needs
    ``[X1, X1]`` and ``[X2, X2]`` to be independent.  Returned witnesses
    are verified exactly.
    """
    q, p = alg.q, alg.p
    X1 = row_space_basis(X1, q)
    s = len(X1)
    if not 0 < s < q:
        return None
    chosen = list(X1)
    X2 = []
    for w in _centralizer(alg, X1):
        if rank(RatMatrix(chosen + [w], cols=q)) > len(chosen):
            chosen.append(w)
            X2.append(w)
    if len(chosen) < q:
        return None
    Z1 = _bracket_span(alg, X1)
    Z2 = _bracket_span(alg, X2)
    if len(Z1) + len(Z2) != p or (Z1 and Z2 and rank(RatMatrix(Z1 + Z2, cols=p)) != p):
        return None
    bc = BasisChange.from_new_basis(RatMatrix.from_columns(X1 + X2), RatMatrix.from_columns(Z1 + Z2))
    w = BlockDiagonalWitness(frozenset(range(1, s + 1)), frozenset(range(1, len(Z1) + 1)), bc)
    return w if w.verify(alg.tensor) else None


def centroid_basis(alg: TwoStepAlgebra) -> list[Tuple[RatMatrix, RatMatrix]]:
    """Basis of ``{(E, F) : [Eu, v] = F[u, v]}``; ``[u, Ev] = F[u, v]`` follows by skewness.

    Idempotents of this algebra are exactly the direct decompositions.
    """
    q, p = alg.q, alg.p
    e = alg.tensor.entries
    nvar = q * q + p * p
    rows = []
    for i in range(q):
        for l in range(q):
            for k in range(p):
                row = [Fraction(0)] * nvar
                for m in range(q):
                    row[m * q + i] += e[m][l][k]
                for c in range(p):
                    row[q * q + k * p + c] -= e[i][l][c]
                if any(row):
                    rows.append(row)
    out = []
    for v in nullspace(RatMatrix(rows, cols=nvar)):
        x = v.column(0)
        E = RatMatrix([[x[m * q + i] for i in range(q)] for m in range(q)], cols=q)
        F = RatMatrix([[x[q * q + k * p + c] for c in range(p)] for k in range(p)], cols=p)
        out.append((E, F))
    return out


def _poly_of_matrix(f: RatPoly, E: RatMatrix) -> RatMatrix:
    n = E.rows
    acc = RatMatrix.zeros(n, n)
    for c in reversed(f.coeffs):
        acc = acc @ E + RatMatrix.identity(n) * c
    return acc


def _idempotent_from(E: RatMatrix) -> Optional[RatMatrix]:
    """Nontrivial idempotent polynomial in ``E`` from a coprime split of its characteristic polynomial."""
    n = E.rows
    chi = det_poly(-E, RatMatrix.identity(n))
    factor = None
    for root in rational_roots(chi):
        lin = RatPoly.linear_root(root)
        f = RatPoly([1])
        rest = chi
        while (rest % lin).is_zero():
            rest = rest // lin
            f = f * lin
        if rest.degree > 0:
            factor = f
            break
    if factor is None:
        parts = squarefree_decomposition(chi)
        if len(parts) < 2:
            return None
        g, i = parts[0]
        factor = g**i
    other = chi // factor
    _, _, v = poly_xgcd(factor, other)
    # v*other = 1 mod factor and 0 mod other
    return _poly_of_matrix(v * other, E)


@dataclass(frozen=True)
class OracleReport:
    witness: Optional[BlockDiagonalWitness]
    candidates_tried: int
    budget: int
    seed: int
    source: Optional[str] = None


def _small_vectors(q: int, height: int) -> Iterator[Tuple[int, ...]]:
    for v in product(range(-height, height + 1), repeat=q):
        nz = next((x for x in v if x), 0)
        if nz > 0:
            yield v


def run_oracle(alg: TwoStepAlgebra, budget: int = 400, seed: int = 0, height: int = 3) -> OracleReport:
    """Budgeted search for a decomposing basis.

    Candidate subspaces ``X1`` come from three sources, tried in this
    order: images of idempotents built from random elements of the
    centroid, spans of small-integer vectors (entries in ``{-1, 0, 1}``),
    and random rational subspaces with entries of height ``height``.
    ``budget`` caps the total number of candidates; the first verified
    witness wins, so a fixed seed gives a fixed answer.
    """
    rng = random.Random(seed)
    q = alg.q
    tried = 0

    def done(w, source):
        return OracleReport(w, tried, budget, seed, source)

    cb = centroid_basis(alg)
    if len(cb) > 1:
        for _ in range(max(1, budget // 4)):
            if tried >= budget:
                break
            tried += 1
            E = RatMatrix.zeros(q, q)
            for Eb, _ in cb:
                E = E + Eb * rng.randint(-height, height)
            P = _idempotent_from(E)
            if P is None:
                continue
            cols = [P.column(j) for j in range(q)]
            w = split_from_subspace(alg, [c for c in cols if any(c)])
            if w is not None:
                return done(w, "centroid")
    for s in range(1, q // 2 + 1):
        for combo in combinations(_small_vectors(q, 1), s):
            if tried >= budget:
                break
            tried += 1
            w = split_from_subspace(alg, combo)
            if w is not None:
                return done(w, "small-integer")
    while tried < budget:
        tried += 1
        s = rng.randint(1, q - 1)
        X1 = [
            [Fraction(rng.randint(-height, height), rng.randint(1, height)) for _ in range(q)]
            for _ in range(s)
        ]
        w = split_from_subspace(alg, X1)
        if w is not None:
            return done(w, "random")
    return done(None, None)


def brute_force_oracle(
    alg: TwoStepAlgebra, budget: int = 400, seed: int = 0
) -> Optional[BlockDiagonalWitness]:
    return run_oracle(alg, budget=budget, seed=seed).witness
