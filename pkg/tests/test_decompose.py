import random
from itertools import permutations

import pytest
from oracles import monomial_change, random_basis_change, random_invertible, sympy_rank

from twostep.algebra import BasisChange, TwoStepAlgebra, apply_basis_change, direct_sum
from twostep.catalog import catalog, get
from twostep.decompose import (
    Status,
    decide,
    hypergraph_witness,
    is_block_diagonal,
    marginal_rank,
    pencil_analyze,
    run_oracle,
    split_from_subspace,
    trivial_split,
)
from twostep.errors import PreconditionError
from twostep.linalg import RatMatrix

HH = TwoStepAlgebra.from_text("[x1,x2]=y1; [x3,x4]=y2", 4, 2)


def _scramble(alg, rng):
    return TwoStepAlgebra(apply_basis_change(alg.tensor, random_basis_change(alg.q, alg.p, rng)))


def test_hypergraph_witness_on_direct_sum():
    w = hypergraph_witness(HH)
    assert w is not None and w.verify(HH.tensor)
    assert w.describe() == "{x1,x2|y1}"
    v = decide(HH)
    assert v.status is Status.DECOMPOSABLE and v.method == "hypergraph"


def test_is_block_diagonal():
    assert is_block_diagonal(HH.tensor, frozenset({1, 2}), frozenset({1}))
    assert not is_block_diagonal(HH.tensor, frozenset({1, 3}), frozenset({1}))


def test_pencil_of_h_plus_h():
    rep = pencil_analyze(HH)
    assert rep.generic_rank == 4 and rep.rank_a == rep.rank_b == 2
    assert rep.min_pair_sum == 4 and not rep.criterion_holds
    assert {d.label() for d in rep.drop_points} == {"t = 0", "[0:1] (B alone)"}


def test_trivial_split_example():
    alg = TwoStepAlgebra.from_text("[x1,x2]=y1; [x1,x3]=y1", 3, 1)
    assert marginal_rank(alg) == 2
    split = trivial_split(alg)
    assert split.abelian_count == 1 and split.summand.q == 2
    assert split.witness.verify(alg.tensor)
    v = decide(alg)
    assert v.status is Status.DECOMPOSABLE and v.method == "marginal-rank"


def test_no_trivial_split_for_catalog_entry():
    alg = get("N^{8,2}_4").algebra
    assert marginal_rank(alg) == alg.q
    assert trivial_split(alg) is None


def test_marginal_rank_invariant():
    rng = random.Random(31)
    alg = TwoStepAlgebra.from_text("[x1,x2]=y1; [x1,x3]=y1; [x2,x4]=y2", 5, 2)
    for _ in range(10):
        assert marginal_rank(_scramble(alg, rng)) == marginal_rank(alg) == 4


@pytest.mark.parametrize("left,right", [("N^{8,2}_1", "N^{8,2}_3"), ("N^{9,2}_1", "N^{8,3}_4")])
def test_direct_sums_of_catalog_entries_are_decomposable(left, right):
    s = direct_sum(get(left).algebra, get(right).algebra)
    v = decide(s)
    assert v.status is Status.DECOMPOSABLE
    assert v.witness.verify(s.tensor)


def test_oracle_recovers_scrambled_direct_sum():
    rng = random.Random(32)
    for _ in range(3):
        alg = _scramble(HH, rng)
        rep = run_oracle(alg, budget=200, seed=1)
        assert rep.witness is not None and rep.witness.verify(alg.tensor)
        assert rep.candidates_tried <= rep.budget


def test_oracle_respects_budget_on_indecomposable():
    rng = random.Random(33)
    alg = _scramble(get("N^{8,2}_2").algebra, rng)
    rep = run_oracle(alg, budget=30, seed=0)
    assert rep.witness is None and rep.candidates_tried == 30


def test_split_from_subspace_rejects_bad_candidate():
    assert split_from_subspace(get("N^{8,2}_1").algebra, [[1, 0, 0, 0, 0, 0]]) is None


def _pair_ranks(A, B, C):
    a = A * C[0][0] + B * C[0][1]
    b = A * C[1][0] + B * C[1][1]
    return sympy_rank(a) + sympy_rank(b)


def test_min_pair_sum_against_sampling():
    """No change of center basis beats the reported bound; drop points attain it."""
    rng = random.Random(34)
    for entry in [e for e in catalog() if e.p == 2]:
        alg = entry.algebra
        rep = pencil_analyze(alg)
        A, B = alg.tensor.slices()
        for _ in range(15):
            C = random_invertible(2, rng)
            assert _pair_ranks(A, B, [C.row(0), C.row(1)]) >= rep.min_pair_sum
        # rebuild the bound from explicit rational points
        pts = [sympy_rank(A + B * d.root) for d in rep.drop_points if d.root is not None]
        if any(d.modulus is None for d in rep.drop_points):
            pts.append(sympy_rank(B))
        if len(pts) == len(rep.drop_points):
            ranks = sorted(pts + [rep.generic_rank] * 2)
            assert ranks[0] + ranks[1] == rep.min_pair_sum


def test_verdict_stable_under_permutation():
    rng = random.Random(35)
    for name in ["N^{8,2}_1", "N^{9,2}_3"]:
        alg = get(name).algebra
        base = decide(alg)
        for _ in range(5):
            moved = TwoStepAlgebra(apply_basis_change(alg.tensor, monomial_change(alg.q, alg.p, rng)))
            v = decide(moved)
            assert v.status is base.status
            assert v.certificate.min_pair_sum == base.certificate.min_pair_sum


def test_indecomposable_catalog_p2():
    for entry in catalog():
        if entry.p == 2:
            v = decide(entry.algebra)
            assert v.status is Status.INDECOMPOSABLE, entry.id
            assert v.certificate.criterion_holds


def test_preconditions():
    with pytest.raises(PreconditionError):
        pencil_analyze(get("N^{8,3}_1").algebra)
    with pytest.raises(PreconditionError):
        pencil_analyze(TwoStepAlgebra.from_text("[x1,x2]=y1; [x1,x3]=y2", 4, 2))


def test_inconclusive_for_p3():
    v = decide(get("N^{8,3}_1").algebra)
    assert v.status is Status.INCONCLUSIVE
    assert v.witness is None
    assert v.notes[-1] == "no criterion for p = 3 beyond the checks above"


def test_heisenberg_is_inconclusive():
    v = decide(TwoStepAlgebra.from_text("[x1,x2]=y1", 2, 1))
    assert v.status is Status.INCONCLUSIVE


def test_verdict_invariants_enforced():
    from twostep.decompose import DecomposabilityVerdict

    with pytest.raises(ValueError):
        DecomposabilityVerdict(Status.DECOMPOSABLE)
    with pytest.raises(ValueError):
        DecomposabilityVerdict(Status.INDECOMPOSABLE)


def test_witness_basis_change_is_explicit():
    alg = TwoStepAlgebra.from_text("[x1,x2]=y1; [x1,x3]=y1; [x2,x4]=y2; [x4,x3]=y2", 4, 2)
    G = RatMatrix.from_columns([[1, 0, 0, 0], [0, 1, 1, 0], [0, 1, -1, 0], [0, 0, 0, 1]])
    w = run_oracle(alg, budget=50).witness
    assert w is not None and w.verify(alg.tensor)
    # the known rebasing G^{-1} also block-diagonalizes it
    back = BasisChange.from_new_basis(G, RatMatrix.identity(2)).inverse()
    assert is_block_diagonal(apply_basis_change(alg.tensor, back), frozenset({1, 2}), frozenset({1}))


def test_permutation_of_generators_keeps_hypergraph_split():
    for perm in list(permutations(range(4)))[:8]:
        rows = [[1 if perm[i] == j else 0 for j in range(4)] for i in range(4)]
        bc = BasisChange(RatMatrix(rows), RatMatrix.identity(2))
        moved = TwoStepAlgebra(apply_basis_change(HH.tensor, bc))
        assert decide(moved).status is Status.DECOMPOSABLE
