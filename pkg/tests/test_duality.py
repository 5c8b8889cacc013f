import random

import pytest
import sympy

from twostep.duality import (
    PairBasis,
    RelationIdeal,
    dual,
    free_algebra,
    orthogonal_complement,
    parse_relation,
    quotient,
)
from twostep.errors import ParseError, PreconditionError, TwoStepError
from twostep.invariants import fingerprint


def test_pair_basis():
    pb = PairBasis(4)
    assert pb.pairs == ((1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4))
    assert pb.index(2, 1) == (0, -1)
    assert len(pb) == 6


@pytest.mark.parametrize("q,p", [(2, 1), (4, 6), (6, 15)])
def test_free_algebra(q, p):
    f = free_algebra(q)
    assert f.p == p and f.n == q * (q + 1) // 2
    with pytest.raises(ValueError):
        free_algebra(1)


def test_parse_relation_examples():
    i6 = parse_relation(6, "[u1,u2]; [u3,u4]")
    pb = PairBasis(6)
    assert i6.dim == 2
    support = {pb.pairs[c] for v in i6.vectors() for c, x in enumerate(v) if x}
    assert support == {(1, 2), (3, 4)}
    flipped = parse_relation(3, ["[u2,u1]"])
    assert flipped.vectors()[0][0] == 1  # RREF rescales the raw -1
    assert parse_relation(4, "[u1,u2] + [u3,u4]").vectors() == [(1, 0, 0, 0, 0, 1)]


@pytest.mark.parametrize(
    "q,expr,exc",
    [
        (2, "", ParseError),
        (2, "[u1,u2]", TwoStepError),
        (3, "[u1,u4]", ParseError),
        (3, "[u1,u1]", ParseError),
        (3, "[u1,u2] - [u1,u2]", ParseError),
        (3, "[u1,u2] + x", ParseError),
    ],
)
def test_parse_relation_errors(q, expr, exc):
    with pytest.raises(exc):
        parse_relation(q, expr)


def test_i6_perp_and_quotient():
    i6 = parse_relation(6, "[u1,u2]; [u3,u4]")
    perp = orthogonal_complement(i6)
    assert perp.dim == 13
    alg = quotient(6, perp)
    assert alg.bracket_lines() == ["[x1,x2] = y1", "[x3,x4] = y2"]


def test_complement_of_zero_is_everything():
    z = RelationIdeal.zero(4)
    full = orthogonal_complement(z)
    assert full.dim == 6 and not full.is_proper
    with pytest.raises(TwoStepError):
        quotient(4, full)


def test_quotient_of_zero_is_free():
    assert quotient(4, RelationIdeal.zero(4)).tensor == free_algebra(4).tensor


def _random_ideal(rng, q):
    half = q * (q - 1) // 2
    d = rng.randint(0, half - 1)
    while True:
        rows = [[rng.randint(-2, 2) for _ in range(half)] for _ in range(d)]
        ideal = RelationIdeal.from_vectors(q, rows)
        if ideal.is_proper:
            return ideal


def test_quotient_dimension_and_involution():
    rng = random.Random(11)
    for _ in range(100):
        q = rng.randint(3, 6)
        ideal = _random_ideal(rng, q)
        half = q * (q - 1) // 2
        alg = quotient(q, ideal)
        assert alg.n == q + half - ideal.dim
        assert orthogonal_complement(orthogonal_complement(ideal)) == ideal


def test_quotient_brackets_against_membership_oracle():
    """Each bracket [x_i,x_j] = sum c_k y_k must satisfy e_ij - sum c_k e_{f_k} in I (checked by sympy rank)."""
    rng = random.Random(12)
    for _ in range(40):
        q = rng.randint(3, 5)
        ideal = _random_ideal(rng, q)
        pb = PairBasis(q)
        half = len(pb)
        alg = quotient(q, ideal)
        free = [c for c in range(half) if c not in ideal.pivots]
        I = sympy.Matrix(ideal.dim, half, [sympy.Rational(x.numerator, x.denominator) for v in ideal.vectors() for x in v])
        base_rank = I.rank() if ideal.dim else 0
        # chosen center images are independent modulo I
        F = sympy.zeros(len(free), half)
        for k, c in enumerate(free):
            F[k, c] = 1
        assert (I.col_join(F) if ideal.dim else F).rank() == base_rank + len(free)
        for n, (i, j) in enumerate(pb.pairs):
            vec = [sympy.Integer(0)] * half
            vec[n] += 1
            for k, c in enumerate(free):
                coeff = alg.tensor.a(i, j, k + 1)
                vec[c] -= sympy.Rational(coeff.numerator, coeff.denominator)
            row = sympy.Matrix([vec])
            stacked = I.col_join(row) if ideal.dim else row
            assert stacked.rank() == base_rank


def test_central_generator_path():
    # x3 brackets to zero with everything: validation still passes, marginal rank drops
    ideal = parse_relation(3, "[u1,u3]; [u2,u3]")
    alg = quotient(3, ideal)
    assert alg.p == 1
    from twostep.decompose import marginal_rank

    assert marginal_rank(alg) == 2


def test_dual_requires_presentation_and_is_involutive():
    i1 = parse_relation(6, "[u1,u2]+[u5,u6]; [u3,u4]+[u5,u6]")
    n = quotient(6, i1)
    nd = dual(n)
    assert nd.n == 6 + 2
    ndd = dual(nd)
    assert ndd.presentation == i1
    assert fingerprint(ndd) == fingerprint(n)
    from twostep.algebra import TwoStepAlgebra

    with pytest.raises(PreconditionError):
        dual(TwoStepAlgebra.from_text("[x1,x2]=y1", 2, 1))


def test_to_text_round_trip():
    ideal = parse_relation(5, "[u1,u2] - 1/2[u3,u4]; [u2,u5] + [u1,u3]")
    assert parse_relation(5, ideal.to_text()) == ideal
