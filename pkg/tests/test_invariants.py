import random
from itertools import combinations

import pytest
from oracles import brute_girth, monomial_change, random_algebra, union_find_components

from twostep.algebra import TwoStepAlgebra, apply_basis_change
from twostep.catalog import VERBATIM_TABLES, get
from twostep.errors import NotThreeUniform
from twostep.invariants import (
    build_generator_graph,
    build_hypergraph,
    center_related_sequence,
    components,
    fingerprint,
    generator_relation_sequence,
    girth,
    related_sequence,
    weighted_center_related_sequence,
)


def test_heisenberg():
    h = TwoStepAlgebra.from_text("[x1,x2]=y1", 2, 1)
    fp = fingerprint(h)
    assert fp.related_sequence == (1, 1)
    assert fp.generator_relation_sequence == (2,)
    assert fp.center_related_sequence == (1,)
    assert fp.weighted_center_related_sequence == (2,)
    assert fp.girth is None and fp.uniform3


def test_square_with_diagonal():
    alg = TwoStepAlgebra.from_text("[x1,x2]=y1; [x2,x3]=y2; [x3,x4]=y3; [x4,x1]=y4; [x1,x3]=y1", 4, 4)
    assert related_sequence(alg) == (2, 2, 3, 3)
    assert center_related_sequence(alg) == (1, 1, 1, 2)
    # y1 collects edges (1,2) and (1,3): (3+2) + (3+3)
    assert max(weighted_center_related_sequence(alg)) == 11
    assert girth(build_generator_graph(alg)) == 3


def test_hyperedge_rendering():
    alg = TwoStepAlgebra.from_text("[x1,x2]=y1+y2; [x2,x3]=y2", 3, 2)
    h = build_hypergraph(alg)
    assert [str(e) for e in h.edges] == ["(x1,x2;y1,y2)", "(x2,x3;y2)"]
    assert not h.is_3_uniform


def test_not_three_uniform_raises():
    alg = get("N^{8,2}_1").algebra
    assert not build_hypergraph(alg).is_3_uniform
    with pytest.raises(NotThreeUniform):
        center_related_sequence(alg)
    with pytest.raises(NotThreeUniform):
        weighted_center_related_sequence(alg)
    fp = fingerprint(alg)
    assert fp.center_related_sequence is None
    assert fp.withheld == ("center_related_sequence", "weighted_center_related_sequence")


def test_girth_and_components_against_oracles():
    rng = random.Random(21)
    for _ in range(150):
        q = rng.randint(2, 7)
        p = rng.randint(1, min(4, q * (q - 1) // 2))
        alg = random_algebra(rng, q, p, density=rng.choice([0.2, 0.4, 0.7]))
        nz = alg.tensor.nonzero_brackets()
        assert girth(build_generator_graph(alg)) == brute_girth(q, list(nz))
        expected = union_find_components(
            q, p, [(i, j, [k + 1 for k, c in enumerate(v) if c]) for (i, j), v in nz.items()]
        )
        got = sorted((c.generators, c.centers) for c in components(build_hypergraph(alg)))
        assert got == expected


def test_generator_relation_sequence_counts_isolated():
    alg = TwoStepAlgebra.from_text("[x1,x2]=y1; [x3,x4]=y2", 5, 2)
    assert generator_relation_sequence(alg) == (1, 2, 2)
    assert related_sequence(alg) == (0, 1, 1, 1, 1)


def test_fingerprint_invariant_under_monomial_changes():
    rng = random.Random(22)
    for _ in range(60):
        q = rng.randint(3, 6)
        p = rng.randint(1, min(4, q * (q - 1) // 2))
        alg = random_algebra(rng, q, p, density=0.4)
        moved = TwoStepAlgebra(apply_basis_change(alg.tensor, monomial_change(q, p, rng)))
        assert fingerprint(moved) == fingerprint(alg)


def test_as_dict_is_json_friendly():
    d = fingerprint(get("N^{8,3}_1").algebra).as_dict()
    assert isinstance(d["related_sequence"], list)
    assert set(d) >= {"q", "p", "girth", "uniform3"}


def test_verbatim_n8_3_10_collides_with_n8_3_9():
    verbatim = TwoStepAlgebra.from_text(VERBATIM_TABLES["N^{8,3}_{10}"], 5, 3)
    assert fingerprint(verbatim) == fingerprint(get("N^{8,3}_9").algebra)
    assert fingerprint(get("N^{8,3}_{10}").algebra) != fingerprint(get("N^{8,3}_9").algebra)


def test_catalog_fingerprints_distinct_within_groups():
    from twostep.catalog import groups

    for members in groups().values():
        for a, b in combinations(members, 2):
            assert fingerprint(a.algebra) != fingerprint(b.algebra)
