import random
from itertools import combinations

import pytest
from oracles import monomial_change

from twostep.algebra import TwoStepAlgebra, apply_basis_change
from twostep.catalog import (
    STATED_T_NAMES,
    Inconclusive,
    MatchStrength,
    NotIsomorphic,
    assign_t_names,
    auxiliary_fixtures,
    catalog,
    distinguish,
    get,
    get_fixture,
    groups,
    has_coverage,
    match,
    nomenclature_key,
    normalize_id,
)
from twostep.decompose import Status, decide, run_oracle
from twostep.errors import UnresolvedTie


@pytest.mark.parametrize(
    "raw,canon",
    [
        ("N^{8,3}_11", "N^{8,3}_{11}"),
        ("N^{8,3}_{11}", "N^{8,3}_{11}"),
        (" T ^ 8,3 _ 4,4 ", "T^{8,3}_{4,4}"),
        ("T^{8,3}_{2}", "T^{8,3}_2"),
    ],
)
def test_normalize_id(raw, canon):
    assert normalize_id(raw) == canon


def test_normalize_rejects_garbage():
    with pytest.raises(KeyError):
        normalize_id("N8311")


def test_catalog_shape():
    entries = catalog()
    assert len(entries) == 26
    sizes = {k: len(v) for k, v in groups().items()}
    assert sizes == {(8, 2): 5, (9, 2): 5, (8, 3): 11, (8, 4): 3, (9, 5): 2}
    assert {e.t_name for e in entries} == set(STATED_T_NAMES.values())


def test_get_by_id_and_t_name():
    e = get("N^{8,3}_11")
    assert e.t_name == "T^{8,3}_2" and e.rank_r == 2
    assert get("T^{8,3}_2") is e
    with pytest.raises(KeyError):
        get("N^{8,3}_12")


def test_match_permuted_entry():
    rng = random.Random(41)
    alg = get("N^{9,2}_1").algebra
    for _ in range(5):
        moved = TwoStepAlgebra(apply_basis_change(alg.tensor, monomial_change(alg.q, alg.p, rng)))
        ms = match(moved)
        assert [m.entry.id for m in ms] == ["N^{9,2}_1"]
        assert ms[0].strength is MatchStrength.EXACT


def test_match_outside_coverage_is_empty():
    alg = TwoStepAlgebra.from_text("; ".join(f"[x{i},x{i + 1}]=y1" for i in range(1, 10)), 10, 1)
    assert match(alg) == [] and not has_coverage(10, 1)


def test_distinguish_is_symmetric_and_irreflexive():
    for members in groups().values():
        for e in members:
            assert isinstance(distinguish(e.algebra, e.algebra), Inconclusive)
        for a, b in combinations(members, 2):
            ab, ba = distinguish(a.algebra, b.algebra), distinguish(b.algebra, a.algebra)
            assert isinstance(ab, NotIsomorphic) and isinstance(ba, NotIsomorphic)
            assert ab.invariant == ba.invariant
            assert (ab.left, ab.right) == (ba.right, ba.left)


def test_distinguish_reports_q_p_first():
    r = distinguish(get("N^{8,2}_1").algebra, get("N^{8,3}_1").algebra)
    assert isinstance(r, NotIsomorphic) and r.invariant == "(q, p)" and r.condition is None


def test_distinguish_reason_mentions_condition():
    r = distinguish(get("N^{8,3}_1").algebra, get("N^{8,3}_2").algebra)
    assert isinstance(r, NotIsomorphic)
    assert "H-msg" in r.reason and str(r).startswith("NotIsomorphic(")


def test_assign_t_names_raises_on_tie():
    e = get("N^{8,3}_1")
    k = nomenclature_key(e.algebra, e.rank_r, e.root_spaces_all_dim1, e.hmsg_related_sequence)
    with pytest.raises(UnresolvedTie):
        assign_t_names({"a": k, "b": k})
    assert assign_t_names({"a": k}) == {"a": f"T^{{8,3}}_{e.rank_r}"}


def test_fixtures_match_and_verdicts():
    for f in auxiliary_fixtures():
        alg = f.algebra()
        if f.expected:
            assert f.expected in [m.entry.id for m in match(alg)], f.id
        if f.decomposable:
            v = decide(alg)
            w = v.witness if v.status is Status.DECOMPOSABLE else run_oracle(alg, budget=200).witness
            assert w is not None and w.verify(alg.tensor), f.id
        elif alg.p == 2:
            assert decide(alg).status is Status.INDECOMPOSABLE, f.id


def test_partial_match_for_non_uniform_side():
    alg = get_fixture("gauger-6-2-I2-dual").algebra()
    strengths = {m.entry.id: m.strength for m in match(alg)}
    assert strengths.get("N^{8,2}_1") is MatchStrength.PARTIAL


def test_get_fixture_unknown():
    with pytest.raises(KeyError):
        get_fixture("nope")
