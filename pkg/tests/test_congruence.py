import pytest

from qdissect import congruence as C
from qdissect import series as S


def test_indexed_family_arguments():
    assert [(C.IndexedFamily(k).a, C.IndexedFamily(k).b) for k in range(3)] == [
        (54, 38), (486, 344), (4374, 3098)]


def test_theorem_1_1_default_budget():
    rep = C.check_theorem_1_1(2)
    assert rep.passed
    per_k = {d["k"]: d["instances"] for d in rep.details["per_k"]}
    assert per_k == {0: 185, 1: 20, 2: 2}


def test_theorem_1_2():
    rep = C.check_theorem_1_2(nmax=(120, 100))
    assert rep.passed and rep.instances_checked == 222


def test_closing_remark():
    assert C.check_closing_remark(100).passed


def test_wrong_modulus_is_caught():
    # R6*(11) = 320 is divisible by 64 but not by 128
    rep = C.check_family(C.CongruenceFamily(27, 11, 128), 10)
    assert rep.status == "failed"
    assert rep.counterexamples[0] == {"n": 0, "argument": 11, "value": 320, "residue": 64}


def test_budget_is_enforced():
    with pytest.raises(C.BudgetExceeded):
        C.check_family(C.CongruenceFamily(27, 11, 64), 1000, budget=500)


def test_report_json_shape():
    d = C.check_closing_remark(5).to_dict()
    assert set(d) >= {"claim", "modulus", "instances_checked", "status", "counterexamples"}
    assert d["status"] == "verified"


def test_decomposition():
    rep = C.t1_t2_decomposition(200)
    assert rep.passed, rep.details


def test_t1_claim_k1_is_the_base_display():
    m = C.match_claim_T1(1)
    assert (m.sign, m.a) == (-1, 0)
    assert all(C.t1_k1_display(60).values())


def test_t1_claim_k2_unique_and_follows_the_recurrence():
    m = C.match_claim_T1(2)
    assert (m.sign, m.a, m.branch) == (1, 1, "5a+1")


@pytest.mark.parametrize("k,sign", [(1, -1), (2, 1)])
def test_t1_three_n_plus_one_branch(k, sign):
    assert all(C.t1_branch_check(k, sign, 40).values())


def test_t2_claim():
    assert C.match_claim_T2(0).lam == 0
    assert C.match_claim_T2(1).lam == 1
    assert C.match_claim_T2(2).lam == 0


def test_corrupted_templates_fail():
    assert C.match_claim_T1(1, q_coeff=16) is None
    assert C.match_claim_T1(1, base=4) is None
    assert C.match_claim_T2(0, coeff=32) is None


def test_claim_budget():
    with pytest.raises(C.BudgetExceeded):
        C.match_claim_T1(3, n=60, budget=10_000)


def test_square_classes():
    assert C.square_progression_empty(5, 12, odd_only=True)
    assert C.square_progression_empty(21, 36, odd_only=True)
    assert not C.square_progression_empty(1, 12, odd_only=True)
    assert not C.square_progression_empty(9, 36, odd_only=True)


@pytest.mark.parametrize("form", [f for f, _ in C.GAP_FACTS])
def test_triangular_gaps(form):
    a, b, s = form
    assert C.triangular_gap_check(a, b, s, 10_000)


def test_triangular_positive_control():
    # m(m+1) = 3n: m = 2 gives 6 = 3*2
    sols = C.triangular_solutions(3, 0, 0, 100)
    assert sols == [(0, 0, 0)]
    assert C.triangular_solutions(3, 0, 0, 100, limit=3)[1:] == [(2, 0, 2), (3, 0, 4)]
    assert not C.triangular_gap_check(9, 2, 0, 100)


def test_qr_report():
    assert C.qr_report(2000).passed


def test_cross_check_guards_the_oracle():
    counts = C.r6_counts(200, 128)
    assert counts[11] == 320
