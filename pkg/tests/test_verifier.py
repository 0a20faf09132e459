import math

import pytest

from schedtest.adversary import (
    CONSTANTS,
    gen_indistinguishable,
    gen_single_job_randomized,
    gen_theorem3_family,
    gen_theorem6_game,
    gen_tightness_two_machine,
    gen_uniform_forced_test,
)
from schedtest.checks import check_thm2, check_thm3
from schedtest.core import FixedInstance, Job, Placement
from schedtest.policies import revised_two_machine_params
from schedtest.verifier import (
    BoundReport,
    EnumerationTooLarge,
    Strategy,
    check_gcl_bound,
    det_lb_ratio,
    enumerate_strategies,
    evaluate_strategy,
    lemma1_bound,
    lemma1_expected_ratio,
    lemma1_expected_ratio_bruteforce,
    structural_check,
    thm6_branch_values,
    yao_ratio,
)

THREE_JOBS = FixedInstance(2, (Job(2, 1, 0),) * 3)


def test_enumeration_counts():
    assert sum(1 for _ in enumerate_strategies(THREE_JOBS, symmetry=False)) == 64
    assert sum(1 for _ in enumerate_strategies(THREE_JOBS, symmetry=True)) == 32
    assert sum(1 for _ in enumerate_strategies(gen_theorem3_family())) == 128


def test_enumeration_machine_indices_in_range():
    for s in enumerate_strategies(FixedInstance(3, (Job(1, 1, 0),) * 4), symmetry=False):
        assert all(0 <= a.machine < 3 for a in s.actions)


def test_enumeration_cap():
    with pytest.raises(EnumerationTooLarge):
        next(enumerate_strategies(FixedInstance(2, (Job(1, 1, 0),) * 9)))


def test_two_machine_family_case_strategy():
    fam = gen_theorem3_family()
    strat = Strategy((Placement(0, True), Placement(1, True), Placement(1, True), Placement(1, True)))
    alg, opt = evaluate_strategy(strat, fam)
    a = CONSTANTS.thm3_alpha
    assert alg == pytest.approx(2.5 + 1 / a, abs=1e-12)
    assert alg == pytest.approx(5.6832652653, abs=1e-9)
    assert opt == pytest.approx(4 * a + 1 / a - 1, abs=1e-12)
    assert opt == pytest.approx(3.4398366367, abs=1e-9)


def test_instance1_evaluation():
    fam = gen_single_job_randomized()
    for tested in (False, True):
        alg, opt = evaluate_strategy(Strategy((Placement(0, tested),)), fam)
        assert alg == 2 and opt == 1.5
    rep = yao_ratio(fam)
    assert rep.computed == pytest.approx(4 / 3, abs=1e-15)


def test_yao_soundness_and_symmetry():
    fam = gen_theorem3_family()
    rep = yao_ratio(fam, symmetry=True)
    full = yao_ratio(fam, symmetry=False)
    assert rep.computed == full.computed
    assert rep.details["strategies"] == 128
    alg, opt = evaluate_strategy(rep.witness, fam)
    assert alg / opt == rep.computed
    for s in enumerate_strategies(fam, symmetry=False):
        alg, opt = evaluate_strategy(s, fam)
        assert alg / opt >= rep.computed


def test_two_machine_family_value():
    rep = check_thm3()
    assert rep.computed == pytest.approx((21 + 4 * math.sqrt(51)) / 30, abs=1e-4)
    assert rep.passed


@pytest.mark.slow
def test_three_machine_family_symmetry_matches_full():
    assert check_thm2(3, symmetry=True).computed == check_thm2(3, symmetry=False).computed


def test_deterministic_game():
    rep = det_lb_ratio(gen_theorem6_game())
    vals = thm6_branch_values()
    assert rep.computed == pytest.approx(vals["equalized"], abs=1e-12)
    assert vals["equalized"] == pytest.approx(vals["equalized_tested"], abs=1e-12)
    assert rep.computed == pytest.approx(2.2117195423, abs=1e-9)
    assert rep.computed >= 2.2117
    assert vals["case1_colocated"] == pytest.approx(2.8634, abs=1e-4)
    assert vals["case2_colocated"] == pytest.approx(2.7482, abs=1e-4)
    assert det_lb_ratio(gen_theorem6_game(), symmetry=False).computed == rep.computed


def test_structural_checks():
    assert structural_check(3) == []
    assert structural_check(2) == []


def test_gcl_bound_tightness_corpus():
    rp = revised_two_machine_params()
    rep = check_gcl_bound([gen_tightness_two_machine()], 2, params=rp)
    assert rep.computed == pytest.approx(1.5 * rp.x1, abs=1e-12)
    assert rep.computed == pytest.approx(2.1838301702, abs=1e-9)
    assert rep.passed and abs(rep.margin) <= 1e-9


def test_gcl_bound_forced_test():
    rep = check_gcl_bound([gen_uniform_forced_test(3)], 3, ell=2)
    assert rep.computed == pytest.approx(5 / 3, abs=1e-12)
    assert rep.passed


def test_gcl_bound_empty_corpus():
    rep = check_gcl_bound([], 2, ell=1)
    assert rep.computed == 0 and rep.passed


def test_gcl_bound_indistinguishable_adapts():
    rep = check_gcl_bound([gen_indistinguishable(3)], 3, ell=1)
    assert rep.details["instances"] >= 1 and rep.passed


def test_gcl_bound_rejects_mismatched_m():
    with pytest.raises(ValueError):
        check_gcl_bound([THREE_JOBS], 3, ell=1)


def test_bound_report_kinds():
    assert BoundReport("a", 1.0, 1.0 - 1e-7, "lower", 1e-6).passed
    assert not BoundReport("a", 1.0, 1.0 - 1e-5, "lower", 1e-6).passed
    assert not BoundReport("a", 1.0, 1.0 + 1e-8, "equal", 1e-9).passed
    assert BoundReport("a", 1.0, 0.5, "upper", 0.0).passed
    d = BoundReport("a", 1.0, 2.0, "upper", 0.0, Strategy((Placement(0, True),))).to_dict()
    assert d["status"] == "FAIL" and d["witness"] == {"actions": [[0, True]]}


def test_many_machine_examples():
    res = lemma1_expected_ratio(2)
    assert res.exact == pytest.approx(46 / 27, abs=1e-12)
    assert res.closed_form == pytest.approx(38 / 27, abs=1e-12)


@pytest.mark.parametrize("k", [2, 3])
def test_many_machine_grouping_matches_bruteforce(k):
    assert lemma1_expected_ratio(k).exact == pytest.approx(lemma1_expected_ratio_bruteforce(k), rel=1e-12)


def test_many_machine_closed_form():
    bounds = [lemma1_bound(k) for k in range(2, 40)]
    assert all(a < b for a, b in zip(bounds, bounds[1:]))
    assert lemma1_bound(2000) / 2000 == pytest.approx(1 - 1 / math.e, abs=1e-3)
    for k in range(2, 6):
        res = lemma1_expected_ratio(k)
        assert res.exact >= res.closed_form
    with pytest.raises(EnumerationTooLarge):
        lemma1_expected_ratio(6)
    assert lemma1_expected_ratio(6, closed_form_fallback=True).exact is None
