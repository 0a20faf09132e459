import itertools
import math

import pytest

from schedtest.adversary import (
    CONSTANTS,
    GENERATORS,
    gen_indistinguishable,
    gen_lemma1_family,
    gen_single_job_randomized,
    gen_theorem2_family,
    gen_theorem3_family,
    gen_theorem6_game,
    gen_tightness_two_machine,
    gen_uniform_forced_test,
    indistinguishable_ps,
)
from schedtest.core import PHI, Placement
from schedtest.offline import optimal_makespan
from schedtest.policies import revised_two_machine_params, test_probability_single_machine
from schedtest.verifier import enumerate_strategies, play

from oracles import thm2_alpha, thm3_alpha, thm6_x0, thm6_y0


def test_constants_against_oracle():
    assert CONSTANTS.thm2_alpha == pytest.approx(float(thm2_alpha()), abs=1e-15)
    assert CONSTANTS.thm2_alpha == pytest.approx(0.3089, abs=1e-4)
    assert CONSTANTS.thm3_alpha == pytest.approx(float(thm3_alpha()), abs=1e-15)
    assert CONSTANTS.thm3_alpha == pytest.approx(0.3141428, abs=1e-7)
    assert CONSTANTS.thm6_x0 == pytest.approx(float(thm6_x0()), abs=1e-14)
    assert CONSTANTS.thm6_y0 == pytest.approx(float(thm6_y0()), abs=1e-14)
    assert CONSTANTS.thm6_x0 == pytest.approx(0.4878, abs=1e-4)
    assert CONSTANTS.thm6_y0 == pytest.approx(3.0933, abs=1e-4)
    assert CONSTANTS.thm6_case2_u3 == pytest.approx(2.1606, abs=1e-4)


def test_constant_residuals():
    x, y = CONSTANTS.thm6_x0, CONSTANTS.thm6_y0
    assert abs(x * x - (3 * PHI + 1) * x + PHI**2) < 1e-10
    assert abs(y * y - (1 - x) * y - (PHI + 1 - x) * (2 * PHI + 1 - x)) < 1e-10
    for weights in (CONSTANTS.thm2_weights, CONSTANTS.thm3_weights):
        assert all(0 <= w <= 1 for w in weights)
        assert math.fsum(weights) == pytest.approx(1.0, abs=1e-15)
    assert CONSTANTS.thm2_weights[0] == pytest.approx(0.5637112054, abs=1e-9)


def test_single_job_family():
    fam = gen_single_job_randomized()
    exp_opt = sum(w * optimal_makespan(inst).opt for inst, w in fam.members)
    assert exp_opt == 1.5
    for tested in (False, True):
        alg = sum(w * inst.jobs[0].charged(tested) for inst, w in fam.members)
        assert alg == 2


@pytest.mark.parametrize("m", [2, 3, 4, 5])
def test_forced_test_opt_is_m(m):
    game = gen_uniform_forced_test(m)
    assert game.n == m * (m - 1) + 1
    for strategy in itertools.islice(enumerate_strategies(game, cap=game.n), 50):
        inst = play(strategy, game).instance
        assert optimal_makespan(inst, cap=inst.n).opt == m
        assert sorted(j.p for j in inst.jobs)[-1] == m - 1


def test_forced_test_validates():
    with pytest.raises(ValueError):
        gen_uniform_forced_test(1)
    with pytest.raises(ValueError):
        gen_uniform_forced_test(3, big_u=1.0)


@pytest.mark.parametrize(
    "tested, expected",
    [
        ((False,) * 5, (0, 0, 2, 2, 2)),
        ((False, True, True, True, True), (0, 2, 2, 2, 0)),
        ((True,) * 5, (2, 2, 2, 0, 0)),
        ((True, False, True, False, True), (2, 0, 2, 0, 2)),
    ],
)
def test_indistinguishable_examples(tested, expected):
    assert indistinguishable_ps(tested) == expected


@pytest.mark.parametrize("m", [2, 3, 4])
def test_indistinguishable_all_histories(m):
    game = gen_indistinguishable(m)
    for strategy in enumerate_strategies(game, symmetry=False):
        history = list(strategy.actions)
        ps = game.finalize(history)
        assert ps.count(0.0) == 2 and ps.count(2.0) == m - 1
        plan = [pl.tested for pl in history]
        for j, pl in enumerate(history):
            if pl.tested:
                assert game.respond(j, history[: j + 1], plan) == ps[j]
        inst = game.realize(history)
        assert all(0 <= job.p <= job.u for job in inst.jobs)


def _all_members():
    for fam in (gen_theorem2_family(3), gen_theorem2_family(4), gen_theorem3_family()):
        for member, _ in fam.members:
            yield member
    yield gen_theorem6_game()
    for m in (2, 3):
        yield gen_uniform_forced_test(m)


@pytest.mark.parametrize("game", list(_all_members()), ids=lambda g: g.rule)
def test_games_keep_p_within_u(game):
    for strategy in enumerate_strategies(game, cap=game.n):
        sched = play(strategy, game)
        assert all(0 <= job.p <= job.u for job in sched.instance.jobs)


def test_three_machine_family_shape():
    fam = gen_theorem2_family(3)
    a = CONSTANTS.thm2_alpha
    obs = [member.observed for member, _ in fam.members]
    assert obs[0][:4] == obs[1][:4] == obs[2][:4]
    assert obs[1][4] == obs[2][4] == (2 + 1 / a, 3.0)
    assert obs[0][4] == (0.0, 0.0)
    with pytest.raises(ValueError):
        gen_theorem2_family(2)


def test_two_machine_family_shape():
    fam = gen_theorem3_family()
    a = CONSTANTS.thm3_alpha
    assert [w for _, w in fam.members] == [0.5, a, 0.5 - a]
    assert fam.members[1][0].observed[3] == (2 / a, 4.0)


def test_tightness_instance():
    inst = gen_tightness_two_machine()
    x1 = revised_two_machine_params().x1
    assert inst.rhos() == (1.0, 1.0, 2.0)
    assert optimal_makespan(inst).opt == 2
    assert all(job.ratio == pytest.approx(x1, abs=1e-15) and job.ratio < PHI for job in inst.jobs)


@pytest.mark.parametrize("k", [2, 3, 4])
def test_many_machine_family(k):
    inst = gen_lemma1_family(k)
    n = k * (k - 1) + 1
    assert inst.m == inst.n == n
    assert optimal_makespan(inst).opt == 1
    q = test_probability_single_machine(inst.jobs[0].ratio)
    assert q == pytest.approx(k * (k - 1) / n, abs=1e-15)


def test_deterministic_game_branches():
    game = gen_theorem6_game()
    x0 = CONSTANTS.thm6_x0
    assert game.observe(0, []) == (PHI, 1.0)
    # J1 untested on M1, J2 on M1 voids J3
    h = [Placement(0, False), Placement(0, True)]
    assert game.observe(1, h[:1]) == pytest.approx((PHI - x0, x0))
    assert game.observe(2, h) == (0.0, 0.0)
    # J1 tested scales the rest by phi
    h = [Placement(0, True), Placement(1, False)]
    u, t = game.observe(1, h[:1])
    assert (u, t) == pytest.approx((PHI * (PHI - x0), PHI * x0))
    assert game.observe(2, h)[0] == pytest.approx(PHI * CONSTANTS.thm6_case2_u3)
    assert game.finalize(h + [Placement(0, True)])[0] == PHI


def test_generator_registry():
    assert set(GENERATORS) == {"inst1", "inst2", "inst3", "inst4", "thm2", "thm3", "thm6", "lemma1"}
    for name, gen in GENERATORS.items():
        assert gen() is not None
