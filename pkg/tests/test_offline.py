import random

import pytest
from hypothesis import given, settings, strategies as st

from schedtest.adversary import CONSTANTS, gen_theorem2_family, gen_tightness_two_machine
from schedtest.checks import random_instance
from schedtest.core import FixedInstance, Job, Placement
from schedtest.offline import InstanceTooLarge, makespan_lower_bound, optimal_makespan

from oracles import brute_force_opt


def test_tightness_instance():
    inst = gen_tightness_two_machine()
    assert makespan_lower_bound(inst) == 2
    res = optimal_makespan(inst)
    assert res.opt == 2
    a = res.assignment
    assert a[0] == a[1] != a[2]


def test_single_job():
    inst = FixedInstance(3, (Job(4, 1, 2),))
    assert makespan_lower_bound(inst) == 3
    assert optimal_makespan(inst).opt == 3


def test_forced_test_lower_bound():
    jobs = (Job(1e6, 1, 0),) * 6 + (Job(1e6, 1, 2),)
    assert makespan_lower_bound(FixedInstance(3, jobs)) == 3
    assert optimal_makespan(FixedInstance(3, jobs)).opt == 3


def test_three_machine_heavy_member_opt():
    member = gen_theorem2_family(3).members[2][0]
    # C* depends on the realized p values; any complete history will do
    inst = member.realize([Placement(0, False)] * member.n)
    a = CONSTANTS.thm2_alpha
    assert optimal_makespan(inst).opt == pytest.approx(2 + 1 / a, abs=1e-12)
    assert optimal_makespan(inst).opt == pytest.approx(5.2376459618, abs=1e-9)


def test_cap():
    inst = FixedInstance(2, (Job(1, 1, 0),) * 21)
    with pytest.raises(InstanceTooLarge):
        optimal_makespan(inst)
    assert optimal_makespan(inst, cap=21).opt == 11


def test_result_serializes():
    d = optimal_makespan(gen_tightness_two_machine()).to_dict()
    assert set(d) == {"opt", "lb", "assignment"}


@pytest.mark.parametrize("seed", range(10))
def test_matches_brute_force(seed):
    rng = random.Random(seed)
    for _ in range(20):
        m = rng.randint(2, 4)
        inst = random_instance(rng, m, max_n=8)
        res = optimal_makespan(inst)
        assert res.opt == brute_force_opt(inst.rhos(), m)
        loads = [0.0] * m
        for v, k in zip(inst.rhos(), res.assignment):
            loads[k] += v
        assert max(loads) == pytest.approx(res.opt, abs=1e-12)
        assert res.lb <= res.opt


@settings(max_examples=150)
@given(
    st.lists(st.integers(0, 12), min_size=1, max_size=8),
    st.integers(2, 4),
    st.randoms(use_true_random=False),
)
def test_integer_instances_and_permutation(values, m, rnd):
    jobs = [Job(float(v), float(v), 0.0) for v in values]
    inst = FixedInstance(m, tuple(jobs))
    opt = optimal_makespan(inst).opt
    assert opt == brute_force_opt(values, m)
    rnd.shuffle(jobs)
    assert optimal_makespan(FixedInstance(m, tuple(jobs))).opt == opt
    assert opt >= makespan_lower_bound(inst)
