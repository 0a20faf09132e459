"""List scheduling with pluggable test policies, and the GCL components."""

from __future__ import annotations

import math
from typing import Callable, Sequence, Union

from .core import AdaptiveGame, FixedInstance, Job, Placement, Schedule
from .policies import PolicyParams, RevisedParams, skips

# (u, t, job index) -> test?
TestPolicy = Callable[[float, float, int], bool]
Params = Union[PolicyParams, RevisedParams]


def _ratio(u: float, t: float) -> float:
    return math.inf if t == 0 else u / t


def least_loaded(loads: Sequence[float]) -> int:
    """Index of the minimum load, lowest index on ties."""
    best = 0
    for k in range(1, len(loads)):
        if loads[k] < loads[best]:
            best = k
    return best


def list_schedule(instance: FixedInstance | AdaptiveGame, policy: TestPolicy) -> Schedule:
    """Assign each arriving job to the least loaded machine, testing per ``policy``."""
    if isinstance(instance, FixedInstance):
        loads = [0.0] * instance.m
        placements = []
        for j, job in enumerate(instance.jobs):
            tested = bool(policy(job.u, job.t, j))
            k = least_loaded(loads)
            loads[k] += job.charged(tested)
            placements.append(Placement(k, tested))
        return Schedule(instance, tuple(placements))
    return _list_schedule_game(instance, policy)


def _list_schedule_game(game: AdaptiveGame, policy: TestPolicy) -> Schedule:
    # static games let the adversary see the policy's whole test plan up front
    plan: list[bool] = []
    if game.static:
        plan = [bool(policy(u, t, j)) for j, (u, t) in enumerate(game.observed)]
    loads = [0.0] * game.m
    history: list[Placement] = []
    for j in range(game.n):
        u, t = game.observe(j, history)
        tested = plan[j] if game.static else bool(policy(u, t, j))
        if not game.static:
            plan.append(tested)
        k = least_loaded(loads)
        history.append(Placement(k, tested))
        if tested:
            loads[k] += t + game.respond(j, history, plan)
        else:
            # untested hidden times stay unresolved until finalize
            loads[k] += u
    realized = game.realize(history)
    return Schedule(realized, tuple(history))


def component_policy(params: Params, i: int) -> TestPolicy:
    comps = params.components()
    if not 0 <= i < len(comps):
        raise IndexError(f"component index {i} out of range 0..{len(comps) - 1}")
    _, x, y = comps[i]

    def policy(u: float, t: float, j: int) -> bool:
        return not skips(_ratio(u, t), x, y)

    return policy


def component_schedule(instance: FixedInstance | AdaptiveGame, i: int, params: Params) -> Schedule:
    return list_schedule(instance, component_policy(params, i))


def component_makespan(instance: FixedInstance | AdaptiveGame, i: int, params: Params) -> float:
    return component_schedule(instance, i, params).makespan


def gcl_component_makespans(instance: FixedInstance | AdaptiveGame, params: Params) -> list[float]:
    return [component_makespan(instance, i, params) for i in range(len(params.components()))]


def gcl_expected_makespan(instance: FixedInstance | AdaptiveGame, params: Params) -> float:
    """Exact expected makespan of the mixture: sum of weight * component makespan."""
    total = 0.0
    # fixed summation order, A_0 first
    for (weight, _, _), c in zip(params.components(), gcl_component_makespans(instance, params)):
        total += weight * c
    return total


def component_job_times(job: Job, params: Params) -> list[float]:
    """Charged time of ``job`` under each component's test decision."""
    r = job.ratio
    return [job.charged(not skips(r, x, y)) for _, x, y in params.components()]


def expected_job_time(job: Job, params: Params) -> float:
    total = 0.0
    for (weight, _, _), time in zip(params.components(), component_job_times(job, params)):
        total += weight * time
    return total
