"""Instance generators for every lower-bound and tightness construction."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .core import PHI, AdaptiveGame, FixedInstance, History, Job, RandomizedFamily
from .policies import revised_two_machine_params

DEFAULT_BIG_U = 1e6


@dataclass(frozen=True)
class GameConstants:
    thm2_alpha: float
    thm2_weights: tuple[float, float, float]
    thm3_alpha: float
    thm3_weights: tuple[float, float, float]
    thm6_x0: float
    thm6_y0: float

    @property
    def thm6_case2_u3(self) -> float:
        """Upper bound of the third job after an untested, separated second job."""
        return (1.0 + PHI) * self.thm6_y0 / (2.0 * PHI + 1.0 - self.thm6_x0)


def game_constants() -> GameConstants:
    a2 = (2.0 * math.sqrt(78.0) - 5.0) / 41.0
    a3 = (math.sqrt(51.0) - 4.0) / 10.0
    x0 = (3.0 * PHI + 1.0 - math.sqrt(11.0 * PHI + 6.0)) / 2.0
    y0 = (1.0 - x0 + math.sqrt((3.0 * PHI - 5.0) * x0 + 15.0 * PHI + 8.0)) / 2.0
    return GameConstants(
        thm2_alpha=a2,
        thm2_weights=((2.0 - a2) / 3.0, a2, (1.0 - 2.0 * a2) / 3.0),
        thm3_alpha=a3,
        thm3_weights=(0.5, a3, 0.5 - a3),
        thm6_x0=x0,
        thm6_y0=y0,
    )


CONSTANTS = game_constants()


def gen_single_job_randomized(m: int = 1) -> RandomizedFamily:
    """One job (u=2, t=1) whose hidden time is 0 or 2 with equal odds."""
    return RandomizedFamily(
        (
            (FixedInstance(m, (Job(2.0, 1.0, 0.0),)), 0.5),
            (FixedInstance(m, (Job(2.0, 1.0, 2.0),)), 0.5),
        )
    )


def forced_test_ps(history: History, m: int, big_u: float) -> tuple[float, ...]:
    """The first job placed on a machine already loaded to m-1 gets p = m-1."""
    loads = [0.0] * m
    fired = False
    ps = []
    for pl in history:
        p = 0.0
        if not fired and loads[pl.machine] >= m - 1:
            p = float(m - 1)
            fired = True
        ps.append(p)
        loads[pl.machine] += 1.0 + p if pl.tested else big_u
    return tuple(ps)


def gen_uniform_forced_test(m: int, big_u: float = DEFAULT_BIG_U) -> AdaptiveGame:
    if m < 2:
        raise ValueError("forced-test game needs m >= 2")
    if big_u < m - 1:
        raise ValueError("big_u must be at least m - 1")
    n = m * (m - 1) + 1

    def observe(j: int, history: History) -> tuple[float, float]:
        return big_u, 1.0

    def respond(j: int, history: History, plan: Sequence[bool]) -> float:
        return forced_test_ps(history[: j + 1], m, big_u)[j]

    def finalize(history: History) -> tuple[float, ...]:
        return forced_test_ps(history, m, big_u)

    return AdaptiveGame(m, n, "uniform_forced_test", observe, respond, finalize,
                        params={"m": m, "big_u": big_u})


def indistinguishable_ps(tested: Sequence[bool]) -> tuple[float, ...]:
    """Two zeros: the first two untested jobs, topped up from the latest tested ones."""
    n = len(tested)
    zeros = [j for j in range(n) if not tested[j]][:2]
    for j in range(n - 1, -1, -1):
        if len(zeros) == 2:
            break
        if tested[j]:
            zeros.append(j)
    return tuple(0.0 if j in zeros else 2.0 for j in range(n))


def _indistinguishable_game(m: int, tail: Job | None, rule: str, params: dict) -> AdaptiveGame:
    base = m + 1
    n = base + (tail is not None)

    def observe(j: int, history: History) -> tuple[float, float]:
        if j < base:
            return 2.0, 1.0
        return tail.u, tail.t

    def respond(j: int, history: History, plan: Sequence[bool]) -> float:
        if j >= base:
            return tail.p
        if len(plan) < base:
            raise ValueError("this adversary needs the test plan of all indistinguishable jobs")
        return indistinguishable_ps(plan[:base])[j]

    def finalize(history: History) -> tuple[float, ...]:
        ps = indistinguishable_ps([pl.tested for pl in history[:base]])
        return ps + ((tail.p,) if tail is not None else ())

    return AdaptiveGame(m, n, rule, observe, respond, finalize, params=params)


def gen_indistinguishable(m: int) -> AdaptiveGame:
    """m+1 identical (2, 1) jobs; two of them end up with p = 0, the rest p = 2."""
    if m < 2:
        raise ValueError("indistinguishable game needs m >= 2")
    return _indistinguishable_game(m, None, "indistinguishable", {"m": m})


def _tail_family(m: int, tails: Sequence[Job], weights: Sequence[float], name: str) -> RandomizedFamily:
    members = []
    for idx, (tail, w) in enumerate(zip(tails, weights), start=1):
        game = _indistinguishable_game(
            m, tail, f"{name}:I{idx}", {"m": m, "member": idx}
        )
        members.append((game, w))
    return RandomizedFamily(tuple(members))


def gen_theorem2_family(m: int = 3) -> RandomizedFamily:
    if m < 3:
        raise ValueError("the three-or-more machine family needs m >= 3")
    a = CONSTANTS.thm2_alpha
    big = 2.0 + 1.0 / a
    tails = (Job(0.0, 0.0, 0.0), Job(big, 3.0, 0.0), Job(big, 3.0, big))
    return _tail_family(m, tails, CONSTANTS.thm2_weights, "thm2")


def gen_theorem3_family() -> RandomizedFamily:
    a = CONSTANTS.thm3_alpha
    big = 2.0 / a
    tails = (Job(0.0, 0.0, 0.0), Job(big, 4.0, 0.0), Job(big, 4.0, big))
    return _tail_family(2, tails, CONSTANTS.thm3_weights, "thm3")


def gen_tightness_two_machine() -> FixedInstance:
    x1 = revised_two_machine_params().x1
    return FixedInstance(2, (Job(x1, 1.0, 0.0), Job(x1, 1.0, 0.0), Job(2.0 * x1, 2.0, 0.0)))


def gen_lemma1_family(k: int) -> FixedInstance:
    """k(k-1)+1 machines and as many (k, 1, 0) jobs."""
    if k < 2:
        raise ValueError("k must be at least 2")
    n = k * (k - 1) + 1
    return FixedInstance(n, tuple(Job(float(k), 1.0, 0.0) for _ in range(n)))


def _thm6_observe(j: int, history: History) -> tuple[float, float]:
    x0, y0 = CONSTANTS.thm6_x0, CONSTANTS.thm6_y0
    if j == 0:
        return PHI, 1.0
    scale = PHI if history[0].tested else 1.0
    if j == 1:
        return scale * (PHI - x0), scale * x0
    if history[1].machine == history[0].machine:
        return 0.0, 0.0
    if history[1].tested:
        return scale * y0, scale * (PHI + 1.0 - x0)
    return scale * CONSTANTS.thm6_case2_u3, scale * (1.0 + x0)


def _thm6_respond(j: int, history: History, plan: Sequence[bool]) -> float:
    if not history[j].tested:
        return 0.0
    return _thm6_observe(j, history[:j])[0]


def _thm6_finalize(history: History) -> tuple[float, ...]:
    return tuple(_thm6_respond(j, history, ()) for j in range(len(history)))


def gen_theorem6_game() -> AdaptiveGame:
    """Three-job two-machine game: tested jobs get p = u, untested p = 0.

    If the first job is tested, every later (u, t) is scaled by phi, which
    keeps all ratios of the untested branch.
    """
    return AdaptiveGame(2, 3, "theorem6", _thm6_observe, _thm6_respond, _thm6_finalize,
                        static=False, params={})


GENERATORS = {
    "inst1": lambda **kw: gen_single_job_randomized(kw.get("m") or 1),
    "inst2": lambda **kw: gen_uniform_forced_test(kw.get("m") or 3, kw.get("big_u") or DEFAULT_BIG_U),
    "inst3": lambda **kw: gen_indistinguishable(kw.get("m") or 4),
    "inst4": lambda **kw: gen_tightness_two_machine(),
    "thm2": lambda **kw: gen_theorem2_family(kw.get("m") or 3),
    "thm3": lambda **kw: gen_theorem3_family(),
    "thm6": lambda **kw: gen_theorem6_game(),
    "lemma1": lambda **kw: gen_lemma1_family(kw.get("k") or 2),
}


def rebuild_game(rule: str, params: dict) -> AdaptiveGame:
    """Inverse of game serialization: rules are code, so rebuild from id + params."""
    if rule == "uniform_forced_test":
        return gen_uniform_forced_test(params["m"], params.get("big_u", DEFAULT_BIG_U))
    if rule == "indistinguishable":
        return gen_indistinguishable(params["m"])
    if rule == "theorem6":
        return gen_theorem6_game()
    family, _, member = rule.partition(":")
    if family in ("thm2", "thm3") and member:
        fam = gen_theorem2_family(params["m"]) if family == "thm2" else gen_theorem3_family()
        return fam.members[int(member[1:]) - 1][0]
    raise ValueError(f"unknown adversary rule {rule!r}")
