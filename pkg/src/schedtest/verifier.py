"""Strategy enumeration and bound certification.

Against the fixed adversary rules every observation is a deterministic
function of the strategy's own earlier actions, so a deterministic online
algorithm collapses to a sequence of ``(machine, tested)`` actions.  The
only genuine branch point is a final job whose ``(u, t)`` differs across
family members; strategies carry one action per distinct observation there.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence, Union

from .adversary import (
    CONSTANTS,
    gen_indistinguishable,
    gen_lemma1_family,
)
from .core import AdaptiveGame, FixedInstance, Placement, RandomizedFamily, Schedule
from .offline import DEFAULT_OPT_CAP, optimal_makespan, optimal_value
from .policies import (
    PHI,
    PolicyParams,
    RevisedParams,
    params_bound,
    test_probability_single_machine,
    thresholds,
)
from .scheduler import component_schedule, gcl_expected_makespan, list_schedule

DEFAULT_ENUM_CAP = 8
DEFAULT_LEMMA1_CAP = 25
LOWER_TOL = 1e-6
EQUAL_TOL = 1e-9

Target = Union[FixedInstance, AdaptiveGame, RandomizedFamily]
Observation = tuple[float, float]


@dataclass(frozen=True)
class Strategy:
    actions: tuple[Placement, ...]
    # (position, observed (u, t)) -> action overriding ``actions[position]``
    branches: tuple[tuple[tuple[int, Observation], Placement], ...] = ()

    def action(self, position: int, observation: Observation) -> Placement:
        for key, act in self.branches:
            if key == (position, observation):
                return act
        return self.actions[position]

    def to_dict(self) -> dict:
        out: dict = {"actions": [[a.machine, a.tested] for a in self.actions]}
        if self.branches:
            out["branches"] = [
                {"position": pos, "observed": list(obs), "action": [a.machine, a.tested]}
                for (pos, obs), a in self.branches
            ]
        return out


@dataclass(frozen=True)
class BoundReport:
    name: str
    claimed: float
    computed: float
    kind: str  # "lower", "equal" or "upper"
    tolerance: float
    witness: object = None
    details: dict = field(default_factory=dict)

    @property
    def margin(self) -> float:
        return self.computed - self.claimed

    @property
    def passed(self) -> bool:
        if self.kind == "lower":
            return self.margin >= -self.tolerance
        if self.kind == "upper":
            return self.margin <= self.tolerance
        return abs(self.margin) <= self.tolerance

    def to_dict(self) -> dict:
        witness = self.witness
        if hasattr(witness, "to_dict"):
            witness = witness.to_dict()
        return {
            "name": self.name,
            "kind": self.kind,
            "claimed": self.claimed,
            "computed": self.computed,
            "margin": self.margin,
            "tolerance": self.tolerance,
            "status": "PASS" if self.passed else "FAIL",
            "witness": witness,
            "details": self.details,
        }


class EnumerationTooLarge(ValueError):
    pass


# -- playing strategies ---------------------------------------------------


def _members(target: Target) -> tuple[tuple[FixedInstance | AdaptiveGame, float], ...]:
    if isinstance(target, RandomizedFamily):
        return target.members
    return ((target, 1.0),)


def play(strategy: Strategy, member: FixedInstance | AdaptiveGame) -> Schedule:
    """Realized schedule of ``strategy`` against one instance or game."""
    if isinstance(member, FixedInstance):
        placements = [strategy.action(j, obs) for j, obs in enumerate(member.observed)]
        return Schedule(member, tuple(placements))
    history: list[Placement] = []
    for j in range(member.n):
        obs = member.observe(j, history)
        history.append(strategy.action(j, obs))
    return Schedule(member.realize(history), tuple(history))


def evaluate_strategy(strategy: Strategy, family: Target) -> tuple[float, float]:
    """Probability-weighted algorithm makespan and offline optimum."""
    exp_alg = 0.0
    exp_opt = 0.0
    for member, prob in _members(family):
        if len(strategy.actions) != member.n:
            raise ValueError(
                f"strategy covers {len(strategy.actions)} jobs, member has {member.n}"
            )
        sched = play(strategy, member)
        exp_alg += prob * sched.makespan
        exp_opt += prob * optimal_value(sched.instance.rhos(), member.m)
    return exp_alg, exp_opt


# -- enumeration -----------------------------------------------------------


def _static_observations(member) -> tuple[Observation, ...] | None:
    if isinstance(member, FixedInstance):
        return member.observed
    return member.observed if member.static else None


def _branch_groups(target: Target) -> tuple[int, list[Observation]]:
    """Job count and the distinct final observations (one entry if none differ)."""
    members = [mem for mem, _ in _members(target)]
    n = members[0].n
    if any(mem.n != n for mem in members):
        raise ValueError("family members must have equal job counts")
    observations = [_static_observations(mem) for mem in members]
    if len(members) == 1 or any(obs is None for obs in observations):
        if len(members) > 1:
            raise ValueError("families of history-dependent games are not supported")
        return n, []
    for j in range(n - 1):
        if len({obs[j] for obs in observations}) > 1:
            raise ValueError(f"members diverge at position {j}; only the final job may differ")
    finals = list(dict.fromkeys(obs[n - 1] for obs in observations))
    return n, finals if len(finals) > 1 else []


def _actions(m: int, used: int, symmetry: bool) -> list[tuple[Placement, int]]:
    limit = min(used + 1, m) if symmetry else m
    return [
        (Placement(k, tested), max(used, k + 1))
        for k in range(limit)
        for tested in (False, True)
    ]


def enumerate_strategies(
    target: Target,
    m: int | None = None,
    symmetry: bool = True,
    cap: int = DEFAULT_ENUM_CAP,
) -> Iterator[Strategy]:
    """Every deterministic action sequence for ``target``, in a fixed order.

    With ``symmetry`` a job may only open the lowest-index unused machine.
    A final job observed as ``(0, 0)`` costs nothing either way, so it gets
    one canonical action.
    """
    m = target.m if m is None else m
    n, finals = _branch_groups(target)
    if n > cap:
        raise EnumerationTooLarge(f"{n} jobs exceed the enumeration cap {cap}")
    if n == 0:
        yield Strategy(())
        return
    prefix_len = n - 1 if finals else n

    def prefixes(pos: int, used: int, acc: tuple[Placement, ...]):
        if pos == prefix_len:
            yield acc, used
            return
        for act, nxt in _actions(m, used, symmetry):
            yield from prefixes(pos + 1, nxt, acc + (act,))

    for prefix, used in prefixes(0, 0, ()):
        if not finals:
            yield Strategy(prefix)
            continue
        choices = []
        for obs in finals:
            if obs == (0.0, 0.0):
                choices.append([Placement(0, True)])
            else:
                choices.append([act for act, _ in _actions(m, used, symmetry)])
        for combo in itertools.product(*choices):
            branches = tuple(((n - 1, obs), act) for obs, act in zip(finals, combo))
            yield Strategy(prefix + (combo[0],), branches)


# -- lower bounds ----------------------------------------------------------


def yao_ratio(
    family: Target,
    m: int | None = None,
    symmetry: bool = True,
    claimed: float = math.nan,
    name: str = "yao",
    cap: int = DEFAULT_ENUM_CAP,
) -> BoundReport:
    """Minimum over deterministic strategies of E[alg] / E[opt]."""
    best = math.inf
    witness = None
    count = 0
    for strategy in enumerate_strategies(family, m, symmetry, cap):
        count += 1
        alg, opt = evaluate_strategy(strategy, family)
        ratio = alg / opt
        if ratio < best:
            best, witness = ratio, strategy
    return BoundReport(name, claimed, best, "lower", LOWER_TOL, witness, {"strategies": count})


def game_ratio(strategy: Strategy, game: AdaptiveGame) -> float:
    sched = play(strategy, game)
    return sched.makespan / optimal_makespan(sched.instance).opt


def det_lb_ratio(game: AdaptiveGame, symmetry: bool = True) -> BoundReport:
    """Best deterministic competitive ratio against an adaptive game."""
    best = math.inf
    witness = None
    count = 0
    for strategy in enumerate_strategies(game, symmetry=symmetry):
        count += 1
        ratio = game_ratio(strategy, game)
        if ratio < best:
            best, witness = ratio, strategy
    return BoundReport("thm6", 2.2117, best, "lower", LOWER_TOL, witness, {"strategies": count})


def structural_check(m: int) -> list[tuple[Strategy, float, float]]:
    """Strategies on the indistinguishable game that escape the makespan cases.

    For m >= 3 every strategy must give C >= 4, or C = 3 with C_min >= 2.
    For m = 2: C >= 5, or C >= 4 with C_min >= 1, or C >= 3 with C_min >= 2.
    Returns the violations (empty when the claim holds).
    """
    game = gen_indistinguishable(m)
    bad = []
    for strategy in enumerate_strategies(game, symmetry=False):
        sched = play(strategy, game)
        c, cmin = sched.makespan, sched.min_load
        if m >= 3:
            ok = c >= 4 or (c == 3 and cmin >= 2)
        else:
            ok = c >= 5 or (c >= 4 and cmin >= 1) or (c >= 3 and cmin >= 2)
        if not ok:
            bad.append((strategy, c, cmin))
    return bad


# -- upper bounds ----------------------------------------------------------


def realized_instances(item: Target, params: PolicyParams | RevisedParams) -> list[FixedInstance]:
    """Fixed instances an oblivious adversary can extract from ``item``.

    A game is played against each GCL component; each realization is a
    legitimate fixed instance on which the whole mixture is then judged.
    """
    out: list[FixedInstance] = []
    for member, _ in _members(item):
        if isinstance(member, FixedInstance):
            out.append(member)
            continue
        seen = []
        for i in range(len(params.components())):
            inst = component_schedule(member, i, params).instance
            if inst not in seen:
                seen.append(inst)
        out.extend(seen)
    return out


def gcl_ratio(instance: FixedInstance, params: PolicyParams | RevisedParams,
              cap: int = DEFAULT_OPT_CAP) -> float:
    opt = optimal_makespan(instance, cap).opt
    alg = gcl_expected_makespan(instance, params)
    if opt == 0:
        return 1.0 if alg == 0 else math.inf
    return alg / opt


def check_gcl_bound(
    corpus: Iterable[Target],
    m: int,
    ell: int | None = None,
    params: PolicyParams | RevisedParams | None = None,
    cap: int = DEFAULT_OPT_CAP,
    name: str = "gcl-bound",
) -> BoundReport:
    """Largest expected ratio over the corpus, against the proven upper bound."""
    if params is None:
        if ell is None:
            raise ValueError("either ell or params is required")
        params = thresholds(m, ell)
    claimed = params_bound(params)
    worst = 0.0
    witness = None
    count = 0
    for item in corpus:
        for inst in realized_instances(item, params):
            if inst.m != m:
                raise ValueError(f"corpus instance has m={inst.m}, expected {m}")
            count += 1
            ratio = gcl_ratio(inst, params, cap)
            if ratio > worst:
                worst, witness = ratio, inst
    return BoundReport(name, claimed, worst, "upper", EQUAL_TOL, witness, {"instances": count})


@dataclass(frozen=True)
class Lemma1Result:
    k: int
    exact: float | None
    closed_form: float


def lemma1_bound(k: int) -> float:
    n = k * (k - 1) + 1
    return k - k * (1.0 - 1.0 / n) ** n


def lemma1_expected_ratio(
    k: int, cap: int = DEFAULT_LEMMA1_CAP, closed_form_fallback: bool = False
) -> Lemma1Result:
    """Exact expected ratio of the single-machine testing probability on many machines.

    Each job is tested independently with the same probability, and the
    list-scheduled makespan depends only on how many jobs are tested, so
    outcomes are grouped by that count with binomial weights.
    """
    inst = gen_lemma1_family(k)
    n = inst.n
    if n > cap:
        if not closed_form_fallback:
            raise EnumerationTooLarge(f"{n} jobs exceed the exact enumeration cap {cap}")
        return Lemma1Result(k, None, lemma1_bound(k))
    q = test_probability_single_machine(inst.jobs[0].ratio)
    opt = optimal_makespan(inst, max(cap, DEFAULT_OPT_CAP)).opt
    terms = []
    for s in range(n + 1):
        pattern = [j < s for j in range(n)]
        sched = list_schedule(inst, lambda u, t, j, pattern=pattern: pattern[j])
        weight = math.comb(n, s) * q**s * (1.0 - q) ** (n - s)
        terms.append(weight * sched.makespan)
    return Lemma1Result(k, math.fsum(terms) / opt, lemma1_bound(k))


def lemma1_expected_ratio_bruteforce(k: int) -> float:
    """Same expectation over all 2^n test patterns; small k only."""
    inst = gen_lemma1_family(k)
    q = test_probability_single_machine(inst.jobs[0].ratio)
    terms = []
    for pattern in itertools.product((False, True), repeat=inst.n):
        s = sum(pattern)
        sched = list_schedule(inst, lambda u, t, j, pattern=pattern: pattern[j])
        terms.append(q**s * (1.0 - q) ** (inst.n - s) * sched.makespan)
    return math.fsum(terms) / optimal_makespan(inst).opt


# -- closed forms the checks compare against ---------------------------------


def thm2_claim() -> float:
    return 10.5 - math.sqrt(78.0)


def thm3_claim() -> float:
    return (21.0 + 4.0 * math.sqrt(51.0)) / 30.0


def thm6_branch_values() -> dict[str, float]:
    x0, y0 = CONSTANTS.thm6_x0, CONSTANTS.thm6_y0
    return {
        "case1_colocated": 2.0 * PHI / (PHI - x0),
        "case2_colocated": 2.0 * PHI - x0,
        "equalized": (y0 + PHI) / (PHI + 1.0 - x0),
        "equalized_tested": (2.0 * PHI + 1.0 - x0 + y0) / y0,
    }


def instance1_ratio_claim() -> float:
    return 4.0 / 3.0


