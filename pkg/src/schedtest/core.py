"""Jobs, instances, adaptive games and schedules.

A job offers two ways to run it: untested for its upper bound ``u``, or
tested for ``t`` and then executed for its true time ``p``.  Online
algorithms see ``(u, t)`` at arrival; ``p`` is only revealed by testing.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any, Callable, Iterable, Sequence, Union

PHI = (1.0 + math.sqrt(5.0)) / 2.0

# probabilities of a randomized family must sum to one within this
PROB_TOL = 1e-12


@dataclass(frozen=True)
class Job:
    u: float
    t: float
    p: float = 0.0

    def __post_init__(self) -> None:
        if min(self.u, self.t, self.p) < 0 or any(map(math.isnan, (self.u, self.t, self.p))):
            raise ValueError(f"job values must be nonnegative: {self}")
        if self.p > self.u:
            raise ValueError(f"hidden time p={self.p} exceeds upper bound u={self.u}")

    @property
    def ratio(self) -> float:
        """u/t, with free tests (t = 0) mapped to +inf."""
        if self.t == 0:
            return math.inf
        return self.u / self.t

    @property
    def rho(self) -> float:
        return rho(self)

    def charged(self, tested: bool) -> float:
        """Time this job occupies its machine under the given test decision."""
        return self.t + self.p if tested else self.u


def rho(job: Job) -> float:
    """Offline cost of a job: the cheaper of running untested or testing."""
    return min(job.u, job.t + job.p)


@dataclass(frozen=True)
class FixedInstance:
    m: int
    jobs: tuple[Job, ...] = ()

    def __post_init__(self) -> None:
        if not isinstance(self.m, int) or self.m < 1:
            raise ValueError(f"machine count must be a positive integer, got {self.m!r}")
        object.__setattr__(self, "jobs", tuple(self.jobs))

    @property
    def n(self) -> int:
        return len(self.jobs)

    @property
    def observed(self) -> tuple[tuple[float, float], ...]:
        return tuple((j.u, j.t) for j in self.jobs)

    def rhos(self) -> tuple[float, ...]:
        return tuple(rho(j) for j in self.jobs)


@dataclass(frozen=True)
class Placement:
    """One online decision: which machine and whether the job is tested."""

    machine: int
    tested: bool


History = Sequence[Placement]


@dataclass(frozen=True, eq=False)
class AdaptiveGame:
    """An instance whose hidden times are chosen in response to the algorithm.

    ``observe(j, history)`` gives job ``j``'s ``(u, t)`` from the decisions
    on jobs ``0..j-1``.  ``respond(j, history, plan)`` reveals ``p_j`` for a
    tested job, where ``history`` holds decisions ``0..j`` and ``plan`` the
    test flags of every job the caller has committed to (at least ``0..j``).
    ``finalize(history)`` returns the whole ``p`` vector for a complete
    decision history and agrees with every value ``respond`` revealed.
    """

    m: int
    n: int
    rule: str
    observe: Callable[[int, History], tuple[float, float]]
    respond: Callable[[int, History, Sequence[bool]], float]
    finalize: Callable[[History], tuple[float, ...]]
    static: bool = True
    params: dict[str, Any] = field(default_factory=dict)

    @property
    def observed(self) -> tuple[tuple[float, float], ...]:
        """Observation list for a history-independent game (empty history otherwise)."""
        out: list[tuple[float, float]] = []
        for j in range(self.n):
            out.append(self.observe(j, ()))
        return tuple(out)

    def realize(self, history: History) -> FixedInstance:
        """Fixed instance produced by playing the complete ``history``."""
        if len(history) != self.n:
            raise ValueError(f"history has {len(history)} decisions, game has {self.n} jobs")
        ps = self.finalize(history)
        jobs = []
        for j in range(self.n):
            u, t = self.observe(j, history[:j])
            jobs.append(Job(u, t, ps[j]))
        return FixedInstance(self.m, tuple(jobs))


Member = Union[FixedInstance, AdaptiveGame]


@dataclass(frozen=True)
class RandomizedFamily:
    members: tuple[tuple[Member, float], ...]

    def __post_init__(self) -> None:
        members = tuple((inst, float(prob)) for inst, prob in self.members)
        object.__setattr__(self, "members", members)
        if not members:
            raise ValueError("a randomized family needs at least one member")
        if any(not 0.0 <= prob <= 1.0 for _, prob in members):
            raise ValueError("member probabilities must lie in [0, 1]")
        total = math.fsum(prob for _, prob in members)
        if abs(total - 1.0) > PROB_TOL:
            raise ValueError(f"member probabilities sum to {total!r}, not 1")
        if len({inst.m for inst, _ in members}) != 1:
            raise ValueError("all members must share the machine count")

    @property
    def m(self) -> int:
        return self.members[0][0].m


@dataclass(frozen=True)
class Schedule:
    """Placements of a realized instance, in arrival order."""

    instance: FixedInstance
    placements: tuple[Placement, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "placements", tuple(self.placements))
        if len(self.placements) != self.instance.n:
            raise ValueError("one placement per job is required")
        for pl in self.placements:
            if not 0 <= pl.machine < self.instance.m:
                raise IndexError(f"machine index {pl.machine} out of range for m={self.instance.m}")

    @property
    def m(self) -> int:
        return self.instance.m

    @property
    def charged(self) -> tuple[float, ...]:
        return tuple(job.charged(pl.tested) for job, pl in zip(self.instance.jobs, self.placements))

    @property
    def loads(self) -> tuple[float, ...]:
        return machine_loads(self.placements, self.instance)

    @property
    def makespan(self) -> float:
        return max(self.loads)

    @property
    def min_load(self) -> float:
        return min(self.loads)


def machine_loads(placements: Iterable[Placement], instance: FixedInstance) -> tuple[float, ...]:
    loads = [0.0] * instance.m
    placements = tuple(placements)
    if len(placements) != instance.n:
        raise ValueError("one placement per job is required")
    for job, pl in zip(instance.jobs, placements):
        if not 0 <= pl.machine < instance.m:
            raise IndexError(f"machine index {pl.machine} out of range for m={instance.m}")
        loads[pl.machine] += job.charged(pl.tested)
    return tuple(loads)


def makespan(schedule: Schedule | Sequence[Placement], instance: FixedInstance | None = None) -> float:
    """Maximum machine load; accepts a Schedule or bare placements plus an instance."""
    if isinstance(schedule, Schedule):
        placements = schedule.placements
        instance = schedule.instance if instance is None else instance
    else:
        placements = tuple(schedule)
    if instance is None:
        raise ValueError("an instance is required to price bare placements")
    return max(machine_loads(placements, instance))
