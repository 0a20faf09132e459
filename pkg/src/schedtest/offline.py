"""Exact offline optimum.

Offline, every job costs exactly its rho (the scheduler knows p and takes
the cheaper option), so the optimum is a min-max partition of the rho
values onto m machines.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from .core import FixedInstance

DEFAULT_OPT_CAP = 20


class InstanceTooLarge(ValueError):
    pass


@dataclass(frozen=True)
class OfflineResult:
    opt: float
    lb: float
    assignment: tuple[int, ...]

    def to_dict(self) -> dict:
        return {"opt": self.opt, "lb": self.lb, "assignment": list(self.assignment)}


def lower_bound(values, m: int) -> float:
    values = tuple(values)
    if not values:
        return 0.0
    return max(math.fsum(values) / m, max(values))


def makespan_lower_bound(instance: FixedInstance) -> float:
    """max(average rho per machine, largest rho)."""
    return lower_bound(instance.rhos(), instance.m)


def optimal_makespan(instance: FixedInstance, cap: int = DEFAULT_OPT_CAP) -> OfflineResult:
    if instance.n > cap:
        raise InstanceTooLarge(f"instance too large for exact solve: n={instance.n} > cap={cap}")
    rhos = instance.rhos()
    opt, assignment = _partition(rhos, instance.m)
    return OfflineResult(opt, lower_bound(rhos, instance.m), assignment)


def optimal_value(rhos: tuple[float, ...], m: int) -> float:
    """Cached optimum keyed by the rho multiset; used by the enumeration verifier."""
    return _optimal_sorted(tuple(sorted(rhos, reverse=True)), m)


@lru_cache(maxsize=1 << 16)
def _optimal_sorted(rhos: tuple[float, ...], m: int) -> float:
    return _partition(rhos, m)[0]


def _partition(rhos: tuple[float, ...], m: int) -> tuple[float, tuple[int, ...]]:
    n = len(rhos)
    if n == 0:
        return 0.0, ()
    order = sorted(range(n), key=lambda j: -rhos[j])
    vals = [rhos[j] for j in order]
    lb = lower_bound(vals, m)

    # incumbent: longest-processing-time greedy
    loads = [0.0] * m
    best_assign = [0] * n
    for pos, v in enumerate(vals):
        k = min(range(m), key=loads.__getitem__)
        loads[k] += v
        best_assign[pos] = k
    best = max(loads)

    suffix = [0.0] * (n + 1)
    for pos in range(n - 1, -1, -1):
        suffix[pos] = suffix[pos + 1] + vals[pos]

    loads = [0.0] * m
    current = [0] * n

    def search(pos: int, used: int) -> bool:
        """Returns True once the incumbent provably meets the lower bound."""
        nonlocal best, best_assign
        if pos == n:
            value = max(loads)
            if value < best:
                best = value
                best_assign = current.copy()
            return best <= lb
        if max(max(loads), (sum(loads) + suffix[pos]) / m) >= best:
            return False
        v = vals[pos]
        seen = set()
        # symmetry: only the first empty machine may be opened
        for k in range(min(used + 1, m)):
            if loads[k] in seen:
                continue
            seen.add(loads[k])
            if loads[k] + v >= best:
                continue
            old = loads[k]
            loads[k] = old + v
            current[pos] = k
            done = search(pos + 1, max(used, k + 1))
            loads[k] = old
            if done:
                return True
        return False

    if best > lb:
        search(0, 0)

    assignment = [0] * n
    for pos, j in enumerate(order):
        assignment[j] = best_assign[pos]
    # report the optimum summed in arrival order
    final = [0.0] * m
    for j, k in enumerate(assignment):
        final[k] += rhos[j]
    return max(final), tuple(assignment)
