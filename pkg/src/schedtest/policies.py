"""Parameters and test-decision rules of the GCL mixture.

GCL runs component ``A_0`` (test iff ``r > phi``) with probability
``alpha`` and each of ``A_1..A_ell`` with probability ``beta``.  Component
``A_i`` skips a job iff ``r <= x_i`` or ``phi < r <= y_i``.

``m`` and ``ell`` may be ``math.inf`` wherever a closed-form limit exists.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .core import PHI

LIMIT = math.inf


def _check_m_ell(m: float, ell: float) -> None:
    for name, value, low in (("m", m, 2), ("ell", ell, 1)):
        if value != math.inf and (int(value) != value or value < low):
            raise ValueError(f"{name} must be an integer >= {low} or math.inf, got {value!r}")


def _machine_factor(m: float) -> float:
    # 1 - 1/m, exact 1.0 in the limit
    return 1.0 - 1.0 / m


def mixture_weights(m: float, ell: float) -> tuple[float, float]:
    """Probability ``alpha`` of running A_0 and ``beta`` of each other component."""
    _check_m_ell(m, ell)
    c = _machine_factor(m)
    # (ell+1)/ell form keeps the ell -> inf limit finite
    num = c * (1.0 + 1.0 / ell) * PHI**2
    alpha = math.sqrt(num / (num + 2.0))
    beta = (1.0 - alpha) / ell
    return alpha, beta


@dataclass(frozen=True)
class PolicyParams:
    m: int
    ell: int
    alpha: float
    beta: float
    x: tuple[float, ...]
    y: tuple[float, ...]

    def components(self) -> tuple[tuple[float, float, float], ...]:
        """``(weight, x_i, y_i)`` for each component, A_0 first."""
        weights = (self.alpha,) + (self.beta,) * self.ell
        return tuple(zip(weights, self.x, self.y))

    def to_dict(self) -> dict:
        return {
            "m": self.m,
            "ell": self.ell,
            "alpha": self.alpha,
            "beta": self.beta,
            "x": list(self.x),
            "y": list(self.y),
        }


@dataclass(frozen=True)
class RevisedParams:
    """Two-component variant for two machines."""

    alpha: float
    x1: float
    y1: float

    m: int = 2

    def components(self) -> tuple[tuple[float, float, float], ...]:
        return ((self.alpha, PHI, PHI), (1.0 - self.alpha, self.x1, self.y1))

    def to_dict(self) -> dict:
        return {"alpha": self.alpha, "x1": self.x1, "y1": self.y1}


def thresholds(m: int, ell: int) -> PolicyParams:
    """Full parameter set for finite ``m`` and ``ell``."""
    _check_m_ell(m, ell)
    if math.isinf(m) or math.isinf(ell):
        raise ValueError("thresholds need finite m and ell; use limit_thresholds")
    m, ell = int(m), int(ell)
    alpha, beta = mixture_weights(m, ell)
    y = tuple(PHI * (alpha + i * beta) / alpha for i in range(ell + 1))
    # i = 0 is phi by construction; pin it to avoid a rounding wobble
    y = (PHI,) + y[1:]
    x = tuple(1.0 + 1.0 / yi for yi in y)
    return PolicyParams(m, ell, alpha, beta, x, y)


def limit_thresholds(m: float) -> tuple[float, float, float]:
    """``(alpha(m), x(m), y(m))``: the ell -> inf limits of alpha, x_ell, y_ell."""
    alpha, _ = mixture_weights(m, LIMIT)
    y = PHI / alpha
    return alpha, 1.0 + 1.0 / y, y


def skips(r: float, x: float, y: float) -> bool:
    return r <= x or PHI < r <= y


def component_decision(r: float, i: int, params: PolicyParams | RevisedParams) -> bool:
    """True iff component ``i`` tests a job with ratio ``r``."""
    comps = params.components()
    if not 0 <= i < len(comps):
        raise IndexError(f"component index {i} out of range 0..{len(comps) - 1}")
    _, x, y = comps[i]
    return not skips(r, x, y)


def revised_two_machine_params() -> RevisedParams:
    alpha = PHI - 1.0
    x1 = (PHI + math.sqrt(13.0 - 7.0 * PHI)) / 2.0
    return RevisedParams(alpha, x1, 1.0 / (x1 - 1.0))


def gcl_bound(m: float, ell: float) -> float:
    """Upper bound on the expected competitive ratio of GCL."""
    _check_m_ell(m, ell)
    c = _machine_factor(m)
    k = 1.0 + 1.0 / ell
    return math.sqrt(c * c * k * k * PHI**2 + 2.0 * c * k) + 1.0 - c * PHI / ell


def revised_bound() -> float:
    """Tight expected ratio of the two-machine revision, 3 x_1 / 2."""
    return 1.5 * revised_two_machine_params().x1


def params_bound(params: PolicyParams | RevisedParams) -> float:
    if isinstance(params, RevisedParams):
        return revised_bound()
    return gcl_bound(params.m, params.ell)


def test_probability_single_machine(r: float) -> float:
    """Classic single-machine testing probability r(r-1)/(r(r-1)+1)."""
    if r <= 1.0:
        return 0.0
    if math.isinf(r):
        return 1.0
    q = r * (r - 1.0)
    return q / (q + 1.0)


def test_probability_limit(r: float, m: float) -> float:
    """GCL's testing probability as a function of ``r`` when ell -> inf."""
    alpha, x, y = limit_thresholds(m)
    if r <= x:
        return 0.0
    if r <= PHI:
        return 1.0 - alpha / (PHI * (r - 1.0))
    if r <= y:
        return alpha * r / PHI
    return 1.0


# keep pytest from collecting the two public probability helpers as tests
test_probability_single_machine.__test__ = False  # type: ignore[attr-defined]
test_probability_limit.__test__ = False  # type: ignore[attr-defined]
