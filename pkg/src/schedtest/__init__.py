"""Fully online multiprocessor scheduling with testing."""

from .core import PHI, AdaptiveGame, FixedInstance, Job, Placement, RandomizedFamily, Schedule, makespan, rho
from .offline import OfflineResult, makespan_lower_bound, optimal_makespan
from .policies import (
    PolicyParams,
    RevisedParams,
    component_decision,
    gcl_bound,
    mixture_weights,
    revised_two_machine_params,
    thresholds,
)
from .scheduler import component_makespan, expected_job_time, gcl_expected_makespan, list_schedule

__all__ = [
    "PHI",
    "AdaptiveGame",
    "FixedInstance",
    "Job",
    "OfflineResult",
    "Placement",
    "PolicyParams",
    "RandomizedFamily",
    "RevisedParams",
    "Schedule",
    "component_decision",
    "component_makespan",
    "expected_job_time",
    "gcl_bound",
    "gcl_expected_makespan",
    "list_schedule",
    "makespan",
    "makespan_lower_bound",
    "mixture_weights",
    "optimal_makespan",
    "revised_two_machine_params",
    "rho",
    "thresholds",
]
