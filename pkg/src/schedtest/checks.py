"""Named certification checks, each producing a BoundReport."""

from __future__ import annotations

import math
import random
from typing import Callable, Iterable

from .adversary import (
    gen_indistinguishable,
    gen_single_job_randomized,
    gen_theorem2_family,
    gen_theorem3_family,
    gen_theorem6_game,
    gen_tightness_two_machine,
    gen_uniform_forced_test,
    gen_lemma1_family,
)
from .core import PHI, FixedInstance, Job
from .offline import DEFAULT_OPT_CAP, optimal_makespan
from .policies import (
    LIMIT,
    gcl_bound,
    limit_thresholds,
    mixture_weights,
    revised_bound,
    revised_two_machine_params,
    thresholds,
)
from .scheduler import gcl_expected_makespan
from .verifier import (
    DEFAULT_ENUM_CAP,
    EQUAL_TOL,
    BoundReport,
    check_gcl_bound,
    det_lb_ratio,
    gcl_ratio,
    lemma1_expected_ratio,
    realized_instances,
    structural_check,
    thm2_claim,
    thm3_claim,
    yao_ratio,
)

GRID_M = (2, 3, 4, 8)
GRID_ELL = (1, 2, 4)


def random_job(rng: random.Random) -> Job:
    u = 10.0 * (1.0 - rng.random())  # (0, 10]
    t = 2.0 * u * (1.0 - rng.random())  # (0, 2u]
    return Job(u, t, u * rng.random())


def random_instance(rng: random.Random, m: int, max_n: int = 12) -> FixedInstance:
    n = rng.randint(1, max_n)
    return FixedInstance(m, tuple(random_job(rng) for _ in range(n)))


def random_corpus(m: int, size: int, seed: int, max_n: int = 12) -> list[FixedInstance]:
    rng = random.Random(f"{seed}:{m}")
    return [random_instance(rng, m, max_n) for _ in range(size)]


def adversarial_corpus(m: int) -> list:
    """Every lower-bound and tightness construction that lives on m machines."""
    out: list = [gen_single_job_randomized(m), gen_uniform_forced_test(m), gen_indistinguishable(m)]
    if m >= 3:
        out.append(gen_theorem2_family(m))
    if m == 2:
        out += [gen_theorem3_family(), gen_tightness_two_machine(), gen_theorem6_game()]
    for k in range(2, 6):
        if k * (k - 1) + 1 == m:
            out.append(gen_lemma1_family(k))
    return out


# -- individual checks -------------------------------------------------------


def check_thm4_constants() -> list[BoundReport]:
    return [
        BoundReport("thm4-limit", math.sqrt(PHI + 3.0) + 1.0, gcl_bound(LIMIT, LIMIT), "equal", EQUAL_TOL),
        BoundReport("thm4-two-machine-limit", 0.5 * math.sqrt(PHI + 5.0) + 1.0,
                    gcl_bound(2, LIMIT), "equal", EQUAL_TOL),
    ]


def check_thm5_tight(params=None) -> BoundReport:
    params = revised_two_machine_params() if params is None else params
    inst = gen_tightness_two_machine()
    ratio = gcl_expected_makespan(inst, params) / optimal_makespan(inst).opt
    claimed = (3.0 * PHI + 3.0 * math.sqrt(13.0 - 7.0 * PHI)) / 4.0
    return BoundReport("thm5-tight", claimed, ratio, "equal", EQUAL_TOL, inst)


def check_thm2(m: int = 3, symmetry: bool = True, cap: int = DEFAULT_ENUM_CAP) -> BoundReport:
    return yao_ratio(gen_theorem2_family(m), claimed=thm2_claim(), name=f"thm2[m={m}]",
                     symmetry=symmetry, cap=cap)


def check_thm3(symmetry: bool = True, cap: int = DEFAULT_ENUM_CAP) -> BoundReport:
    return yao_ratio(gen_theorem3_family(), claimed=thm3_claim(), name="thm3",
                     symmetry=symmetry, cap=cap)


def check_thm6() -> BoundReport:
    return det_lb_ratio(gen_theorem6_game())


def check_inst1() -> BoundReport:
    rep = yao_ratio(gen_single_job_randomized(), claimed=4.0 / 3.0, name="inst1")
    return BoundReport(rep.name, rep.claimed, rep.computed, "equal", 1e-12, rep.witness, rep.details)


def check_inst2(m: int, ell: int = 1) -> BoundReport:
    """GCL on the forced-test game; C* is trivial so the solve cap is lifted to n."""
    game = gen_uniform_forced_test(m)
    params = thresholds(m, ell)
    ratios = [gcl_ratio(inst, params, cap=game.n) for inst in realized_instances(game, params)]
    return BoundReport(f"inst2[m={m}]", 2.0 - 1.0 / m, max(ratios), "equal", 1e-12,
                       details={"realizations": len(ratios)})


def check_lemma1(k: int) -> BoundReport:
    res = lemma1_expected_ratio(k, closed_form_fallback=True)
    computed = res.closed_form if res.exact is None else res.exact
    return BoundReport(f"lemma1[k={k}]", res.closed_form, computed, "lower", 0.0,
                       details={"exact": res.exact, "closed_form_only": res.exact is None})


def check_structure(m: int) -> BoundReport:
    bad = structural_check(m)
    name = "lemma6" if m >= 3 else "lemma7"
    return BoundReport(f"{name}[m={m}]", 0.0, float(len(bad)), "equal", 0.0,
                       bad[0][0] if bad else None, {"violations": len(bad)})


def check_bounds_grid(
    size: int = 1000,
    seed: int = 0,
    grid_m: Iterable[int] = GRID_M,
    grid_ell: Iterable[int] = GRID_ELL,
) -> list[BoundReport]:
    reports = []
    for m in grid_m:
        corpus = random_corpus(m, size, seed)
        for ell in grid_ell:
            reports.append(check_gcl_bound(corpus, m, ell, name=f"bounds[m={m},ell={ell}]"))
            for item in adversarial_corpus(m):
                n = max(inst.n for inst in realized_instances(item, thresholds(m, ell)))
                rep = check_gcl_bound([item], m, ell, cap=max(DEFAULT_OPT_CAP, n),
                                      name=f"bounds-adv[m={m},ell={ell},{_label(item)}]")
                reports.append(rep)
        if m == 2:
            reports.append(check_gcl_bound(corpus + adversarial_corpus(2), 2,
                                           params=revised_two_machine_params(),
                                           name="bounds-revised[m=2]"))
    return reports


def _label(item) -> str:
    rule = getattr(item, "rule", None)
    if rule:
        return rule
    if hasattr(item, "members"):
        first = item.members[0][0]
        return getattr(first, "rule", "family").split(":")[0]
    return f"fixed-n{item.n}"


# -- registry ---------------------------------------------------------------

CHECKS: dict[str, Callable[..., list[BoundReport]]] = {
    "thm4": lambda **kw: check_thm4_constants(),
    "thm5-tight": lambda **kw: [check_thm5_tight()],
    "thm2": lambda **kw: [check_thm2(m, cap=kw.get("cap_enum", DEFAULT_ENUM_CAP))
                          for m in kw.get("m_values") or (3,)],
    "thm3": lambda **kw: [check_thm3(cap=kw.get("cap_enum", DEFAULT_ENUM_CAP))],
    "thm6": lambda **kw: [check_thm6()],
    "inst1": lambda **kw: [check_inst1()],
    "inst2": lambda **kw: [check_inst2(m) for m in kw.get("m_values") or (2, 3, 4, 5)],
    "lemma1": lambda **kw: [check_lemma1(k) for k in kw.get("k_values") or (2, 3, 4, 5)],
    "lemma6": lambda **kw: [check_structure(3)],
    "lemma7": lambda **kw: [check_structure(2)],
    "bounds": lambda **kw: check_bounds_grid(kw.get("size", 1000), kw.get("seed", 0)),
}


def sweep(m_values: Iterable[float], ell_values: Iterable[float]) -> list[dict]:
    """Parameter and bound table; ``increasing_in_m`` compares with the previous m at the same ell."""
    m_values, ell_values = list(m_values), list(ell_values)
    if not m_values or not ell_values:
        raise ValueError("sweep needs at least one m and one ell")
    rows = []
    previous: dict[float, float] = {}
    for m in m_values:
        for ell in ell_values:
            alpha, beta = mixture_weights(m, ell)
            y_last = PHI / alpha  # alpha + ell * beta = 1
            bound = gcl_bound(m, ell)
            prev = previous.get(ell)
            rows.append({
                "m": m,
                "ell": ell,
                "alpha": alpha,
                "beta": beta,
                "x_ell": 1.0 + 1.0 / y_last,
                "y_ell": y_last,
                "gcl_bound": bound,
                "increasing_in_m": None if prev is None else bound > prev,
            })
            previous[ell] = bound
    return rows


__all__ = [
    "CHECKS",
    "adversarial_corpus",
    "check_bounds_grid",
    "limit_thresholds",
    "random_corpus",
    "revised_bound",
    "sweep",
]
