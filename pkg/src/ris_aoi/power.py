"""SINR expressions and the closed-form per-cluster power feasibility range.

The strong device always transmits at P_max; the weak device's power is set
to the lower end of the feasible interval when the cluster is jointly
feasible, and otherwise one of two fallback options (favor weak / favor
strong) is chosen to minimize the resulting cluster sum AoI.
"""

from __future__ import annotations

import math
from dataclasses import dataclass


@dataclass(frozen=True)
class LinkBudget:
    strong_gain: float           # |h_sb|^2, linear
    weak_effective_gain: float   # G_w from effective_gain, linear
    noise_power: float           # sigma^2, watts
    sinr_threshold: float        # gamma_th, linear
    p_max: float                 # watts

    def __post_init__(self):
        if self.noise_power <= 0 or self.sinr_threshold <= 0 or self.p_max <= 0:
            raise ValueError("noise power, SINR threshold and p_max must be > 0")
        if self.strong_gain < 0 or self.weak_effective_gain < 0:
            raise ValueError("gains must be >= 0")


@dataclass(frozen=True)
class PowerDecision:
    p_strong: float
    p_weak: float
    strong_success: bool
    weak_success: bool
    jointly_feasible: bool


def sinr_strong(p_s: float, p_w: float, budget: LinkBudget) -> float:
    """Strong-device SINR: weak signal is decoded later, so it interferes."""
    if p_s < 0 or p_w < 0:
        raise ValueError("powers must be >= 0")
    return p_s * budget.strong_gain / (
        p_w * budget.weak_effective_gain + budget.noise_power
    )


def sinr_weak(p_w: float, budget: LinkBudget) -> float:
    """Weak-device SINR after SIC: interference-free."""
    if p_w < 0:
        raise ValueError("power must be >= 0")
    return p_w * budget.weak_effective_gain / budget.noise_power


def _bump_up(p: float, budget: LinkBudget) -> float:
    # counter last-ulp rounding so sinr_weak(p) >= threshold holds exactly
    for _ in range(4):
        if sinr_weak(p, budget) >= budget.sinr_threshold:
            return p
        p = math.nextafter(p, math.inf)
    return p

def _bump_down(p: float, budget: LinkBudget) -> float:
    for _ in range(4):
        if sinr_strong(budget.p_max, p, budget) >= budget.sinr_threshold:
            return p
        p = math.nextafter(p, 0.0)
    return p


def weak_power_bounds(budget: LinkBudget):
    """Feasible weak-power interval (p_min, p_max_eff) with the strong device
    at P_max.  Jointly feasible iff p_min <= p_max_eff.  A zero weak gain
    yields p_min = +inf (infeasible at any power)."""
    g_w = budget.weak_effective_gain
    gamma, sigma2 = budget.sinr_threshold, budget.noise_power
    headroom = max(budget.p_max * budget.strong_gain - gamma * sigma2, 0.0)
    if g_w == 0.0:
        return math.inf, budget.p_max
    p_min = gamma * sigma2 / g_w
    p_cap = headroom / (gamma * g_w)
    p_min = _bump_up(p_min, budget)
    if p_cap < budget.p_max:
        p_cap = _bump_down(p_cap, budget)
    p_max_eff = min(p_cap, budget.p_max)
    return p_min, p_max_eff


def allocate_cluster_power(budget: LinkBudget, age_strong: int, age_weak: int) -> PowerDecision:
    """Power decision for one candidate cluster given the devices' ages."""
    if age_strong < 0 or age_weak < 0:
        raise ValueError("ages must be >= 0")
    p_min, p_max_eff = weak_power_bounds(budget)
    if p_min <= p_max_eff:
        return PowerDecision(
            p_strong=budget.p_max,
            p_weak=p_min,
            strong_success=True,
            weak_success=True,
            jointly_feasible=True,
        )

    strong_alone_ok = (
        budget.p_max * budget.strong_gain / budget.noise_power >= budget.sinr_threshold
    )
    favor_weak_possible = p_min <= budget.p_max

    # resulting cluster sum AoI per option (ages after this slot's outcome)
    favor_strong_sum = (1 if strong_alone_ok else age_strong + 1) + (age_weak + 1)
    favor_weak_sum = (age_strong + 1) + 1 if favor_weak_possible else math.inf

    if favor_weak_possible and favor_weak_sum <= favor_strong_sum:
        return PowerDecision(
            p_strong=budget.p_max,
            p_weak=p_min,
            strong_success=False,
            weak_success=True,
            jointly_feasible=False,
        )
    return PowerDecision(
        p_strong=budget.p_max,
        p_weak=0.0,
        strong_success=strong_alone_ok,
        weak_success=False,
        jointly_feasible=False,
    )


def max_power_decision(budget: LinkBudget) -> PowerDecision:
    """Baseline rule: both devices simply transmit at P_max."""
    s_ok = sinr_strong(budget.p_max, budget.p_max, budget) >= budget.sinr_threshold
    w_ok = sinr_weak(budget.p_max, budget) >= budget.sinr_threshold
    p_min, p_max_eff = weak_power_bounds(budget)
    return PowerDecision(
        p_strong=budget.p_max,
        p_weak=budget.p_max,
        strong_success=s_ok,
        weak_success=w_ok,
        jointly_feasible=p_min <= p_max_eff,
    )
