"""Per-slot pairing: cost matrix construction and optimal assignment.

The assignment core is scipy's linear_sum_assignment; among cost-equal optima
the lexicographically smallest pairing is returned so runs are reproducible
regardless of solver-internal tie handling.  Optimality is cross-checked
against full permutation enumeration in the tests.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import linear_sum_assignment

from .channel import ChannelSlot, effective_gain
from .power import LinkBudget, allocate_cluster_power, max_power_decision


@dataclass(frozen=True)
class CostMatrix:
    values: np.ndarray  # (I, I); entry (s, w) = resulting A_s + A_w if paired


@dataclass(frozen=True)
class Assignment:
    pairing: np.ndarray  # pairing[s] = weak index assigned to strong s
    total_cost: float


def weak_gains(slot: ChannelSlot, theta) -> np.ndarray:
    """Effective gain per weak device; theta=None means no RIS (direct only)."""
    if theta is None:
        return np.abs(slot.h_wb) ** 2
    return np.array(
        [
            effective_gain(slot.h_wr[w], theta, slot.h_rb, slot.h_wb[w])
            for w in range(slot.n_weak)
        ]
    )


def build_cost_matrix(
    ages_strong: np.ndarray,
    ages_weak: np.ndarray,
    slot: ChannelSlot,
    theta,
    noise_power: float,
    sinr_threshold: float,
    p_max: float,
    power_mode: str = "feasibility",
) -> CostMatrix:
    """Resulting sum AoI for every candidate (strong, weak) pair."""
    n = slot.n_weak
    gains_w = weak_gains(slot, theta)
    gains_s = np.abs(slot.h_sb) ** 2
    values = np.empty((n, n))
    for s in range(n):
        for w in range(n):
            budget = LinkBudget(
                strong_gain=float(gains_s[s]),
                weak_effective_gain=float(gains_w[w]),
                noise_power=noise_power,
                sinr_threshold=sinr_threshold,
                p_max=p_max,
            )
            if power_mode == "max":
                dec = max_power_decision(budget)
            else:
                dec = allocate_cluster_power(budget, int(ages_strong[s]), int(ages_weak[w]))
            a_s = 1 if dec.strong_success else int(ages_strong[s]) + 1
            a_w = 1 if dec.weak_success else int(ages_weak[w]) + 1
            values[s, w] = a_s + a_w
    return CostMatrix(values=values)


def hungarian(cost: CostMatrix) -> Assignment:
    """Minimum-total-cost perfect matching; ties broken by the
    lexicographically smallest pairing vector."""
    values = np.asarray(cost.values, dtype=float)
    if values.ndim != 2 or values.shape[0] != values.shape[1]:
        raise ValueError("cost matrix must be square")
    if not np.all(np.isfinite(values)):
        raise ValueError("cost matrix entries must be finite")
    n = values.shape[0]

    def optimum(matrix):
        rows, cols = linear_sum_assignment(matrix)
        return float(matrix[rows, cols].sum())

    total = optimum(values)
    tol = 1e-9 * max(1.0, float(np.abs(values).max())) * n
    pairing = np.empty(n, dtype=int)
    free_w = list(range(n))
    remaining = total
    for s in range(n):
        sub = values[s + 1 :, :]
        for w in sorted(free_w):
            rest_cols = [c for c in free_w if c != w]
            rest = sub[:, rest_cols] if rest_cols else sub[:, :0]
            rest_cost = optimum(rest) if rest.size else 0.0
            if values[s, w] + rest_cost <= remaining + tol:
                pairing[s] = w
                free_w.remove(w)
                remaining -= values[s, w]
                break
        else:  # pragma: no cover - defensive, optimum always extendable
            raise RuntimeError("failed to extend optimal assignment")
    return Assignment(pairing=pairing, total_cost=total)
