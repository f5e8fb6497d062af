"""Axis sweeps and deterministic CSV serialization of results.

A sweep substitutes each axis value into the base config and evaluates every
policy with paired run seeds.  For axes that leave the channel realizations
untouched (SINR threshold, power budget), optimized phase solutions are
computed once per (run, slot) and reused across axis values and policies.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .config import ScenarioConfig, config_hash
from .engine import Aggregate, Policy, generate_run, run_episode_on_slots

SWEEP_AXES = ("l_elements", "gamma_th_db", "p_max_dbm")
# axes whose value does not enter channel generation; phases can be shared
_CHANNEL_NEUTRAL_AXES = ("gamma_th_db", "p_max_dbm")

CSV_HEADER = (
    "axis,axis_value,policy,mean_avg_sum_aoi,std,ci95_lo,ci95_hi,success_rate,runs,seed"
)


@dataclass(frozen=True)
class ResultRow:
    axis: str
    axis_value: float
    policy: str
    mean_avg_sum_aoi: float
    std: float
    ci95_lo: float
    ci95_hi: float
    success_rate: float
    runs: int
    seed: int


def _axis_value_key(v):
    try:
        return (0, float(v))
    except (TypeError, ValueError):
        return (1, str(v))


def rows_from_aggregate(axis: str, axis_value, agg: Aggregate) -> ResultRow:
    return ResultRow(
        axis=axis,
        axis_value=axis_value,
        policy=agg.policy,
        mean_avg_sum_aoi=agg.mean_avg_sum_aoi,
        std=agg.std,
        ci95_lo=agg.ci95_lo,
        ci95_hi=agg.ci95_hi,
        success_rate=agg.success_rate,
        runs=agg.runs,
        seed=agg.seed,
    )


def per_device_rows(agg: Aggregate) -> list:
    """Per-device average AoI encoded in the common schema under axis='device'."""
    rows = []
    for i, val in enumerate(agg.per_device_mean):
        rows.append(
            ResultRow(
                axis="device",
                axis_value=float(i),
                policy=agg.policy,
                mean_avg_sum_aoi=float(val),
                std=0.0,
                ci95_lo=float(val),
                ci95_hi=float(val),
                success_rate=agg.success_rate,
                runs=agg.runs,
                seed=agg.seed,
            )
        )
    return rows


def _sweep_single_run(config, axis, values, policies, seed):
    """All (axis value, policy) episode metrics for one run seed."""
    neutral = axis in _CHANNEL_NEUTRAL_AXES
    out = {}
    cache = {} if neutral else None
    slots = None
    for value in values:
        cfg = config.with_overrides(**{axis: value})
        if slots is None or not neutral:
            _, slots = generate_run(cfg, seed)
            if not neutral:
                cache = {}
        for policy in policies:
            rec = run_episode_on_slots(slots, cfg, policy, seed, cache)
            out[(value, policy.name)] = rec
    return out


def run_sweep(
    config: ScenarioConfig,
    axis: str,
    values,
    policies,
    runs: int | None = None,
    base_seed: int | None = None,
    n_jobs: int = 1,
) -> list:
    """Monte Carlo evaluation of every axis value x policy; paired seeds.

    Returns a flat list of ResultRow, ordered by (axis_value, policy name).
    """
    if axis not in SWEEP_AXES:
        raise ValueError(f"axis must be one of {SWEEP_AXES}, got {axis!r}")
    values = list(values)
    if not values:
        raise ValueError("values list must be non-empty")
    policies = list(policies)
    runs = config.mc_runs if runs is None else runs
    base_seed = config.seed if base_seed is None else base_seed
    seeds = [base_seed + r for r in range(runs)]

    if n_jobs != 1:
        from joblib import Parallel, delayed

        per_run = Parallel(n_jobs=n_jobs)(
            delayed(_sweep_single_run)(config, axis, values, policies, s) for s in seeds
        )
    else:
        per_run = [_sweep_single_run(config, axis, values, policies, s) for s in seeds]

    rows = []
    for value in values:
        for policy in policies:
            vals = np.array([pr[(value, policy.name)].avg_sum_aoi for pr in per_run])
            succ = np.array([pr[(value, policy.name)].success_rate for pr in per_run])
            mean = float(vals.mean())
            std = float(vals.std(ddof=1)) if runs > 1 else 0.0
            half = 1.96 * std / math.sqrt(runs) if runs > 1 else 0.0
            rows.append(
                ResultRow(
                    axis=axis,
                    axis_value=float(value),
                    policy=policy.name,
                    mean_avg_sum_aoi=mean,
                    std=std,
                    ci95_lo=mean - half,
                    ci95_hi=mean + half,
                    success_rate=float(succ.mean()),
                    runs=runs,
                    seed=base_seed,
                )
            )
    rows.sort(key=lambda r: (r.axis, _axis_value_key(r.axis_value), r.policy))
    return rows


def sweep_per_run_values(
    config: ScenarioConfig, axis: str, values, policies, runs: int, base_seed: int,
    n_jobs: int = 1,
):
    """Raw per-run avg_sum_aoi arrays keyed (axis_value, policy); used for
    paired statistical tests."""
    policies = list(policies)
    seeds = [base_seed + r for r in range(runs)]
    if n_jobs != 1:
        from joblib import Parallel, delayed

        per_run = Parallel(n_jobs=n_jobs)(
            delayed(_sweep_single_run)(config, axis, values, policies, s) for s in seeds
        )
    else:
        per_run = [_sweep_single_run(config, axis, values, policies, s) for s in seeds]
    return {
        (v, p.name): np.array([pr[(v, p.name)].avg_sum_aoi for pr in per_run])
        for v in values
        for p in policies
    }


def _fmt(x: float) -> str:
    return f"{x:.9g}"


def write_results(table, path, metadata: dict | None = None) -> None:
    """Deterministic CSV dump.  Optional metadata is written as '#key=value'
    comment lines before the header and ignored by the schema check."""
    rows = sorted(
        table, key=lambda r: (r.axis, _axis_value_key(r.axis_value), r.policy)
    )
    lines = []
    for key in sorted(metadata or {}):
        lines.append(f"#{key}={metadata[key]}")
    lines.append(CSV_HEADER)
    for r in rows:
        lines.append(
            ",".join(
                [
                    r.axis,
                    _fmt(float(r.axis_value)),
                    r.policy,
                    _fmt(r.mean_avg_sum_aoi),
                    _fmt(r.std),
                    _fmt(r.ci95_lo),
                    _fmt(r.ci95_hi),
                    _fmt(r.success_rate),
                    str(r.runs),
                    str(r.seed),
                ]
            )
        )
    with open(path, "w", newline="") as fh:
        fh.write("\n".join(lines) + "\n")


def metadata_for(config: ScenarioConfig) -> dict:
    return {"config_hash": config_hash(config), "seed": config.seed}
