"""Command line front-end: run / sweep / oracle subcommands."""

from __future__ import annotations

import argparse
import sys

import numpy as np

from .config import ConfigError, ScenarioConfig, parse_config
from .engine import POLICIES, monte_carlo
from .experiments import (
    SWEEP_AXES,
    metadata_for,
    per_device_rows,
    rows_from_aggregate,
    run_sweep,
    write_results,
)


def _load_config(args) -> ScenarioConfig:
    config = parse_config(args.config) if args.config else ScenarioConfig()
    overrides = {}
    if args.seed is not None:
        overrides["seed"] = args.seed
    if args.runs is not None:
        overrides["mc_runs"] = args.runs
    return config.with_overrides(**overrides) if overrides else config


def _parse_policies(arg: str):
    names = [s.strip() for s in arg.split(",") if s.strip()]
    unknown = [n for n in names if n not in POLICIES]
    if unknown:
        raise ConfigError(
            f"unknown policy name(s): {', '.join(unknown)}; "
            f"available: {', '.join(sorted(POLICIES))}"
        )
    return [POLICIES[n] for n in names]


def _cmd_run(args) -> int:
    config = _load_config(args)
    policies = _parse_policies(args.policies)
    result = monte_carlo(
        config, policies, runs=config.mc_runs, base_seed=config.seed, n_jobs=args.jobs
    )
    rows = []
    for policy in policies:
        agg = result[policy.name]
        rows.append(rows_from_aggregate("l_elements", config.l_elements, agg))
        rows.extend(per_device_rows(agg))
    write_results(rows, args.out, metadata=metadata_for(config))
    for policy in policies:
        agg = result[policy.name]
        print(
            f"{policy.name}: avg_sum_aoi={agg.mean_avg_sum_aoi:.4f} "
            f"+-{agg.ci95_hi - agg.mean_avg_sum_aoi:.4f} "
            f"success_rate={agg.success_rate:.4f}"
        )
    print(f"wrote {args.out}")
    return 0


def _cmd_sweep(args) -> int:
    config = _load_config(args)
    policies = _parse_policies(args.policies)
    values = [float(v) for v in args.values.split(",")]
    if args.axis == "l_elements":
        values = [int(v) for v in values]
    rows = run_sweep(
        config,
        args.axis,
        values,
        policies,
        runs=config.mc_runs,
        base_seed=config.seed,
        n_jobs=args.jobs,
    )
    write_results(rows, args.out, metadata=metadata_for(config))
    for r in rows:
        print(
            f"{r.axis}={r.axis_value:g} {r.policy}: "
            f"{r.mean_avg_sum_aoi:.4f} [{r.ci95_lo:.4f}, {r.ci95_hi:.4f}]"
        )
    print(f"wrote {args.out}")
    return 0


def _cmd_oracle(args) -> int:
    """Small brute-force validation suites (quick versions of the test oracles)."""
    from .channel import effective_gain, single_user_gain_bound
    from .clustering import CostMatrix, hungarian
    from .phase_opt import (
        exhaustive_phase_oracle,
        lifted_instance_from_slot,
        optimize_phases,
    )
    from .power import LinkBudget, sinr_strong, sinr_weak, weak_power_bounds
    from .testkit import random_slot
    from itertools import permutations

    rng = np.random.default_rng(args.seed if args.seed is not None else 0)
    failures = 0

    # lifting identity
    bad = 0
    for _ in range(200):
        slot = random_slot(rng, l_elements=int(rng.integers(1, 9)), n_weak=1)
        inst = lifted_instance_from_slot(slot)
        theta = rng.uniform(0, 2 * np.pi, slot.l_elements)
        v = np.exp(-1j * theta)
        vbar = np.concatenate([v, [1.0]])
        lifted = np.real(vbar.conj() @ inst.thetas[0] @ vbar) + inst.direct_powers[0]
        direct = effective_gain(slot.h_wr[0], theta, slot.h_rb, slot.h_wb[0])
        if abs(lifted - direct) > 1e-10 * max(1.0, direct):
            bad += 1
    print(f"lifting identity: {'PASS' if bad == 0 else f'FAIL ({bad}/200)'}")
    failures += bad > 0

    # power bounds vs grid scan
    bad = 0
    for _ in range(500):
        budget = LinkBudget(
            strong_gain=float(rng.uniform(0.1, 10)),
            weak_effective_gain=float(rng.uniform(0.1, 10)),
            noise_power=float(rng.uniform(0.1, 2)),
            sinr_threshold=float(rng.uniform(0.5, 5)),
            p_max=float(rng.uniform(0.5, 20)),
        )
        p_min, p_max_eff = weak_power_bounds(budget)
        if p_min <= p_max_eff:
            for p in np.linspace(p_min, p_max_eff, 25):
                if (
                    sinr_weak(p, budget) < budget.sinr_threshold
                    or sinr_strong(budget.p_max, p, budget) < budget.sinr_threshold
                ):
                    bad += 1
                    break
    print(f"power feasibility range: {'PASS' if bad == 0 else f'FAIL ({bad}/500)'}")
    failures += bad > 0

    # assignment optimality
    bad = 0
    for _ in range(50):
        c = rng.uniform(0, 10, (5, 5))
        total = hungarian(CostMatrix(values=c)).total_cost
        brute = min(sum(c[i, p[i]] for i in range(5)) for p in permutations(range(5)))
        if abs(total - brute) > 1e-9:
            bad += 1
    print(f"assignment optimality: {'PASS' if bad == 0 else f'FAIL ({bad}/50)'}")
    failures += bad > 0

    # relaxation sandwich on small instances
    bad = 0
    for _ in range(10):
        slot = random_slot(rng, l_elements=4, n_weak=2)
        sol = optimize_phases(slot, x=300, tolerance=1e-7, rng=rng)
        _, oracle_gain = exhaustive_phase_oracle(slot, levels=16)
        if not (oracle_gain <= sol.sdr_bound + 1e-6 * max(1.0, sol.sdr_bound)):
            bad += 1
        if not (sol.achieved_min_gain <= sol.sdr_bound + 1e-6 * max(1.0, sol.sdr_bound)):
            bad += 1
    print(f"relaxation sandwich: {'PASS' if bad == 0 else f'FAIL ({bad}/10)'}")
    failures += bad > 0

    # single-device co-phasing optimum
    bad = 0
    for _ in range(10):
        slot = random_slot(rng, l_elements=int(rng.integers(2, 17)), n_weak=1)
        sol = optimize_phases(slot, x=50, tolerance=1e-7, rng=rng)
        opt = single_user_gain_bound(slot.h_wr[0], slot.h_rb, slot.h_wb[0])
        if abs(sol.achieved_min_gain - opt) > 1e-6 * max(1.0, opt):
            bad += 1
    print(f"single-device optimum: {'PASS' if bad == 0 else f'FAIL ({bad}/10)'}")
    failures += bad > 0

    return 1 if failures else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ris-aoi",
        description="AoI minimization simulator for an RIS-assisted uplink NOMA network",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="YAML config file (defaults otherwise)")
    common.add_argument("--seed", type=int, help="override base seed")
    common.add_argument("--runs", type=int, help="override Monte Carlo run count")
    common.add_argument("--jobs", type=int, default=1, help="parallel workers")

    p_run = sub.add_parser("run", parents=[common], help="single-config Monte Carlo")
    p_run.add_argument("--policies", default="proposed", help="comma-separated policy names")
    p_run.add_argument("--out", default="results.csv")
    p_run.set_defaults(func=_cmd_run)

    p_sweep = sub.add_parser("sweep", parents=[common], help="axis sweep")
    p_sweep.add_argument("--axis", required=True, choices=SWEEP_AXES)
    p_sweep.add_argument("--values", required=True, help="comma-separated axis values")
    p_sweep.add_argument("--policies", default="proposed", help="comma-separated policy names")
    p_sweep.add_argument("--out", default="results.csv")
    p_sweep.set_defaults(func=_cmd_sweep)

    p_oracle = sub.add_parser(
        "oracle", parents=[common], help="run brute-force validation suites"
    )
    p_oracle.set_defaults(func=_cmd_oracle)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
