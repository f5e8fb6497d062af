"""Slotted AoI simulation: policies, per-slot pipeline, Monte Carlo harness.

Random streams are derived so that the channel realizations of a run depend
only on (config, seed), the per-slot randomization stream depends only on
(seed, slot) and policy-side randomness on (seed, policy).  Two policies
evaluated on the same run seed therefore see identical channels (paired
common random numbers), and phase solutions can be shared between policies
that both request the optimized configuration.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .channel import ChannelSlot, FadingParams, Topology, place_devices, sample_slot
from .clustering import build_cost_matrix, hungarian, weak_gains
from .config import ScenarioConfig
from .phase_opt import PhaseSolution, SolverFailure, optimize_phases
from .power import LinkBudget, allocate_cluster_power, max_power_decision


@dataclass(frozen=True)
class Policy:
    phase_mode: str = "sdr"          # sdr | random | none
    clustering_mode: str = "hungarian"  # hungarian | random
    power_mode: str = "feasibility"  # feasibility | max
    name: str = ""

    def __post_init__(self):
        if self.phase_mode not in ("sdr", "random", "none"):
            raise ValueError(f"unknown phase_mode {self.phase_mode!r}")
        if self.clustering_mode not in ("hungarian", "random"):
            raise ValueError(f"unknown clustering_mode {self.clustering_mode!r}")
        if self.power_mode not in ("feasibility", "max"):
            raise ValueError(f"unknown power_mode {self.power_mode!r}")
        if not self.name:
            object.__setattr__(
                self, "name", f"{self.phase_mode}+{self.clustering_mode}+{self.power_mode}"
            )

    def stream_key(self) -> int:
        """Stable integer identifying the policy's random behaviour; byte-identical
        policies share streams."""
        import zlib

        return zlib.crc32(
            f"{self.phase_mode}|{self.clustering_mode}|{self.power_mode}".encode()
        )


PROPOSED = Policy("sdr", "hungarian", "feasibility", name="proposed")

POLICIES = {
    "proposed": PROPOSED,
    "random_ris": Policy("random", "hungarian", "feasibility", name="random_ris"),
    "random_clustering": Policy("sdr", "random", "feasibility", name="random_clustering"),
    "random_both": Policy("random", "random", "feasibility", name="random_both"),
    "no_ris": Policy("none", "hungarian", "feasibility", name="no_ris"),
    "max_power": Policy("sdr", "hungarian", "max", name="max_power"),
}


@dataclass
class AoIState:
    ages_strong: np.ndarray
    ages_weak: np.ndarray
    t: int = 0

    @classmethod
    def initial(cls, n_clusters: int) -> "AoIState":
        return cls(
            ages_strong=np.zeros(n_clusters, dtype=np.int64),
            ages_weak=np.zeros(n_clusters, dtype=np.int64),
        )


@dataclass
class SlotRecord:
    sdr_bound: float
    achieved_gain: float
    rank_one: bool
    phase_fallback: bool
    successes: int  # devices delivered this slot


@dataclass
class MetricsRecord:
    avg_sum_aoi: float
    per_device_avg_aoi: np.ndarray  # (2I,) strong devices first
    success_rate: float
    sdr_bound_trace: np.ndarray
    achieved_gain_trace: np.ndarray
    seed: int
    policy: str = ""


@dataclass
class Aggregate:
    policy: str
    mean_avg_sum_aoi: float
    std: float
    ci95_lo: float
    ci95_hi: float
    success_rate: float
    runs: int
    seed: int
    per_run: np.ndarray
    per_device_mean: np.ndarray


def step_age(prev: int, success: bool) -> int:
    """AoI evolution: reset to 1 on delivery, otherwise increment."""
    if prev < 0:
        raise ValueError("age must be >= 0")
    return 1 if success else prev + 1


def _channel_rng(seed: int) -> np.random.Generator:
    return np.random.default_rng([seed, 0])


def _phase_rng(seed: int, t: int) -> np.random.Generator:
    return np.random.default_rng([seed, 1, t])


def _policy_rng(seed: int, policy: Policy) -> np.random.Generator:
    return np.random.default_rng([seed, 2, policy.stream_key()])


def _phases_for_slot(
    slot: ChannelSlot,
    config: ScenarioConfig,
    seed: int,
    cache: dict | None,
):
    """Optimized phases for one slot, shared across policies via the cache.

    Returns (theta or None, PhaseSolution or None, fallback_flag)."""
    key = slot.slot_index
    if cache is not None and key in cache:
        return cache[key]
    rng = _phase_rng(seed, slot.slot_index)
    try:
        sol = optimize_phases(slot, config.gr_samples, config.sdr_tolerance, rng)
        result = (sol.theta, sol, False)
    except SolverFailure:
        theta = rng.uniform(0.0, 2.0 * np.pi, size=slot.l_elements)
        result = (theta, None, True)
    if cache is not None:
        cache[key] = result
    return result


def run_slot(
    state: AoIState,
    slot: ChannelSlot,
    policy: Policy,
    config: ScenarioConfig,
    seed: int,
    policy_rng: np.random.Generator,
    phase_cache: dict | None = None,
):
    """Execute one slot under a policy; returns (new state, SlotRecord)."""
    n = slot.n_weak

    if policy.phase_mode == "sdr":
        theta, sol, fallback = _phases_for_slot(slot, config, seed, phase_cache)
    elif policy.phase_mode == "random":
        theta, sol, fallback = (
            policy_rng.uniform(0.0, 2.0 * np.pi, size=slot.l_elements),
            None,
            False,
        )
    else:  # none: direct link only
        theta, sol, fallback = None, None, False

    cost = build_cost_matrix(
        state.ages_strong,
        state.ages_weak,
        slot,
        theta,
        noise_power=config.sigma2_w,
        sinr_threshold=config.gamma_th,
        p_max=config.p_max_w,
        power_mode=policy.power_mode,
    )
    if policy.clustering_mode == "hungarian":
        pairing = hungarian(cost).pairing
    else:
        pairing = policy_rng.permutation(n)

    gains_w = weak_gains(slot, theta)
    gains_s = np.abs(slot.h_sb) ** 2
    new_strong = np.empty(n, dtype=np.int64)
    new_weak = np.empty(n, dtype=np.int64)
    successes = 0
    for s in range(n):
        w = int(pairing[s])
        budget = LinkBudget(
            strong_gain=float(gains_s[s]),
            weak_effective_gain=float(gains_w[w]),
            noise_power=config.sigma2_w,
            sinr_threshold=config.gamma_th,
            p_max=config.p_max_w,
        )
        if policy.power_mode == "max":
            dec = max_power_decision(budget)
        else:
            dec = allocate_cluster_power(
                budget, int(state.ages_strong[s]), int(state.ages_weak[w])
            )
        new_strong[s] = step_age(int(state.ages_strong[s]), dec.strong_success)
        new_weak[w] = step_age(int(state.ages_weak[w]), dec.weak_success)
        successes += int(dec.strong_success) + int(dec.weak_success)

    record = SlotRecord(
        sdr_bound=sol.sdr_bound if sol is not None else math.nan,
        achieved_gain=sol.achieved_min_gain if sol is not None else math.nan,
        rank_one=sol.rank_one_exact if sol is not None else False,
        phase_fallback=fallback,
        successes=successes,
    )
    return AoIState(ages_strong=new_strong, ages_weak=new_weak, t=state.t + 1), record


def generate_run(config: ScenarioConfig, seed: int):
    """Topology and the full slot sequence for one run seed."""
    rng = _channel_rng(seed)
    topology = place_devices(config, rng)
    params = FadingParams.from_config(config)
    slots = [
        sample_slot(topology, params, config.l_elements, t, rng)
        for t in range(1, config.t_slots + 1)
    ]
    return topology, slots


def run_episode_on_slots(
    slots,
    config: ScenarioConfig,
    policy: Policy,
    seed: int,
    phase_cache: dict | None = None,
) -> MetricsRecord:
    n = config.i_clusters
    state = AoIState.initial(n)
    policy_rng = _policy_rng(seed, policy)
    t_slots = len(slots)
    sum_trace = np.empty(t_slots)
    device_sum = np.zeros(2 * n)
    bound_trace = np.empty(t_slots)
    gain_trace = np.empty(t_slots)
    successes = 0
    for i, slot in enumerate(slots):
        state, rec = run_slot(state, slot, policy, config, seed, policy_rng, phase_cache)
        ages = np.concatenate([state.ages_strong, state.ages_weak])
        sum_trace[i] = ages.mean()
        device_sum += ages
        bound_trace[i] = rec.sdr_bound
        gain_trace[i] = rec.achieved_gain
        successes += rec.successes
    return MetricsRecord(
        avg_sum_aoi=float(sum_trace.mean()),
        per_device_avg_aoi=device_sum / t_slots,
        success_rate=successes / (2 * n * t_slots),
        sdr_bound_trace=bound_trace,
        achieved_gain_trace=gain_trace,
        seed=seed,
        policy=policy.name,
    )


def run_episode(config: ScenarioConfig, policy: Policy, seed: int) -> MetricsRecord:
    """T slots from a fresh topology and age state."""
    _, slots = generate_run(config, seed)
    return run_episode_on_slots(slots, config, policy, seed, phase_cache={})


def _single_run(config, policies, seed, shared_cache=None):
    _, slots = generate_run(config, seed)
    cache = {} if shared_cache is None else shared_cache
    return [run_episode_on_slots(slots, config, p, seed, cache) for p in policies]


def monte_carlo(
    config: ScenarioConfig,
    policies,
    runs: int,
    base_seed: int,
    n_jobs: int = 1,
    phase_cache_by_seed: dict | None = None,
):
    """Independent episodes on seeds base_seed..base_seed+runs-1, identical
    channel draws across policies per run.  Returns {policy name: Aggregate}.

    ``phase_cache_by_seed`` optionally shares optimized phase solutions across
    calls whose channel realizations are identical (same seeds, geometry and
    RIS size; only threshold/power differ)."""
    if runs < 1:
        raise ValueError("runs must be >= 1")
    policies = list(policies)
    seeds = [base_seed + r for r in range(runs)]

    def cache_for(seed):
        if phase_cache_by_seed is None:
            return None
        return phase_cache_by_seed.setdefault(seed, {})

    if n_jobs != 1:
        from joblib import Parallel, delayed

        results = Parallel(n_jobs=n_jobs)(
            delayed(_single_run)(config, policies, s, cache_for(s)) for s in seeds
        )
    else:
        results = [_single_run(config, policies, s, cache_for(s)) for s in seeds]

    out = {}
    for j, policy in enumerate(policies):
        vals = np.array([results[r][j].avg_sum_aoi for r in range(runs)])
        succ = np.array([results[r][j].success_rate for r in range(runs)])
        dev = np.stack([results[r][j].per_device_avg_aoi for r in range(runs)])
        mean = float(vals.mean())
        std = float(vals.std(ddof=1)) if runs > 1 else 0.0
        half = 1.96 * std / math.sqrt(runs) if runs > 1 else 0.0
        out[policy.name] = Aggregate(
            policy=policy.name,
            mean_avg_sum_aoi=mean,
            std=std,
            ci95_lo=mean - half,
            ci95_hi=mean + half,
            success_rate=float(succ.mean()),
            runs=runs,
            seed=base_seed,
            per_run=vals,
            per_device_mean=dev.mean(axis=0),
        )
    return out
