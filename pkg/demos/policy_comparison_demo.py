"""Compare scheduling policies on a small Monte Carlo experiment.

Runs the full slotted simulation (phase optimization + power feasibility +
optimal pairing) against the ablation baselines on paired channel draws and
prints the resulting average sum AoI per policy.  Takes a minute or two.
"""

from ris_aoi import POLICIES, ScenarioConfig, monte_carlo


def main():
    cfg = ScenarioConfig(
        i_clusters=4,
        l_elements=16,
        t_slots=100,
        gr_samples=50,
        sdr_tolerance=1e-4,
        gamma0_db=-12.0,
        p_max_dbm=10.0,
    )
    policies = [POLICIES[n] for n in
                ("proposed", "random_ris", "random_clustering", "random_both", "no_ris")]
    print(f"{cfg.i_clusters} clusters, L={cfg.l_elements}, T={cfg.t_slots}, "
          "10 paired runs")

    out = monte_carlo(cfg, policies, runs=10, base_seed=1, n_jobs=1)
    print(f"{'policy':<20} {'avg sum AoI':>12} {'95% CI':>16} {'success':>9}")
    for p in policies:
        a = out[p.name]
        ci = f"[{a.ci95_lo:.2f}, {a.ci95_hi:.2f}]"
        print(f"{p.name:<20} {a.mean_avg_sum_aoi:>12.3f} {ci:>16} "
              f"{a.success_rate:>9.3f}")


if __name__ == "__main__":
    main()
