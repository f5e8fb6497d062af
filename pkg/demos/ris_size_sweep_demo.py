"""Sweep the RIS size and write a result CSV.

Shows the experiment-to-figure workflow: run a sweep over the number of RIS
elements, dump the aggregate CSV, and (if the aoi-plots package is installed)
render the trend panel with

    plot --in ris_size_sweep.csv --panel ris_elements --out ris_size_sweep.png
"""

from ris_aoi import POLICIES, ScenarioConfig
from ris_aoi.experiments import metadata_for, run_sweep, write_results


def main():
    cfg = ScenarioConfig(
        i_clusters=4,
        t_slots=100,
        gr_samples=50,
        sdr_tolerance=1e-4,
        gamma0_db=-12.0,
        p_max_dbm=10.0,
        seed=1,
    )
    policies = [POLICIES[n] for n in ("proposed", "no_ris")]
    rows = run_sweep(cfg, "l_elements", [8, 16, 32], policies, runs=10, base_seed=1)
    for r in rows:
        print(f"L={int(r.axis_value):2d} {r.policy:<10} "
              f"{r.mean_avg_sum_aoi:8.3f} [{r.ci95_lo:.3f}, {r.ci95_hi:.3f}]")
    write_results(rows, "ris_size_sweep.csv", metadata=metadata_for(cfg))
    print("wrote ris_size_sweep.csv")


if __name__ == "__main__":
    main()
