"""The four result panels: trend lines with confidence bands and per-device bars.

Each panel reads one axis of the result table; requesting a panel whose axis
is absent raises MissingAxisError naming the column value that was expected.
Rendering is read-only: plotted values are the parsed CSV values, untouched.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .results import ResultTable

PANELS = ("ris_elements", "per_device", "sinr_threshold", "power")

# panel name -> (axis column value, x label, y label)
_PANEL_SPEC = {
    "ris_elements": ("l_elements", "RIS elements L", "average sum AoI (slots)"),
    "sinr_threshold": ("gamma_th_db", "SINR threshold (dB)", "average sum AoI (slots)"),
    "power": ("p_max_dbm", "power budget (dBm)", "average sum AoI (slots)"),
    "per_device": ("device", "device index", "average AoI (slots)"),
}


class MissingAxisError(ValueError):
    """The table lacks the axis column value a panel needs."""


def panel_series(table: ResultTable, panel: str) -> dict:
    """Per-policy data for a panel: {policy: (x, mean, ci_lo, ci_hi)} with
    x sorted ascending.  Values are exactly the parsed CSV numbers."""
    if panel not in PANELS:
        raise ValueError(f"unknown panel {panel!r}; choose from {', '.join(PANELS)}")
    axis = _PANEL_SPEC[panel][0]
    rows = table.select(axis)
    if not rows:
        raise MissingAxisError(
            f"no rows with axis={axis!r} in input; panel {panel!r} needs them"
        )
    series = {}
    for policy in table.policies():
        mine = sorted(
            (r for r in rows if r.policy == policy), key=lambda r: r.axis_value
        )
        if not mine:
            continue
        series[policy] = (
            [r.axis_value for r in mine],
            [r.mean_avg_sum_aoi for r in mine],
            [r.ci95_lo for r in mine],
            [r.ci95_hi for r in mine],
        )
    return series


def _footer(table: ResultTable) -> str:
    parts = []
    if "seed" in table.metadata:
        parts.append(f"seed {table.metadata['seed']}")
    if "config_hash" in table.metadata:
        parts.append(f"config {table.metadata['config_hash']}")
    return ", ".join(parts)


def render_panel(table: ResultTable, panel: str, out_path) -> None:
    """Write one panel as a static image; no file is written on error."""
    series = panel_series(table, panel)
    _, xlabel, ylabel = _PANEL_SPEC[panel]

    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    try:
        if panel == "per_device":
            n_pol = len(series)
            width = 0.8 / n_pol
            for k, (policy, (x, mean, _, _)) in enumerate(series.items()):
                offs = [xi + (k - (n_pol - 1) / 2.0) * width for xi in x]
                ax.bar(offs, mean, width=width, label=policy)
        else:
            for policy, (x, mean, lo, hi) in series.items():
                ax.plot(x, mean, marker="o", label=policy)
                ax.fill_between(x, lo, hi, alpha=0.2)
        ax.set_xlabel(xlabel)
        ax.set_ylabel(ylabel)
        ax.legend()
        ax.grid(True, alpha=0.3)
        footer = _footer(table)
        if footer:
            fig.text(0.99, 0.01, footer, ha="right", va="bottom", fontsize=7,
                     color="gray")
        fig.tight_layout(rect=(0, 0.03, 1, 1))
        fig.savefig(out_path, dpi=150, metadata={"Software": None})
    finally:
        plt.close(fig)
