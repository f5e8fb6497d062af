"""CSV result tables: strict schema parsing.

The experiment CSVs carry one row per (axis, axis_value, policy) aggregate,
optionally preceded by '#key=value' metadata comment lines.  The header must
match EXPECTED_HEADER exactly; any unknown or missing column is an error, so
schema drift between producer and renderer fails loudly.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass

EXPECTED_HEADER = [
    "axis",
    "axis_value",
    "policy",
    "mean_avg_sum_aoi",
    "std",
    "ci95_lo",
    "ci95_hi",
    "success_rate",
    "runs",
    "seed",
]


class SchemaError(ValueError):
    """CSV input does not match the documented result schema."""


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


@dataclass(frozen=True)
class ResultTable:
    rows: tuple
    metadata: dict

    def axes(self) -> set:
        return {r.axis for r in self.rows}

    def policies(self) -> list:
        seen = []
        for r in self.rows:
            if r.policy not in seen:
                seen.append(r.policy)
        return seen

    def select(self, axis: str) -> list:
        return [r for r in self.rows if r.axis == axis]


def _parse_row(fields: list, line_no: int) -> ResultRow:
    if len(fields) != len(EXPECTED_HEADER):
        raise SchemaError(
            f"line {line_no}: expected {len(EXPECTED_HEADER)} fields, got {len(fields)}"
        )
    try:
        return ResultRow(
            axis=fields[0],
            axis_value=float(fields[1]),
            policy=fields[2],
            mean_avg_sum_aoi=float(fields[3]),
            std=float(fields[4]),
            ci95_lo=float(fields[5]),
            ci95_hi=float(fields[6]),
            success_rate=float(fields[7]),
            runs=int(fields[8]),
            seed=int(fields[9]),
        )
    except ValueError as exc:
        raise SchemaError(f"line {line_no}: {exc}") from exc


def read_table(path) -> ResultTable:
    """Parse a result CSV; raises SchemaError on any deviation from the schema."""
    with open(path, newline="") as fh:
        text = fh.read()

    metadata = {}
    data_lines = []
    for line in text.splitlines():
        if line.startswith("#"):
            key, sep, value = line[1:].partition("=")
            if sep:
                metadata[key.strip()] = value.strip()
            continue
        if line.strip():
            data_lines.append(line)

    if not data_lines:
        raise SchemaError("empty input: no header line found")
    reader = csv.reader(io.StringIO("\n".join(data_lines)))
    header = next(reader)
    if header != EXPECTED_HEADER:
        unknown = [c for c in header if c not in EXPECTED_HEADER]
        missing = [c for c in EXPECTED_HEADER if c not in header]
        parts = []
        if unknown:
            parts.append(f"unknown column(s): {', '.join(unknown)}")
        if missing:
            parts.append(f"missing column(s): {', '.join(missing)}")
        if not parts:
            parts.append("columns out of order")
        raise SchemaError("header mismatch: " + "; ".join(parts))

    rows = [_parse_row(fields, i + 2) for i, fields in enumerate(reader)]
    if not rows:
        raise SchemaError("no data rows")
    return ResultTable(rows=tuple(rows), metadata=metadata)
