"""Sweep CSV reading and validation.

The file contract is the only coupling to the metrics tool: header
``param,value,alpha,pfa,pd,beta,gamma_bps``, numeric columns in scientific
notation, rows grouped by alpha ascending with the swept value ascending
inside each group.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass

EXPECTED_HEADER = ("param", "value", "alpha", "pfa", "pd", "beta",
                   "gamma_bps")

X_LABELS = {
    "ptx": "transmit power (W)",
    "bw": "bandwidth (Hz)",
    "duty": "radar duty cycle",
    "sigma0": "surface clutter coefficient",
    "rcs_t": "mean target RCS (m^2)",
}


class SchemaError(ValueError):
    """The CSV does not match the sweep schema; names the bad column."""


@dataclass(frozen=True)
class SweepSeries:
    alpha: float
    values: tuple[float, ...]
    pfa: tuple[float, ...]
    gamma_bps: tuple[float, ...]


@dataclass(frozen=True)
class SweepData:
    param: str
    series: tuple[SweepSeries, ...]

    @property
    def x_label(self) -> str:
        return X_LABELS.get(self.param, self.param)


def _validate_header(header: list[str]) -> None:
    for i, expected in enumerate(EXPECTED_HEADER):
        if i >= len(header):
            raise SchemaError(f"missing column {i + 1}: expected {expected!r}")
        if header[i].strip() != expected:
            raise SchemaError(f"column {i + 1}: expected {expected!r}, "
                              f"got {header[i].strip()!r}")
    if len(header) > len(EXPECTED_HEADER):
        raise SchemaError(f"unexpected extra column {header[7].strip()!r}")


def load_sweep(csv_path: str) -> SweepData:
    """Parse and validate one sweep CSV into per-alpha series."""
    with open(csv_path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise SchemaError("empty file: no header row") from None
        _validate_header(header)
        rows = []
        for lineno, row in enumerate(reader, start=2):
            if len(row) != len(EXPECTED_HEADER):
                raise SchemaError(f"row {lineno}: expected "
                                  f"{len(EXPECTED_HEADER)} columns, got "
                                  f"{len(row)}")
            try:
                rows.append((row[0], *(float(v) for v in row[1:])))
            except ValueError:
                raise SchemaError(
                    f"row {lineno}: non-numeric value in a numeric column"
                ) from None
    if not rows:
        raise SchemaError("no data rows")
    params = {r[0] for r in rows}
    if len(params) != 1:
        raise SchemaError(f"mixed sweep parameters in one file: "
                          f"{sorted(params)}")
    grouped: dict[float, list] = {}
    for r in rows:
        grouped.setdefault(r[2], []).append(r)
    series = tuple(
        SweepSeries(alpha=alpha,
                    values=tuple(r[1] for r in grouped[alpha]),
                    pfa=tuple(r[3] for r in grouped[alpha]),
                    gamma_bps=tuple(r[6] for r in grouped[alpha]))
        for alpha in sorted(grouped))
    return SweepData(param=rows[0][0], series=series)
