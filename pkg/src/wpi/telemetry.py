"""Power telemetry ingestion and trapezoidal energy integration.

Telemetry files are CSV with the exact header ``t_s,power_w``: timestamps
in seconds (strictly increasing) and instantaneous power in watts
(non-negative).  The integrated energy attaches to an execution trace as
its measured energy.
"""

from __future__ import annotations

import csv
from pathlib import Path

import numpy as np

from .errors import TelemetryError, ValidationError

EXPECTED_HEADER = ["t_s", "power_w"]


def ingest_telemetry(path: str | Path) -> list[tuple[float, float]]:
    """Read a telemetry CSV into (timestamp, power) pairs.

    All row-level problems (non-numeric fields, non-monotone timestamps,
    negative power) are collected and raised together.
    """
    path = Path(path)
    issues: list[tuple[int, str]] = []
    rows: list[tuple[float, float]] = []

    with path.open(newline="", encoding="utf-8") as handle:
        reader = csv.reader(handle)
        try:
            header = next(reader)
        except StopIteration:
            raise TelemetryError([(0, "file is empty; expected header 't_s,power_w'")])
        if [h.strip() for h in header] != EXPECTED_HEADER:
            raise TelemetryError(
                [(1, f"expected header 't_s,power_w', got {','.join(header)!r}")]
            )
        previous_t = None
        for lineno, row in enumerate(reader, start=2):
            if not row or all(not cell.strip() for cell in row):
                continue
            if len(row) != 2:
                issues.append((lineno, f"expected 2 fields, got {len(row)}"))
                continue
            try:
                t, p = float(row[0]), float(row[1])
            except ValueError:
                issues.append((lineno, f"non-numeric row: {row!r}"))
                continue
            if previous_t is not None and t <= previous_t:
                issues.append(
                    (lineno, f"timestamp {t!r} is not strictly greater than {previous_t!r}")
                )
                continue
            if p < 0.0:
                issues.append((lineno, f"negative power {p!r} W"))
                continue
            previous_t = t
            rows.append((t, p))

    if issues:
        raise TelemetryError(issues)
    return rows


def read_power_csv(path: str | Path) -> np.ndarray:
    """Telemetry file as an (n, 2) float array of (t_s, power_w)."""
    rows = ingest_telemetry(path)
    return np.array(rows, dtype=float).reshape(-1, 2)


def integrate_power(samples: np.ndarray) -> float:
    """Trapezoidal-rule energy (joules) of a power time series."""
    samples = np.asarray(samples, dtype=float)
    if samples.ndim != 2 or samples.shape[1] != 2:
        raise ValidationError(f"expected an (n, 2) array of (t, power), got {samples.shape}")
    if samples.shape[0] < 2:
        raise ValidationError("energy integration needs at least 2 samples")
    t, p = samples[:, 0], samples[:, 1]
    if np.any(np.diff(t) <= 0.0):
        raise ValidationError("timestamps must be strictly increasing")
    if np.any(p < 0.0):
        raise ValidationError("power must be non-negative")
    return float(np.trapezoid(p, t))
