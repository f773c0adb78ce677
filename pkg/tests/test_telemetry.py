"""Telemetry CSV ingestion and trapezoidal integration tests."""

import math

import numpy as np
import pytest

from wpi import TelemetryError, ValidationError, ingest_telemetry, integrate_power, read_power_csv


def write_csv(tmp_path, rows, header="t_s,power_w"):
    path = tmp_path / "power.csv"
    lines = [header] + [f"{t},{p}" for t, p in rows]
    path.write_text("\n".join(lines) + "\n")
    return path


class TestIngest:
    def test_reads_pairs(self, tmp_path):
        path = write_csv(tmp_path, [(0.0, 1.0), (1.0, 2.0)])
        assert ingest_telemetry(path) == [(0.0, 1.0), (1.0, 2.0)]

    def test_header_enforced(self, tmp_path):
        path = write_csv(tmp_path, [(0, 1)], header="time,watts")
        with pytest.raises(TelemetryError, match="t_s,power_w"):
            ingest_telemetry(path)

    def test_non_monotone_rows_reported(self, tmp_path):
        path = write_csv(tmp_path, [(0.0, 1.0), (2.0, 1.0), (1.0, 1.0)])
        with pytest.raises(TelemetryError, match="row 4"):
            ingest_telemetry(path)

    def test_negative_power_reported(self, tmp_path):
        path = write_csv(tmp_path, [(0.0, 1.0), (1.0, -0.5)])
        with pytest.raises(TelemetryError, match="negative power"):
            ingest_telemetry(path)

    def test_all_errors_collected(self, tmp_path):
        path = write_csv(tmp_path, [(0.0, 1.0), (0.0, 1.0), (2.0, -1.0), (1.0, "x")])
        with pytest.raises(TelemetryError) as info:
            ingest_telemetry(path)
        assert len(info.value.issues) == 3

    def test_empty_file_rejected(self, tmp_path):
        path = tmp_path / "empty.csv"
        path.write_text("")
        with pytest.raises(TelemetryError, match="empty"):
            ingest_telemetry(path)


class TestIntegration:
    def test_constant_power_unit_interval(self, tmp_path):
        path = write_csv(tmp_path, [(0.0, 1.0), (1.0, 1.0)])
        assert integrate_power(read_power_csv(path)) == 1.0

    def test_triangle_area(self, tmp_path):
        path = write_csv(tmp_path, [(0.0, 0.0), (2.0, 2.0)])
        assert integrate_power(read_power_csv(path)) == 2.0

    def test_sine_trace_matches_closed_form(self):
        # P(t) = 3 + 2 sin(2 pi t) over [0, 1.5]: integral = 3*1.5 - (2/w)(cos(w*1.5)-1)
        omega = 2 * math.pi
        t = np.linspace(0.0, 1.5, 1000)
        p = 3.0 + 2.0 * np.sin(omega * t)
        exact = 3.0 * 1.5 - (2.0 / omega) * (math.cos(omega * 1.5) - 1.0)
        got = integrate_power(np.column_stack([t, p]))
        assert abs(got - exact) / exact < 1e-3

    def test_needs_two_samples(self):
        with pytest.raises(ValidationError):
            integrate_power(np.array([[0.0, 1.0]]))

    def test_strictly_increasing_required(self):
        with pytest.raises(ValidationError):
            integrate_power(np.array([[0.0, 1.0], [0.0, 2.0]]))
