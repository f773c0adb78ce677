"""Core watts-per-intelligence metrics.

Units convention: intelligence is dimensionless, energies are joules,
powers are watts, temperatures are kelvin.  Phi is therefore watts per
intelligence unit.  All functions here are pure and safe to call
concurrently.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import UndefinedMetricError, ValidationError

#: Boltzmann constant, exact SI value (J/K).
BOLTZMANN_CONSTANT = 1.380649e-23

#: Temperature at which one Landauer erasure costs exactly 1 J.  Useful for
#: working in natural units where energy is counted in bits.
NATURAL_UNIT_TEMPERATURE = 1.0 / math.log(2) / BOLTZMANN_CONSTANT


@dataclass(frozen=True)
class TaskRecord:
    """One benchmark task: a difficulty weight and a performance in [0, 1]."""

    id: str
    weight: float
    performance: float

    def __post_init__(self):
        if not self.id:
            raise ValidationError("task id must be a non-empty string")
        if not (self.weight >= 0.0):
            raise ValidationError(f"task {self.id!r}: weight must be >= 0, got {self.weight}")
        if not (0.0 <= self.performance <= 1.0):
            raise ValidationError(
                f"task {self.id!r}: performance must be in [0, 1], got {self.performance}"
            )


@dataclass(frozen=True)
class TaskSuite:
    """A finite weighted task set; ids must be unique within the suite."""

    tasks: tuple[TaskRecord, ...]

    def __init__(self, tasks):
        records = tuple(
            t if isinstance(t, TaskRecord) else TaskRecord(*t) for t in tasks
        )
        seen: set[str] = set()
        for t in records:
            if t.id in seen:
                raise ValidationError(f"duplicate task id {t.id!r} in suite")
            seen.add(t.id)
        object.__setattr__(self, "tasks", records)

    def total_weight(self) -> float:
        return math.fsum(t.weight for t in self.tasks)


@dataclass(frozen=True)
class IntelligenceScore:
    """Weighted task performance total; dimensionless and non-negative."""

    value: float

    def __post_init__(self):
        if not (self.value >= 0.0):
            raise ValidationError(f"intelligence score must be >= 0, got {self.value}")


@dataclass(frozen=True)
class ExecutionTrace:
    """Observed execution: irreversible-bit-operation count and wall time.

    ``measured_energy`` is optional telemetry in joules; when present it
    overrides the modeled energy and the overhead factor is back-solved.
    """

    irreversible_ops: int
    duration: float
    measured_energy: float | None = None

    def __post_init__(self):
        if self.irreversible_ops < 0 or self.irreversible_ops != int(self.irreversible_ops):
            raise ValidationError(
                f"irreversible_ops must be a non-negative integer, got {self.irreversible_ops}"
            )
        if not (self.duration > 0.0):
            raise ValidationError(f"duration must be > 0 seconds, got {self.duration}")
        if self.measured_energy is not None and not (self.measured_energy >= 0.0):
            raise ValidationError(
                f"measured_energy must be >= 0 joules, got {self.measured_energy}"
            )


@dataclass(frozen=True)
class EnergyReport:
    """Energy accounting for one trace on one substrate.

    ``energy == overhead_factor_used * irreversible_ops * c(T)`` holds exactly
    when the energy is modeled; with telemetry the measurement wins and the
    factor is back-solved.  ``warnings`` flags physically inconsistent inputs
    such as sub-Landauer measurements.
    """

    energy: float
    power: float
    landauer_floor: float
    overhead_factor_used: float
    overhead_source: str = "modeled"
    warnings: tuple[str, ...] = field(default_factory=tuple)


@dataclass(frozen=True)
class WpiReport:
    """Phi together with its thermodynamic lower bound and slack ratio."""

    phi: float
    lower_bound: float
    slack: float
    reversible_floor: float


def landauer_constant(temperature: float) -> float:
    """Minimum dissipation per irreversible bit operation, k_B * T * ln 2 (J/bit)."""
    if not (temperature > 0.0):
        raise ValidationError(f"temperature must be > 0 K, got {temperature}")
    return BOLTZMANN_CONSTANT * temperature * math.log(2)


def intelligence_score(suite: TaskSuite) -> IntelligenceScore:
    """Weighted sum of task performances.

    Terms are accumulated in ascending task-id order with exact (fsum)
    summation, so the result is reproducible and independent of the order
    tasks were listed in.
    """
    ordered = sorted(suite.tasks, key=lambda t: t.id)
    value = math.fsum(t.weight * t.performance for t in ordered)
    return IntelligenceScore(value)


def modeled_energy(
    trace: ExecutionTrace, overhead: float, temperature: float
) -> EnergyReport:
    """Energy and power for a trace under the multiplicative overhead model.

    Modeled energy is ``overhead * N * c(T)``.  If the trace carries a
    measured energy, the measurement replaces the model and the overhead
    factor actually used is back-solved as ``measured / (N * c)``.
    """
    if not (overhead >= 1.0):
        raise ValidationError(f"sub-Landauer overhead: factor must be >= 1, got {overhead}")
    c = landauer_constant(temperature)
    n = trace.irreversible_ops
    floor = n * c
    warnings: list[str] = []

    if trace.measured_energy is not None:
        energy = trace.measured_energy
        source = "back-solved"
        if n == 0:
            factor = math.inf if energy > 0.0 else 1.0
            if energy > 0.0:
                warnings.append(
                    "measured energy is positive but the trace has zero irreversible "
                    "ops; overhead factor reported as infinity"
                )
        else:
            factor = energy / floor
            if energy < floor:
                warnings.append(
                    f"measured energy {energy!r} J is below the Landauer floor "
                    f"{floor!r} J; measurement is physically inconsistent"
                )
    else:
        energy = overhead * n * c
        factor = overhead
        source = "modeled"

    return EnergyReport(
        energy=energy,
        power=energy / trace.duration,
        landauer_floor=floor,
        overhead_factor_used=factor,
        overhead_source=source,
        warnings=tuple(warnings),
    )


def wpi(power: float, intelligence: IntelligenceScore | float) -> float:
    """Watts per intelligence unit: power divided by the intelligence score."""
    value = intelligence.value if isinstance(intelligence, IntelligenceScore) else float(intelligence)
    if value < 0.0:
        raise ValidationError(f"intelligence must be >= 0, got {value}")
    if value == 0.0:
        raise UndefinedMetricError("phi undefined at zero intelligence")
    return power / value


def phi_lower_bound(
    temperature: float, overhead: float, algorithmic_yield: float, duration: float
) -> float:
    """Thermodynamic lower bound on phi: c(T) * F / (alpha * tau).

    With ``overhead == 1`` this is bit-identical to the reversible-limit
    floor ``landauer_constant(T) / (alpha * tau)``.
    """
    if not (overhead >= 1.0):
        raise ValidationError(f"sub-Landauer overhead: factor must be >= 1, got {overhead}")
    if not (algorithmic_yield > 0.0):
        raise ValidationError(f"algorithmic yield must be > 0, got {algorithmic_yield}")
    if not (duration > 0.0):
        raise ValidationError(f"duration must be > 0 seconds, got {duration}")
    return landauer_constant(temperature) * overhead / (algorithmic_yield * duration)


def wpi_report(
    power: float,
    intelligence: IntelligenceScore | float,
    temperature: float,
    overhead: float,
    algorithmic_yield: float,
    duration: float,
) -> WpiReport:
    """Compose phi with its lower bound, slack ratio, and reversible floor."""
    phi = wpi(power, intelligence)
    bound = phi_lower_bound(temperature, overhead, algorithmic_yield, duration)
    floor = phi_lower_bound(temperature, 1.0, algorithmic_yield, duration)
    return WpiReport(phi=phi, lower_bound=bound, slack=phi / bound, reversible_floor=floor)
