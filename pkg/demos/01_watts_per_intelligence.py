"""Watts per intelligence from first principles.

Score a task suite, model the energy of a traced run on top of the
Landauer floor, and compare the resulting phi against its thermodynamic
lower bound.
"""

import math

from wpi import (
    ExecutionTrace,
    TaskSuite,
    intelligence_score,
    landauer_constant,
    modeled_energy,
    phi_lower_bound,
    wpi,
    wpi_report,
)

# A finite weighted task set.  Weights encode difficulty, performances lie
# in [0, 1]; the intelligence score is the weighted performance total.
suite = TaskSuite([
    ("image-classify", 1.0, 0.92),
    ("route-plan", 3.0, 0.61),
    ("summarize", 2.0, 0.40),
])
score = intelligence_score(suite)
print(f"intelligence score I = {score.value:.3f} (max {suite.total_weight():.1f})")

# The Landauer constant sets the energy floor per irreversible bit
# operation.  At room temperature it is a few zeptojoules.
T = 300.0
c = landauer_constant(T)
print(f"Landauer constant at {T:.0f} K: c = {c:.4e} J/bit")

# A traced run: N irreversible operations over tau seconds.  With overhead
# factor F the modeled energy is F * N * c.
trace = ExecutionTrace(irreversible_ops=5 * 10**9, duration=2.0)
overhead = 120.0
energy = modeled_energy(trace, overhead, T)
print(f"modeled energy  E = {energy.energy:.4e} J "
      f"(floor {energy.landauer_floor:.4e} J, F = {energy.overhead_factor_used:.0f})")
print(f"power           P = {energy.power:.4e} W")

# Phi is power per unit intelligence; the lower bound is c * F / (alpha * tau).
alpha = 1.0
report = wpi_report(
    power=energy.power, intelligence=score, temperature=T,
    overhead=overhead, algorithmic_yield=alpha, duration=trace.duration,
)
print(f"phi             = {report.phi:.4e} W per intelligence unit")
print(f"lower bound     = {report.lower_bound:.4e}")
print(f"reversible floor= {report.reversible_floor:.4e}")
print(f"slack           = {report.slack:.3e}  (>= 1 whenever I <= alpha*N)")

# With telemetry the measurement wins and F is back-solved from the floor.
measured = ExecutionTrace(irreversible_ops=5 * 10**9, duration=2.0,
                          measured_energy=3.2e-9)
observed = modeled_energy(measured, overhead, T)
print(f"\nwith measured energy {measured.measured_energy:.2e} J the overhead "
      f"factor back-solves to F = {observed.overhead_factor_used:.1f} "
      f"({observed.overhead_source})")

# Sanity check the equality case of the bound: if intelligence saturates
# I = alpha * N at modeled energy, phi sits exactly on the bound.
n = 10**6
phi_exact = wpi((3.0 * n * c) / 1.0, alpha * n)
bound = phi_lower_bound(T, 3.0, alpha, 1.0)
print(f"\nsaturated case: phi / bound = {phi_exact / bound:.12f}")
assert math.isclose(phi_exact / bound, 1.0, rel_tol=1e-12)
