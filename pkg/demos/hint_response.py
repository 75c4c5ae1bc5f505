"""Bias recall toward a chosen pattern and compare the response with theory.

A small projector term of strength gamma added to the target pulls the
anneal toward the hinted pattern. For small gamma the response is linear,
and the closed-form slopes predict the finite-difference measurements to
within tens of percent.
"""

from dataclasses import replace

from qutrit_memory import AnnealSpec, MemorySet, anneal, gamma_sweep, pattern_probability, slope_at_zero
from qutrit_memory import theory

memory = MemorySet(((0, 1), (1, 0), (-1, -1)))
base = AnnealSpec(memory=memory, field_h=2.0, total_time=300.0, dt=0.1)

for probe in ((0, 1), (-1, -1)):
    spec = replace(base, probe=probe)
    table = gamma_sweep(spec, (0.0, 0.01, 0.02, 0.05))
    print(f"\nHint on {probe}:")
    print("  gamma   " + "  ".join(f"P{p}" for p in memory.patterns))
    for value in table.values():
        row = [r for r in table.rows if r[0] == value]
        print(f"  {value:5.2f}  " + "  ".join(f"{prob:7.4f}" for _, _, prob in row))

    estimate = slope_at_zero(spec, probe)
    if probe == (0, 1):
        predicted = theory.paired_hint_slope(2.0, 300.0)
    else:
        baseline = pattern_probability(anneal(replace(spec, gamma=0.0)).final_state, probe)
        predicted = theory.lone_hint_slope(2.0, 300.0, lone_zero=baseline)
    print(f"  measured slope at gamma=0: {estimate.value:.3f}")
    print(f"  predicted slope:           {predicted:.3f}")
    print(f"  step {estimate.step:g}, cross-check residual {estimate.richardson_error:.2e}")
