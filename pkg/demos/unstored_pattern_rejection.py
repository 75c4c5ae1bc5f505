"""Hint at something that was never stored and watch the memory refuse.

Stored patterns sit one energy unit below everything else, so a hint on an
unstored pattern only wins once its strength crosses that gap. Exact
diagonalization puts the crossover at gamma = 1; the annealed recall
probability switches from near zero to near one around it.
"""

from dataclasses import replace

import numpy as np

from qutrit_memory import (
    AnnealSpec,
    MemorySet,
    Schedule,
    anneal,
    ground_state_crossover,
    pattern_probability,
)

memory = MemorySet(((0, 1), (1, 0), (-1, -1)))
unstored = (1, 1)
spec = AnnealSpec(
    memory=memory,
    probe=unstored,
    field_h=2.0,
    total_time=300.0,
    dt=0.1,
    schedule=Schedule.SWITCHED_HELP,
)

print(f"Probe pattern {unstored} is **not** in the memory {memory.patterns}.")
print(f"Ground-state crossover: gamma* = {ground_state_crossover(memory, unstored)}")
print("\ngamma   P(1,1)  bar")
for gamma in (0.0, 0.25, 0.5, 0.75, 0.9, 1.0, 1.1, 1.2, 1.5, 2.0):
    p = pattern_probability(anneal(replace(spec, gamma=gamma)).final_state, unstored)
    print(f"{gamma:5.2f}  {p:7.4f}  {'#' * int(np.round(40 * p))}")
