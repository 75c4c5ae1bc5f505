"""Five patterns on three qutrits: more than two qubit-pairs could hold.

The 27-dimensional register stores five patterns at once. With the
switched pair couplings the zero-hint recall lands near 1/5 on each, and a
hint on (1,1,1) pulls that pattern up while the other four drop.
"""

import numpy as np

from qutrit_memory import THREE_QUTRIT_MEMORY, THREE_QUTRIT_PROBE, three_qutrit_demo

gammas = (0.0, 0.05, 0.1, 0.2, 0.5)
demo = three_qutrit_demo(gammas=gammas)

print("Stored patterns:", THREE_QUTRIT_MEMORY.patterns)
print("Hint on:", THREE_QUTRIT_PROBE)

for label, table in (("switched help", demo.switched), ("plain", demo.plain)):
    print(f"\n{label} schedule:")
    header = "  gamma  " + " ".join(f"{str(p):>12s}" for p in THREE_QUTRIT_MEMORY.patterns)
    print(header + "     sum")
    for value, dist in table.distributions:
        probs = [table.column(p)[list(table.values()).index(value)] for p in THREE_QUTRIT_MEMORY.patterns]
        print(
            f"  {value:5.2f}  "
            + " ".join(f"{p:12.4f}" for p in probs)
            + f"  {np.sum(probs):7.4f}"
        )

print("\nAt zero hint the five stored probabilities capture nearly all of the")
print("state; hinting (1,1,1) raises it monotonically at the others' expense.")
