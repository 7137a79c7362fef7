"""Walk an inconsistent judgment matrix through automatic repair.

Run: python3 demos/repair_walkthrough.py
"""

import numpy as np

from cloudmcdm.iahp import auto_correct, consistency_ratio, principal_weights

# A 4x4 matrix with a deliberate cycle: A>B, B>C, but C>A.
j = np.array([
    [1.0, 3.0, 1.0, 5.0],
    [1 / 3, 1.0, 3.0, 3.0],
    [1.0, 1 / 3, 1.0, 1 / 5],
    [1 / 5, 1 / 3, 5.0, 1.0],
])

lam, ci, cr = consistency_ratio(j)
print(f"original: lambda_max={lam:.4f}  CI={ci:.4f}  CR={cr:.4f}")

repaired, trace = auto_correct(j)
print(f"repair trace (distance to consistent reference): "
      + " -> ".join(f"{d:.4f}" for d in trace.distances))
print(f"iterations={trace.iterations}  final CR={trace.final_cr:.4f}")

w = principal_weights(repaired, ids=("A", "B", "C", "D"))
print("repaired priority weights:")
for name, weight in w.as_dict().items():
    print(f"  {name}: {weight:.4f}")
