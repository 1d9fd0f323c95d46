"""
One processor per vertex
========================

Every processor of an m x n mesh computes its own successor from its
coordinates and the shared endpoints, with no messages.  The simulation
runs all of them in lockstep on numpy arrays and counts operations.
"""

import time

from meshlp import Rect, longest_path, reconstruct, run_parallel
from meshlp.parallel import PHASES

# The successor map for the 15 x 11 instance, followed back into a path.
smap = run_parallel(Rect.of(15, 11), (6, 5), (8, 9))
path = reconstruct(smap)
print("path of", len(path), "vertices; sequential gives",
      len(longest_path(Rect.of(15, 11), (6, 5), (8, 9))))

# Operations per phase for the busiest processor.
for phase in PHASES:
    print(f"{phase:>10}: {smap.ops.max_per_phase()[phase]}")

# The per-processor count does not grow with the mesh, while the simulated
# wall time of course does: one numpy lane per processor.
for k in (10, 100, 500, 1000):
    t0 = time.perf_counter()
    ops = run_parallel(Rect.of(k, k), (k // 3, k // 3), (2 * k // 3, 2 * k // 3 + 1)).ops
    print(f"{k:>5}x{k:<5} max ops {ops.max_total():>4}   {time.perf_counter() - t0:.3f} s")

# A JSON dump of a small map: one [x, y, successor] triple per vertex.
print(run_parallel(Rect.of(3, 2), (1, 1), (3, 2)).to_json())
