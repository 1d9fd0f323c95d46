"""
Checking against exhaustive search
==================================

On small blocks a depth-first search over simple paths gives the true
maximum.  Compare it with the closed-form bound and the constructed path.
"""

from collections import Counter

from meshlp import (Rect, adjust_peeling, brute_longest, longest_path, normalize, peel,
                    upper_bound)
from meshlp.oracle import brute_longest_length
from meshlp.sequential import AdjustmentFailed

R = Rect.of(4, 3)
gaps = Counter()
for s in R.vertices():
    for t in R.vertices():
        if s != t:
            best = brute_longest_length(R, s, t)
            assert best == upper_bound(R, s, t) == len(longest_path(R, s, t))
            gaps[R.size - best] += 1
print("4 x 3: vertices left out ->", dict(gaps))

# The search also returns a witness.
print(brute_longest(Rect.of(4, 2), (2, 1), (2, 2)).tolist())

# In a 5 x 4 block with s and t stacked in column 2 no border peeling keeps
# the bound, so the solver splits the block differently.  The path is
# still as long as the bound allows.
Q, s, t = Rect.of(5, 4), (2, 1), (2, 2)
NR, ns, nt, _ = normalize(Q, s, t)
try:
    adjust_peeling(peel(NR, ns, nt), NR, ns, nt)
except AdjustmentFailed as e:
    print("no proper peeling:", e)
print("length", len(longest_path(Q, s, t)), "bound", upper_bound(Q, s, t),
      "oracle", brute_longest_length(Q, s, t))
