"""
Longest paths in a rectangular grid
===================================

Solve a few instances, look at the bound that the construction reaches,
and draw the results.
"""

from meshlp import Rect, classify, longest_path, peel, upper_bound, validate_path
from meshlp.cli import render_ascii

# A 15 x 11 grid with both endpoints black.  The block has an odd number of
# vertices, so the colors force the path to leave two of them out.
R = Rect.of(15, 11)
s, t = (6, 5), (8, 9)
p = longest_path(R, s, t)
print(classify(R, s, t).value, "bound", upper_bound(R, s, t), "length", len(p))
assert validate_path(R, p, s, t)

# The construction first strips four border rectangles that can be covered
# by cycles; the endpoints stay in the core R5.
peeling = peel(R, s, t)
print("cuts", peeling.cuts, "core", peeling.R5)

# The picture marks unused vertices with '.'
print(render_ascii(R.m, R.n, p.vertices, s, t))

# Small blocks and strips go through closed-form cases.
for dims, a, b in [((5, 1), (2, 1), (4, 1)), ((4, 2), (2, 1), (2, 2)), ((3, 3), (2, 1), (2, 3))]:
    Q = Rect.of(*dims)
    q = longest_path(Q, a, b)
    print(dims, a, b, classify(Q, a, b).value, len(q), "of", Q.size)
    print(render_ascii(Q.m, Q.n, q.vertices, a, b))
