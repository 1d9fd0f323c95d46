"""Hypothesis strategies for grid instances."""
from hypothesis import strategies as st

from meshlp import Rect, Vertex


@st.composite
def instances(draw, max_side=12, min_size=2):
    m = draw(st.integers(1, max_side))
    n = draw(st.integers(1, max_side))
    if m * n < min_size:
        m = 2
    s = Vertex(draw(st.integers(1, m)), draw(st.integers(1, n)))
    t = Vertex(draw(st.integers(1, m)), draw(st.integers(1, n)))
    if s == t:
        t = Vertex(m, n) if s == (1, 1) else Vertex(1, 1)
    return Rect.of(m, n), s, t


@st.composite
def placed_instances(draw, max_side=12):
    """Instances on a rectangle whose origin is not (1, 1)."""
    R, s, t = draw(instances(max_side))
    ox, oy = draw(st.integers(-5, 5)), draw(st.integers(-5, 5))
    P = Rect.of(R.m, R.n, ox, oy)
    return P, P.to_abs(s), P.to_abs(t)
