"""Rectangular grid graph geometry, coloring and the longest-path bound.

Coordinates are 1-based ``(x, y)`` with ``(1, 1)`` in the upper-left corner;
``x`` indexes columns (``1..m``) and ``y`` indexes rows (``1..n``).  Path
lengths are vertex counts throughout, so a Hamiltonian path has length
``m * n``.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterator, NamedTuple

import numpy as np


class GridError(ValueError):
    """Base class for invalid grid instances."""


class IdenticalEndpoints(GridError):
    pass


class OutOfBounds(GridError):
    pass


class Vertex(NamedTuple):
    x: int
    y: int


class Color(enum.Enum):
    WHITE = "white"
    BLACK = "black"


class ProblemClass(str, enum.Enum):
    F1 = "F1"
    F2Star = "F2*"
    C0 = "C0"
    C1 = "C1"
    C2 = "C2"


@dataclass(frozen=True)
class Rect:
    """Axis-aligned block of the integer grid.

    ``origin`` is the absolute position of local vertex ``(1, 1)``.  A zero
    width or height is the empty rectangle.
    """

    origin: Vertex
    m: int
    n: int

    @classmethod
    def of(cls, m: int, n: int, x0: int = 1, y0: int = 1) -> "Rect":
        return cls(Vertex(x0, y0), m, n)

    @classmethod
    def span(cls, x1: int, x2: int, y1: int, y2: int) -> "Rect":
        """Rectangle covering columns ``x1..x2`` and rows ``y1..y2`` (inclusive)."""
        return cls(Vertex(x1, y1), max(0, x2 - x1 + 1), max(0, y2 - y1 + 1))

    @property
    def size(self) -> int:
        return self.m * self.n

    @property
    def empty(self) -> bool:
        return self.m <= 0 or self.n <= 0

    @property
    def even_sized(self) -> bool:
        return self.size % 2 == 0

    @property
    def x1(self) -> int:
        return self.origin.x

    @property
    def y1(self) -> int:
        return self.origin.y

    @property
    def x2(self) -> int:
        return self.origin.x + self.m - 1

    @property
    def y2(self) -> int:
        return self.origin.y + self.n - 1

    def contains(self, v) -> bool:
        return self.x1 <= v[0] <= self.x2 and self.y1 <= v[1] <= self.y2

    def to_local(self, v) -> Vertex:
        return Vertex(v[0] - self.origin.x + 1, v[1] - self.origin.y + 1)

    def to_abs(self, v) -> Vertex:
        return Vertex(v[0] + self.origin.x - 1, v[1] + self.origin.y - 1)

    def corners(self) -> list[Vertex]:
        return [Vertex(self.x1, self.y1), Vertex(self.x2, self.y1),
                Vertex(self.x1, self.y2), Vertex(self.x2, self.y2)]

    def vertices(self) -> Iterator[Vertex]:
        for y in range(self.y1, self.y2 + 1):
            for x in range(self.x1, self.x2 + 1):
                yield Vertex(x, y)


def color(v) -> Color:
    return Color.WHITE if (v[0] + v[1]) % 2 == 0 else Color.BLACK


def is_white(v) -> bool:
    return (v[0] + v[1]) % 2 == 0


# ---------------------------------------------------------------------------
# Symmetries


@dataclass(frozen=True)
class Transform:
    """A symmetry of an ``m x n`` block plus an optional endpoint swap.

    Maps original local coordinates to normalized ones by transposing first,
    then flipping within the (possibly transposed) dimensions.  ``origin``
    is the absolute origin of the original block so that results can be
    mapped straight back to absolute coordinates.
    """

    m: int
    n: int
    transpose: bool = False
    flip_x: bool = False
    flip_y: bool = False
    swap: bool = False
    origin: Vertex = Vertex(1, 1)

    @property
    def image_dims(self) -> tuple[int, int]:
        return (self.n, self.m) if self.transpose else (self.m, self.n)

    def forward(self, v) -> Vertex:
        """Original local coordinates -> normalized coordinates."""
        x, y = v
        if self.transpose:
            x, y = y, x
        mm, nn = self.image_dims
        if self.flip_x:
            x = mm + 1 - x
        if self.flip_y:
            y = nn + 1 - y
        return Vertex(x, y)

    def inverse(self, v) -> Vertex:
        """Normalized coordinates -> original local coordinates."""
        x, y = v
        mm, nn = self.image_dims
        if self.flip_x:
            x = mm + 1 - x
        if self.flip_y:
            y = nn + 1 - y
        if self.transpose:
            x, y = y, x
        return Vertex(x, y)

    def inverse_array(self, pts: np.ndarray) -> np.ndarray:
        """Vectorized :meth:`inverse`; also translates to absolute coordinates."""
        pts = np.asarray(pts, dtype=np.int64)
        if pts.size == 0:
            return pts.reshape(0, 2)
        x = pts[:, 0].copy()
        y = pts[:, 1].copy()
        mm, nn = self.image_dims
        if self.flip_x:
            x = mm + 1 - x
        if self.flip_y:
            y = nn + 1 - y
        if self.transpose:
            x, y = y, x
        out = np.empty_like(pts)
        out[:, 0] = x + (self.origin.x - 1)
        out[:, 1] = y + (self.origin.y - 1)
        return out

    def restore_path(self, pts: np.ndarray) -> np.ndarray:
        """Map a normalized s->t path back to an absolute path in the original order."""
        out = self.inverse_array(pts)
        return out[::-1].copy() if self.swap else out


def symmetries(m: int, n: int) -> Iterator[Transform]:
    """The 8 symmetries of an ``m x n`` block (duplicates when ``m == n``)."""
    for transpose in (False, True):
        for flip_x in (False, True):
            for flip_y in (False, True):
                yield Transform(m, n, transpose, flip_x, flip_y)


def _check(R: Rect, s, t) -> None:
    if tuple(s) == tuple(t):
        raise IdenticalEndpoints(f"s and t coincide at {tuple(s)}")
    for name, v in (("s", s), ("t", t)):
        if not R.contains(v):
            raise OutOfBounds(f"{name}={tuple(v)} lies outside {R.m}x{R.n} at {tuple(R.origin)}")


def normalize(R: Rect, s, t) -> tuple[Rect, Vertex, Vertex, Transform]:
    """Bring an instance into the ``m >= n``, ``s_x <= t_x`` frame.

    The returned rectangle has origin ``(1, 1)``; ``Transform.restore_path``
    maps any path of the normalized instance back onto the original one.
    """
    _check(R, s, t)
    ls, lt = R.to_local(s), R.to_local(t)
    tr = Transform(R.m, R.n, transpose=R.m < R.n, origin=R.origin)
    ns, nt = tr.forward(ls), tr.forward(lt)
    if ns.x > nt.x:
        ns, nt = nt, ns
        tr = Transform(R.m, R.n, tr.transpose, swap=True, origin=R.origin)
    mm, nn = tr.image_dims
    return Rect.of(mm, nn), ns, nt, tr


# ---------------------------------------------------------------------------
# Conditions and classification (all on local, normalized coordinates)


def color_compatible(R: Rect, s, t) -> bool:
    sw, tw = is_white(R.to_local(s)), is_white(R.to_local(t))
    if R.size % 2:
        return sw and tw
    return sw != tw


def _is_corner(m: int, n: int, v) -> bool:
    return v[0] in (1, m) and v[1] in (1, n)


def _f1(m: int, n: int, s, t) -> bool:
    return n == 1 and not (_is_corner(m, n, s) and _is_corner(m, n, t))


def _f2(m: int, n: int, s, t) -> bool:
    # the only non-boundary edges of a 2-row block are interior rungs
    return n == 2 and s[0] == t[0] and 1 < s[0] < m


def _f3(m: int, n: int, s, t) -> bool:
    for g in symmetries(m, n):
        mm, nn = g.image_dims
        if nn != 3 or mm % 2:
            continue
        for a, b in ((s, t), (t, s)):
            a2, b2 = g.forward(a), g.forward(b)
            if is_white(a2) or not is_white(b2):
                continue
            if (a2.y == 2 and a2.x < b2.x) or (a2.y != 2 and a2.x < b2.x - 1):
                return True
    return False


def _f2star(m: int, n: int, s, t) -> bool:
    return n == 2 and (s[0] == t[0] or (s[0] == t[0] - 1 and s[1] != t[1]))


def forbidden_conditions(R: Rect, s, t) -> set[str]:
    """Every Hamiltonicity obstruction among F1, F2, F3 that holds."""
    ls, lt = R.to_local(s), R.to_local(t)
    m, n = R.m, R.n
    if m < n:
        m, n = n, m
        ls, lt = Vertex(ls.y, ls.x), Vertex(lt.y, lt.x)
    if ls.x > lt.x:
        ls, lt = lt, ls
    found = set()
    if _f1(m, n, ls, lt):
        found.add("F1")
    if _f2(m, n, ls, lt):
        found.add("F2")
    if _f3(m, n, ls, lt):
        found.add("F3")
    return found


def is_hamiltonian(R: Rect, s, t) -> bool:
    _check(R, s, t)
    return color_compatible(R, s, t) and not forbidden_conditions(R, s, t)


def _classify_local(m: int, n: int, s, t) -> ProblemClass:
    # assumes m >= n and s_x <= t_x
    if _f1(m, n, s, t):
        return ProblemClass.F1
    if _f2star(m, n, s, t):
        return ProblemClass.F2Star
    sw, tw = is_white(s), is_white(t)
    odd = (m * n) % 2 == 1
    compatible = (sw and tw) if odd else (sw != tw)
    if compatible:
        return ProblemClass.C2 if _f3(m, n, s, t) else ProblemClass.C0
    if odd and not sw and not tw:
        return ProblemClass.C2
    return ProblemClass.C1


def _bound_local(m: int, n: int, s, t) -> int:
    cls = _classify_local(m, n, s, t)
    if cls is ProblemClass.F1:
        return t[0] - s[0] + 1
    if cls is ProblemClass.F2Star:
        return max(t[0] + s[0], 2 * m - t[0] - s[0] + 2)
    return m * n - {ProblemClass.C0: 0, ProblemClass.C1: 1, ProblemClass.C2: 2}[cls]


def _canon(m: int, n: int, s, t):
    if m < n:
        m, n = n, m
        s, t = (s[1], s[0]), (t[1], t[0])
    if s[0] > t[0]:
        s, t = t, s
    return m, n, s, t


def classify(R: Rect, s, t) -> ProblemClass:
    _check(R, s, t)
    m, n, ls, lt = _canon(R.m, R.n, R.to_local(s), R.to_local(t))
    return _classify_local(m, n, ls, lt)


def upper_bound(R: Rect, s, t) -> int:
    """Maximum vertex count of an s-t path in ``R`` (attained, per the theory)."""
    _check(R, s, t)
    return bound(R.m, R.n, R.to_local(s), R.to_local(t))


def bound(m: int, n: int, s, t) -> int:
    """:func:`upper_bound` on bare local coordinates, any orientation.

    ``s == t`` is accepted and yields 1 (the trivial one-vertex path).
    """
    if s[0] == t[0] and s[1] == t[1]:
        return 1
    m, n, s, t = _canon(m, n, s, t)
    return _bound_local(m, n, s, t)
