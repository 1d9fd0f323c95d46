"""Linear-time longest s-t path construction in rectangular meshes.

Pipeline for ``m >= n >= 3``: peel the mesh into four even-sized border
blocks R1..R4 and a core R5 in which ``s`` and ``t`` are antipodes, solve the
core by trisecting it into two 2-thick end bands and a middle band chained
through junction corners, cover R1..R4 with Hamiltonian cycles and splice
those cycles into the core path across parallel edges.  Strips (``n <= 2``)
and the 3x3 block are solved directly.

Paths are ``(L, 2)`` int64 arrays of absolute ``(x, y)`` coordinates.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, replace
from typing import Optional

import numpy as np

from .grid import (
    GridError,
    Rect,
    Transform,
    Vertex,
    bound,
    normalize,
    symmetries,
    upper_bound,
)


class AdjustmentFailed(RuntimeError):
    pass


class NoParallelEdges(RuntimeError):
    pass


class NotEvenSized(GridError):
    pass


class DegenerateSide(GridError):
    pass


class Side(str, enum.Enum):
    TOP = "top"
    BOTTOM = "bottom"
    LEFT = "left"
    RIGHT = "right"


class Path:
    """An s-t path; ``vertices`` is an ``(L, 2)`` array of absolute coordinates."""

    def __init__(self, vertices):
        self.vertices = np.asarray(vertices, dtype=np.int64).reshape(-1, 2)

    def __len__(self) -> int:
        return len(self.vertices)

    def __repr__(self) -> str:
        return f"Path(len={len(self)}, {self.vertices[0].tolist()}..{self.vertices[-1].tolist()})"

    def to_list(self) -> list[list[int]]:
        return self.vertices.tolist()


class Cycle(Path):
    def __repr__(self) -> str:
        return f"Cycle(len={len(self)})"


# ---------------------------------------------------------------------------
# Strips and the 3x3 block.  Local solvers take a normalized instance
# (m >= n, s_x <= t_x) with origin (1, 1) and return local coordinates.


def _row(x1: int, x2: int, y: int) -> np.ndarray:
    step = 1 if x2 >= x1 else -1
    xs = np.arange(x1, x2 + step, step, dtype=np.int64)
    return np.column_stack([xs, np.full(len(xs), y, dtype=np.int64)])


def _col(x: int, y1: int, y2: int) -> np.ndarray:
    step = 1 if y2 >= y1 else -1
    ys = np.arange(y1, y2 + step, step, dtype=np.int64)
    return np.column_stack([np.full(len(ys), x, dtype=np.int64), ys])


def _strip1_local(m: int, s, t) -> np.ndarray:
    return _row(s[0], t[0], 1)


def _strip2_local(m: int, s, t) -> np.ndarray:
    sx, sy = s
    tx, ty = t
    so, to = 3 - sy, 3 - ty
    if sx == tx:
        # s and t cut the strip in two; sweep the larger side
        if 2 * sx >= 2 * (m - sx + 1):
            return np.vstack([_row(sx, 1, sy), _row(1, sx, so)])
        return np.vstack([_row(sx, m, sy), _row(m, sx, so)])
    if tx == sx + 1 and sy != ty:
        if 2 * sx + 1 >= 2 * m - 2 * sx + 1:
            return np.vstack([_row(sx, 1, sy), _row(1, tx, ty)])
        return np.vstack([_row(sx, m, sy), _row(m, tx, ty)])
    # sweep columns 1..sx around s, snake the middle, sweep tx..m into t
    parts = [_row(sx, 1, sy), _row(1, sx, so)]
    row = so
    k = tx - sx - 1
    exit_row = row if k % 2 == 0 else 3 - row
    skip = exit_row != to
    for c in range(sx + 1, tx):
        if skip:
            parts.append(np.array([[c, row]], dtype=np.int64))
            skip = False
        else:
            parts.append(np.array([[c, row], [c, 3 - row]], dtype=np.int64))
            row = 3 - row
    parts += [_row(tx, m, to), _row(m, tx, ty)]
    return np.vstack(parts)


# Longest paths of R(3,3) for one representative of every endpoint orbit
# under the block symmetries and endpoint reversal; digits are x then y.
_SMALL_TABLE = {
    ("11", "12"): "1121313233231312",
    ("11", "13"): "112131323323221213",
    ("11", "22"): "112131323323131222",
    ("11", "23"): "1121313222121323",
    ("11", "33"): "112131322212132333",
    ("12", "21"): "12132333322221",
    ("12", "22"): "1213233332312122",
    ("12", "32"): "12132322213132",
}


def _decode(code: str) -> np.ndarray:
    return np.array([[int(code[i]), int(code[i + 1])] for i in range(0, len(code), 2)],
                    dtype=np.int64)


def _small_local(m: int, n: int, s, t) -> np.ndarray:
    assert m == 3 and n == 3
    for g in symmetries(3, 3):
        a, b = g.forward(s), g.forward(t)
        for key, rev in (((f"{a.x}{a.y}", f"{b.x}{b.y}"), False),
                         ((f"{b.x}{b.y}", f"{a.x}{a.y}"), True)):
            if key in _SMALL_TABLE:
                pts = _decode(_SMALL_TABLE[key])
                if rev:
                    pts = pts[::-1]
                return g.inverse_array(pts)
    raise AssertionError(f"no 3x3 pattern for {s}->{t}")


# ---------------------------------------------------------------------------
# Peeling


@dataclass(frozen=True)
class Peeling:
    R1: Rect
    R2: Rect
    R3: Rect
    R4: Rect
    R5: Rect
    cuts: tuple[int, int, int, int]
    vertical_first: bool

    @property
    def borders(self) -> list[Rect]:
        return [self.R1, self.R2, self.R3, self.R4]


def peel_cuts(m: int, n: int, s, t) -> tuple[int, int, int, int]:
    """Closed-form separation lines: last column of R1, first column of R2,
    last row of R3, first row of R4."""
    r1 = s[0] - 2 if s[0] % 2 == 0 else s[0] - 1
    r2 = t[0] + 1 if t[0] % 2 == m % 2 else t[0] + 2
    lo, hi = min(s[1], t[1]), max(s[1], t[1])
    r3 = lo - 2 if lo % 2 == 0 else lo - 1
    r4 = hi + 1 if hi % 2 == n % 2 else hi + 2
    return r1, r2, r3, r4


def _build_peeling(m: int, n: int, cuts, vertical_first: bool, origin: Vertex) -> Peeling:
    r1, r2, r3, r4 = cuts
    ox, oy = origin.x - 1, origin.y - 1

    def sp(x1, x2, y1, y2):
        return Rect.span(x1 + ox, x2 + ox, y1 + oy, y2 + oy)

    if vertical_first:
        R1, R2 = sp(1, r1, 1, n), sp(r2, m, 1, n)
        R3, R4 = sp(r1 + 1, r2 - 1, 1, r3), sp(r1 + 1, r2 - 1, r4, n)
    else:
        R3, R4 = sp(1, m, 1, r3), sp(1, m, r4, n)
        R1, R2 = sp(1, r1, r3 + 1, r4 - 1), sp(r2, m, r3 + 1, r4 - 1)
    R5 = sp(r1 + 1, r2 - 1, r3 + 1, r4 - 1)
    return Peeling(R1, R2, R3, R4, R5, tuple(cuts), vertical_first)


def peel(R: Rect, s, t) -> Peeling:
    """Initial peeling of a normalized instance with both sides greater than 2."""
    ls, lt = R.to_local(s), R.to_local(t)
    cuts = peel_cuts(R.m, R.n, ls, lt)
    vertical_first = not (R.m % 2 == 1 and ls.x == lt.x)
    return _build_peeling(R.m, R.n, cuts, vertical_first, R.origin)


def antipodes(R: Rect, s, t) -> bool:
    """``s`` and ``t`` sit within two lines of opposite sides, along either axis."""
    a, b = R.to_local(s), R.to_local(t)
    for u, v, size in ((a.x, b.x, R.m), (a.y, b.y, R.n)):
        lo, hi = min(u, v), max(u, v)
        if lo <= 2 and hi >= size - 1:
            return True
    return False


def peeling_invariants(p: Peeling, R: Rect, s, t) -> list[str]:
    """Names of violated peeling clauses (empty when the peeling is sound)."""
    bad = []
    parts = p.borders + [p.R5]
    if sum(r.size for r in parts if not r.empty) != R.size:
        bad.append("partition")
    for r in parts:
        if not r.empty and not (R.contains(r.corners()[0]) and R.contains(r.corners()[3])):
            bad.append("partition")
    if p.R5.empty or not (p.R5.contains(s) and p.R5.contains(t)):
        return bad + ["endpoints"]
    if not antipodes(p.R5, s, t):
        bad.append("antipodes")
    for name, r in zip(("R1", "R2", "R3", "R4"), p.borders):
        if not r.empty and (r.size % 2 or r.m < 2 or r.n < 2):
            bad.append(name)
    if p.R5.m % 2 != R.m % 2 or p.R5.n % 2 != R.n % 2:
        bad.append("parity")
    if (p.R5.origin.x - R.origin.x + p.R5.origin.y - R.origin.y) % 2:
        bad.append("colors")
    return bad


def is_proper(p: Peeling, R: Rect, s, t) -> bool:
    border = sum(r.size for r in p.borders if not r.empty)
    return border + upper_bound(p.R5, s, t) == upper_bound(R, s, t)


def _candidate_moves(cuts):
    """Boundary adjustments in a fixed order: widen R5 from R1, from R2,
    from R3, from R4, then hand R5's bottom row to R4 or its top row to R3."""
    r1, r2, r3, r4 = cuts
    for d in (1, 2):
        yield (r1 - d, r2, r3, r4)
    for d in (1, 2):
        yield (r1, r2 + d, r3, r4)
    for d in (1, 2):
        yield (r1, r2, r3 - d, r4)
    for d in (1, 2):
        yield (r1, r2, r3, r4 + d)
    yield (r1, r2, r3, r4 - 1)
    yield (r1, r2, r3 + 1, r4)


def adjust_peeling(p: Peeling, R: Rect, s, t) -> Peeling:
    """Return a proper peeling derived from ``p`` by moving border rows or columns.

    Single moves are tried first, then pairs of moves; a candidate must keep
    every peeling clause and the core's parity and colors.
    """
    if is_proper(p, R, s, t):
        return p

    def ok(cuts):
        r1, r2, r3, r4 = cuts
        if not (0 <= r1 < r2 - 1 and r2 <= R.m + 1 and 0 <= r3 < r4 - 1 and r4 <= R.n + 1):
            return None
        q = _build_peeling(R.m, R.n, cuts, p.vertical_first, R.origin)
        if peeling_invariants(q, R, s, t) or not is_proper(q, R, s, t):
            return None
        return q

    for cuts in _candidate_moves(p.cuts):
        q = ok(cuts)
        if q is not None:
            return q
    for first in _candidate_moves(p.cuts):
        for cuts in _candidate_moves(first):
            q = ok(cuts)
            if q is not None:
                return q
    raise AdjustmentFailed(f"no proper peeling for {R.m}x{R.n} s={tuple(s)} t={tuple(t)}")


# ---------------------------------------------------------------------------
# Trisection of the core


@dataclass(frozen=True)
class Trisection:
    Rs: Rect
    Rm: Rect
    Rt: Rect
    orientation: str  # "horizontal": bands are row ranges


@dataclass(frozen=True)
class JunctionAssignment:
    p: Vertex
    q: Vertex
    m_enter: Optional[Vertex]
    m_exit: Optional[Vertex]


@dataclass(frozen=True)
class _Frame:
    """Core viewed with horizontal bands and ``s`` in the top band."""

    tr: Transform
    W: int
    H: int
    s: Vertex
    t: Vertex


def _frame(R5: Rect, s, t, orientation: str) -> Optional[_Frame]:
    ls, lt = R5.to_local(s), R5.to_local(t)
    transpose = orientation == "vertical"
    tr = Transform(R5.m, R5.n, transpose=transpose, origin=R5.origin)
    a, b = tr.forward(ls), tr.forward(lt)
    W, H = tr.image_dims
    if a.y > b.y:
        tr = replace(tr, flip_y=True)
        a, b = tr.forward(ls), tr.forward(lt)
    if H < 4 or a.y > 2 or b.y < H - 1:
        return None
    return _Frame(tr, W, H, a, b)


def _orientations(R5: Rect) -> list[str]:
    if R5.m < 4 or (R5.m >= 4 and R5.n >= 4):
        return ["horizontal", "vertical"]
    return ["vertical", "horizontal"]


def trisect(R5: Rect, s, t) -> Trisection:
    """Split the core into end bands holding ``s`` and ``t`` and a middle band."""
    for orient in _orientations(R5):
        f = _frame(R5, s, t, orient)
        if f is not None:
            return _frame_trisection(f, orient)
    raise ValueError(f"core {R5.m}x{R5.n} cannot be trisected for s={tuple(s)} t={tuple(t)}")


def _frame_rect(f: _Frame, x1, x2, y1, y2) -> Rect:
    if y2 < y1:
        return Rect(f.tr.origin, 0, 0)
    pts = f.tr.inverse_array(np.array([[x1, y1], [x2, y2]], dtype=np.int64))
    xs, ys = sorted(pts[:, 0]), sorted(pts[:, 1])
    return Rect.span(int(xs[0]), int(xs[1]), int(ys[0]), int(ys[1]))


def _frame_trisection(f: _Frame, orient: str) -> Trisection:
    Rs = _frame_rect(f, 1, f.W, 1, 2)
    Rm = _frame_rect(f, 1, f.W, 3, f.H - 2)
    Rt = _frame_rect(f, 1, f.W, f.H - 1, f.H)
    return Trisection(Rs, Rm, Rt, orient)


# Slab chaining.  The core, viewed with s in its top two rows and t in its
# bottom two, is consumed two rows at a time: each slab is crossed from its
# entry vertex to an exit on its lower row, chosen so that the slab's bound
# plus the bound of what remains equals the bound of the whole region.
# Runs of slabs entered at a corner are swept by U-turns in one go.


@dataclass(frozen=True)
class SlabStep:
    y: int          # top row of the slab (frame coordinates)
    a: Vertex       # entry vertex
    p: Vertex       # exit vertex on row y + 1


@dataclass(frozen=True)
class UTurnRun:
    y: int          # top row of the first slab
    side: int       # column of every entry and exit (1 or W)
    count: int      # number of slabs


@dataclass(frozen=True)
class CorePlan:
    W: int
    H: int
    s: Vertex
    t: Vertex
    steps: tuple          # SlabStep and UTurnRun items, top to bottom
    final_y: int          # first row of the closing block
    final_a: Vertex       # entry of the closing block

    @property
    def total(self) -> int:
        n = 0
        for st in self.steps:
            if isinstance(st, UTurnRun):
                n += 2 * self.W * st.count
            else:
                n += bound(self.W, 2, (st.a.x, st.a.y - st.y + 1), (st.p.x, 2))
        return n + bound(self.W, self.H - self.final_y + 1,
                         (self.final_a.x, 1), (self.t.x, self.t.y - self.final_y + 1))


def exit_columns(W: int, a, t) -> list[int]:
    """Candidate exit columns of a slab, corners first."""
    order = []
    if a[0] in (1, W):
        order.append(a[0])
    order += [1, W, a[0] - 1, a[0] + 1, a[0], t[0] - 1, t[0] + 1, t[0], 2, W - 1, 3, W - 2]
    seen, out = set(), []
    for c in order:
        if 1 <= c <= W and c not in seen:
            seen.add(c)
            out.append(c)
    return out


def _region_bound(W: int, H: int, y0: int, a, t) -> int:
    return bound(W, H - y0 + 1, (a[0], a[1] - y0 + 1), (t[0], t[1] - y0 + 1))


def _slab_exit(W: int, H: int, y0: int, a: Vertex, t: Vertex) -> Optional[Vertex]:
    whole = _region_bound(W, H, y0, a, t)
    for c in exit_columns(W, a, t):
        p, below = Vertex(c, y0 + 1), Vertex(c, y0 + 2)
        if p == a or below == t:
            continue
        head = bound(W, 2, (a.x, a.y - y0 + 1), (c, 2))
        if head + _region_bound(W, H, y0 + 2, below, t) == whole:
            return p
    return None


def core_plan(W: int, H: int, s, t) -> Optional[CorePlan]:
    """Slab plan for a ``W x H`` frame with ``s`` in rows 1-2 and ``t`` in rows
    ``H-1..H``; ``None`` when no candidate exit keeps the bound."""
    s, t = Vertex(*s), Vertex(*t)
    y0, a = 1, s
    steps = []
    while H - y0 + 1 >= 4:
        h = H - y0 + 1
        j = (h - 4) // 2
        if j > 0 and a.y == y0 and a.x in (1, W):
            landing = Vertex(a.x, y0 + 2 * j)
            if landing != t and 2 * W * j + _region_bound(W, H, y0 + 2 * j, landing, t) \
                    == _region_bound(W, H, y0, a, t):
                steps.append(UTurnRun(y0, a.x, j))
                y0, a = y0 + 2 * j, landing
                continue
        p = _slab_exit(W, H, y0, a, t)
        if p is None:
            return None
        steps.append(SlabStep(y0, a, p))
        y0, a = y0 + 2, Vertex(p.x, y0 + 2)
    return CorePlan(W, H, s, t, tuple(steps), y0, a)


def _uturn_block(W: int, side: int, y0: int, count: int) -> np.ndarray:
    far = W + 1 - side
    lane = np.concatenate([np.arange(side, far + (1 if far >= side else -1), 1 if far >= side else -1),
                           np.arange(far, side + (1 if side >= far else -1), 1 if side >= far else -1)])
    rows = np.repeat(np.array([0, 1]), W)
    xs = np.tile(lane, count)
    ys = (y0 + rows[None, :] + 2 * np.arange(count)[:, None]).ravel()
    return np.column_stack([xs, ys]).astype(np.int64)


def _shift(pts: np.ndarray, dy: int) -> np.ndarray:
    pts = pts.copy()
    pts[:, 1] += dy
    return pts


def plan_path(plan: CorePlan) -> np.ndarray:
    """Frame-coordinate path realizing a :class:`CorePlan`."""
    W = plan.W
    parts = []
    for st in plan.steps:
        if isinstance(st, UTurnRun):
            parts.append(_uturn_block(W, st.side, st.y, st.count))
        else:
            seg = _solve_local(W, 2, (st.a.x, st.a.y - st.y + 1), (st.p.x, 2))
            parts.append(_shift(seg, st.y - 1))
    y0, a, t = plan.final_y, plan.final_a, plan.t
    seg = _solve_local(W, plan.H - y0 + 1, (a.x, 1), (t.x, t.y - y0 + 1))
    parts.append(_shift(seg, y0 - 1))
    return np.vstack(parts)


def _junction_columns(W: int) -> list[int]:
    return sorted({1, 2, 3, W - 2, W - 1, W} & set(range(1, W + 1)))


def find_junctions(tri: Trisection, R5: Rect, s, t) -> Optional[JunctionAssignment]:
    """Exit ``p`` of the s band, entry ``q`` of the t band and the middle band's
    entry and exit, such that the three band bounds add up to the core bound.

    Candidates are the band corners and their neighbours; lexicographic order.
    """
    f = _frame(R5, s, t, tri.orientation)
    if f is None:
        return None
    W, H = f.W, f.H
    target = bound(W, H, f.s, f.t)
    k = H - 4
    cols = _junction_columns(W)
    for pc in cols:
        p = Vertex(pc, 2)
        if p == f.s:
            continue
        head = bound(W, 2, f.s, p)
        for qc in cols:
            q = Vertex(qc, H - 1)
            if q == f.t:
                continue
            tail = bound(W, 2, (qc, 1), (f.t.x, f.t.y - (H - 2)))
            if k == 0:
                if qc != pc:
                    continue
                mid, me, mx = 0, None, None
            else:
                me, mx = Vertex(pc, 3), Vertex(qc, H - 2)
                mid = bound(W, k, (pc, 1), (qc, k))
            if head + mid + tail == target:
                back = lambda v: None if v is None else \
                    Vertex(*map(int, f.tr.inverse_array(np.array([v]))[0]))
                return JunctionAssignment(back(p), back(q), back(me), back(mx))
    return None


def solve_no_junction(R5: Rect, s, t, strict: bool = False) -> Path:
    """Core path for a 4-row core that crosses between its two bands at a
    non-corner column.  With ``strict`` the call is refused when a corner
    junction exists.

    When no single crossing keeps the bound (5x4 with ``s=(2,1)``,
    ``t=(4,4)`` is one such core) the slab-chain solver supplies the path.
    """
    for orient in _orientations(R5):
        f = _frame(R5, s, t, orient)
        if f is None or f.H != 4:
            continue
        if strict and find_junctions(_frame_trisection(f, orient), R5, s, t) is not None:
            raise ValueError("instance has a corner junction")
        whole = bound(f.W, 4, f.s, f.t)
        for c in range(2, f.W):
            p, q = Vertex(c, 2), Vertex(c, 1)
            lower_t = (f.t.x, f.t.y - 2)
            if p == f.s or q == lower_t:
                continue
            if bound(f.W, 2, f.s, p) + bound(f.W, 2, q, lower_t) != whole:
                continue
            head = _solve_local(f.W, 2, f.s, p)
            tail = _shift(_solve_local(f.W, 2, q, lower_t), 2)
            return Path(f.tr.inverse_array(np.vstack([head, tail])))
        return Path(_solve_rect(R5, s, t))
    raise ValueError(f"{R5.m}x{R5.n} core is not split into two 2-row bands")


def core_frame(R5: Rect, s, t) -> Optional[tuple[_Frame, CorePlan]]:
    for orient in _orientations(R5):
        f = _frame(R5, s, t, orient)
        if f is None:
            continue
        plan = core_plan(f.W, f.H, f.s, f.t)
        if plan is not None:
            return f, plan
    return None


def _solve_core(R5: Rect, s, t) -> np.ndarray:
    if min(R5.m, R5.n) <= 2 or (R5.m <= 3 and R5.n <= 3):
        return _solve_rect(R5, s, t)
    hit = core_frame(R5, s, t)
    if hit is not None:
        f, plan = hit
        return f.tr.inverse_array(plan_path(plan))
    for orient in _orientations(R5):
        f = _frame(R5, s, t, orient)
        if f is None:
            continue
        local = _split_path(f.W, f.H, f.s, f.t)
        if local is not None:
            return f.tr.inverse_array(local)
    raise AssertionError(f"no core construction for {R5} s={tuple(s)} t={tuple(t)}")


def _split_path(W: int, H: int, s, t) -> Optional[np.ndarray]:
    """Cut the frame once between rows ``k`` and ``k + 1`` and cross at one
    column, solving both blocks independently.  Used when no slab chain fits."""
    whole = bound(W, H, s, t)
    for k in sorted(range(s[1], t[1]), key=lambda k: (k % 2, k)):
        for c in range(1, W + 1):
            p, q = (c, k), (c, 1)
            tq = (t[0], t[1] - k)
            if tuple(p) == tuple(s) or q == tq:
                continue
            if bound(W, k, s, p) + bound(W, H - k, q, tq) != whole:
                continue
            head = _solve_local(W, k, s, p)
            tail = _shift(_solve_local(W, H - k, q, tq), k)
            return np.vstack([head, tail])
    return None


# ---------------------------------------------------------------------------
# Hamiltonian cycles and splicing


def _comb_open_bottom(W: int, H: int) -> np.ndarray:
    # top row left to right, then columns W..1 alternately down and up
    parts = [_row(1, W, 1)]
    for i, c in enumerate(range(W, 0, -1)):
        parts.append(_col(c, 2, H) if i % 2 == 0 else _col(c, H, 2))
    return np.vstack(parts)


_OPEN = {
    Side.BOTTOM: dict(transpose=False, flip_y=False),
    Side.TOP: dict(transpose=False, flip_y=True),
    Side.RIGHT: dict(transpose=True, flip_y=False),
    Side.LEFT: dict(transpose=True, flip_y=True),
}


def open_sides(R: Rect) -> list[Side]:
    """Sides that may be left open: those with an even number of vertices."""
    out = []
    if R.m % 2 == 0:
        out += [Side.BOTTOM, Side.TOP]
    if R.n % 2 == 0:
        out += [Side.RIGHT, Side.LEFT]
    return out


def hamiltonian_cycle(R: Rect, open_side: Optional[Side] = None) -> Cycle:
    """Hamiltonian cycle of ``R`` using every boundary edge except on ``open_side``."""
    if R.m < 2 or R.n < 2:
        raise DegenerateSide(f"{R.m}x{R.n} has a side of length < 2")
    if R.size % 2:
        raise NotEvenSized(f"{R.m}x{R.n} is odd-sized")
    sides = open_sides(R)
    if open_side is None:
        open_side = sides[0]
    open_side = Side(open_side)
    if open_side not in sides:
        raise ValueError(f"side {open_side.value} of {R.m}x{R.n} has an odd vertex count")
    tr = Transform(R.m, R.n, origin=R.origin, **_OPEN[open_side])
    W, H = tr.image_dims
    return Cycle(tr.inverse_array(_comb_open_bottom(W, H)))


def _index_grid(pts: np.ndarray, x0: int, y0: int, w: int, h: int) -> np.ndarray:
    grid = np.full((h + 2, w + 2), -1, dtype=np.int64)
    grid[pts[:, 1] - y0 + 1, pts[:, 0] - x0 + 1] = np.arange(len(pts))
    return grid


def _find_parallel(cyc: np.ndarray, other: np.ndarray, other_closed: bool):
    """First cycle edge (i, i+1) whose translate by a unit vector is an edge of
    ``other``; returns (i, j_of_image_of_cyc[i], j_of_image_of_cyc[i+1])."""
    both = np.vstack([cyc, other])
    x0, y0 = both.min(axis=0)
    x1, y1 = both.max(axis=0)
    grid = _index_grid(other, x0, y0, x1 - x0 + 1, y1 - y0 + 1)
    a = cyc
    b = np.roll(cyc, -1, axis=0)
    L = len(other)
    for dx, dy in ((0, 1), (0, -1), (1, 0), (-1, 0)):
        ia = grid[a[:, 1] + dy - y0 + 1, a[:, 0] + dx - x0 + 1]
        ib = grid[b[:, 1] + dy - y0 + 1, b[:, 0] + dx - x0 + 1]
        diff = np.abs(ia - ib)
        hit = (ia >= 0) & (ib >= 0) & ((diff == 1) | (other_closed & (diff == L - 1)))
        idx = np.flatnonzero(hit)
        if len(idx):
            i = int(idx[0])
            return i, int(ia[i]), int(ib[i])
    return None


def _walk_around(cyc: np.ndarray, i: int, start_at_i: bool) -> np.ndarray:
    """Traverse the cycle without its edge (i, i+1), from c[i] or from c[i+1]."""
    if start_at_i:
        return np.vstack([cyc[i::-1], cyc[:i:-1]])
    return np.vstack([cyc[i + 1:], cyc[:i + 1]])


def merge_cycles(c1, c2) -> Cycle:
    """Join two vertex-disjoint cycles across a pair of parallel edges."""
    a = np.asarray(getattr(c1, "vertices", c1))
    b = np.asarray(getattr(c2, "vertices", c2))
    hit = _find_parallel(b, a, True)
    if hit is None:
        raise NoParallelEdges("cycles share no parallel edge pair")
    i, ja, jb = hit
    # open a between ja and jb so it runs from b[i]'s partner to b[i+1]'s partner
    if (jb - ja) % len(a) == 1:
        seq_a = np.vstack([a[jb:], a[:jb]])        # a[jb] ... a[ja]
        # ends at a[ja] which faces b[i]; walk b from b[i] to b[i+1]
        return Cycle(np.vstack([seq_a, _walk_around(b, i, True)]))
    seq_a = np.vstack([a[ja:], a[:ja]])            # a[ja] ... a[jb]
    return Cycle(np.vstack([seq_a, _walk_around(b, i, False)]))


def merge_cycle_path(c, p) -> Path:
    """Splice a cycle into a path across a pair of parallel edges."""
    cyc = np.asarray(getattr(c, "vertices", c))
    path = np.asarray(getattr(p, "vertices", p))
    if len(cyc) == 0:
        return Path(path)
    hit = _find_parallel(cyc, path, False)
    if hit is None:
        raise NoParallelEdges("cycle and path share no parallel edge pair")
    i, ja, jb = hit
    if jb == ja + 1:
        # path ... path[ja] -> cyc[i] ~~> cyc[i+1] -> path[jb] ...
        mid = _walk_around(cyc, i, True)
        return Path(np.vstack([path[:ja + 1], mid, path[jb:]]))
    mid = _walk_around(cyc, i, False)
    return Path(np.vstack([path[:jb + 1], mid, path[ja:]]))


def _open_side_for(part: Rect, R5: Rect) -> Side:
    """Prefer leaving open the side facing away from the core."""
    sides = open_sides(part)
    if part.x2 < R5.x1:
        pref = [Side.LEFT, Side.TOP, Side.BOTTOM]
    elif part.x1 > R5.x2:
        pref = [Side.RIGHT, Side.TOP, Side.BOTTOM]
    elif part.y2 < R5.y1:
        pref = [Side.TOP, Side.LEFT, Side.RIGHT]
    else:
        pref = [Side.BOTTOM, Side.LEFT, Side.RIGHT]
    for side in pref:
        if side in sides:
            return side
    return sides[0]


def _splice_borders(core: np.ndarray, peeling: Peeling) -> np.ndarray:
    order = [peeling.R3, peeling.R1, peeling.R4, peeling.R2]
    groups: list[np.ndarray] = []
    for part in order:
        if part.empty:
            continue
        cyc = hamiltonian_cycle(part, _open_side_for(part, peeling.R5)).vertices
        for gi, g in enumerate(groups):
            try:
                groups[gi] = merge_cycles(g, cyc).vertices
                break
            except NoParallelEdges:
                continue
        else:
            groups.append(cyc)
    path = core
    pending = groups
    while pending:
        rest = []
        for g in pending:
            try:
                path = merge_cycle_path(g, path).vertices
            except NoParallelEdges:
                rest.append(g)
        if len(rest) == len(pending):
            raise NoParallelEdges("border cycles cannot be spliced into the core path")
        pending = rest
    return path


# ---------------------------------------------------------------------------
# Drivers


def _solve_local(m: int, n: int, s, t) -> np.ndarray:
    """Longest s-t path in ``R(m, n)`` (origin (1, 1)), any orientation."""
    return _solve_rect(Rect.of(m, n), s, t)


@dataclass(frozen=True)
class Construction:
    """Pieces of a solved normalized instance: the peeling used (``None``
    when the instance is a base case or was decomposed otherwise), the path
    through the core and the final path."""

    peeling: Optional[Peeling]
    core: np.ndarray
    path: np.ndarray


def construct(m: int, n: int, s, t) -> Construction:
    """Solve a normalized instance (``m >= n``, ``s_x <= t_x``) on ``R(m, n)``."""
    if n == 1:
        path = _strip1_local(m, s, t)
    elif n == 2:
        path = _strip2_local(m, s, t)
    elif m == 3:
        path = _small_local(m, n, s, t)
    else:
        R = Rect.of(m, n)
        try:
            p = adjust_peeling(peel(R, s, t), R, s, t)
            core = _solve_core(p.R5, s, t)
            return Construction(p, core, _splice_borders(core, p))
        except (AdjustmentFailed, NoParallelEdges):
            path = _decompose(m, n, s, t)
    return Construction(None, path, path)


def _solve_rect(R: Rect, s, t) -> np.ndarray:
    NR, ns, nt, tr = normalize(R, s, t)
    return tr.restore_path(construct(NR.m, NR.n, ns, nt).path)


def _bands(m: int, n: int, s, t):
    """Even-sized side bands free of both endpoints, thinnest first."""
    out = []
    for k in range(2, max(m, n)):
        if k < m and k % 2 == 0 or (k < m and n % 2 == 0):
            if max(s[0], t[0]) <= m - k:
                out.append((Rect.span(m - k + 1, m, 1, n), Rect.span(1, m - k, 1, n)))
            if min(s[0], t[0]) > k:
                out.append((Rect.span(1, k, 1, n), Rect.span(k + 1, m, 1, n)))
        if k < n and (k % 2 == 0 or m % 2 == 0):
            if max(s[1], t[1]) <= n - k:
                out.append((Rect.span(1, m, n - k + 1, n), Rect.span(1, m, 1, n - k)))
            if min(s[1], t[1]) > k:
                out.append((Rect.span(1, m, 1, k), Rect.span(1, m, k + 1, n)))
    return out


def _decompose(m: int, n: int, s, t) -> np.ndarray:
    """Longest path by splitting off a cycle band or by a one-edge cut.

    Covers the instances where no peeling keeps the bound: a side band
    without the endpoints is closed into a cycle and spliced into a path of
    the rest, or the block is cut in two with a single crossing edge.
    """
    whole = bound(m, n, s, t)
    for band, rest in _bands(m, n, s, t):
        if rest.size and bound(rest.m, rest.n, rest.to_local(s), rest.to_local(t)) + band.size != whole:
            continue
        path = _solve_rect(rest, s, t)
        for side in open_sides(band):
            try:
                return merge_cycle_path(hamiltonian_cycle(band, side), path).vertices
            except NoParallelEdges:
                continue
    for (A, B, pa, pb) in _cuts(m, n, s, t):
        la, lb = A.to_local(s), B.to_local(t)
        if bound(A.m, A.n, la, A.to_local(pa)) + bound(B.m, B.n, B.to_local(pb), lb) == whole:
            return np.vstack([_solve_rect(A, s, pa), _solve_rect(B, pb, t)])
    raise AssertionError(f"no decomposition for {m}x{n} s={tuple(s)} t={tuple(t)}")


def _cuts(m: int, n: int, s, t):
    """Single-edge cuts separating s (first block) from t (second block)."""
    if s[1] != t[1]:
        lo, hi = sorted((s[1], t[1]))
        for k in range(lo, hi):
            top, bot = Rect.span(1, m, 1, k), Rect.span(1, m, k + 1, n)
            for x in range(1, m + 1):
                a, b = Vertex(x, k), Vertex(x, k + 1)
                if s[1] < t[1]:
                    if a != s and b != t:
                        yield top, bot, a, b
                elif b != s and a != t:
                    yield bot, top, b, a
    if s[0] != t[0]:
        for k in range(s[0], t[0]):
            left, right = Rect.span(1, k, 1, n), Rect.span(k + 1, m, 1, n)
            for y in range(1, n + 1):
                a, b = Vertex(k, y), Vertex(k + 1, y)
                if a != s and b != t:
                    yield left, right, a, b


def solve_strip1(R: Rect, s, t) -> Path:
    return Path(_solve_rect(R, s, t))


def solve_strip2(R: Rect, s, t) -> Path:
    return Path(_solve_rect(R, s, t))


def solve_small(R: Rect, s, t) -> Path:
    return Path(_solve_rect(R, s, t))


def corner_ham_path(R: Rect, a, b) -> Path:
    """Hamiltonian a-b path; the instance must be Hamiltonian."""
    pts = _solve_rect(R, a, b)
    if len(pts) != R.size:
        raise ValueError(f"({R.m}x{R.n}, {tuple(a)}, {tuple(b)}) is not Hamiltonian")
    return Path(pts)


def longest_path(R: Rect, s, t) -> Path:
    """A longest simple s-t path in ``R``; its length equals ``upper_bound``."""
    return Path(_solve_rect(R, s, t))
