"""Simulated SIMD execution with one virtual processor per vertex.

Every processor runs the same straight-line program on its own index and
the shared inputs ``m, n, s, t``.  Conditionals are predicated: both arms
are evaluated and a select keeps one, so all processors step through the
same instruction stream and :class:`OpCounter` records that stream phase
by phase.  The simulator evaluates each instruction for all processors at
once with numpy, which is exactly lockstep execution.

The phases are

``plan``
    normalize the instance and compress long featureless gaps (see below);
``peel``
    closed-form peeling boundaries, adjusted by constant shifts, and the
    processor's region;
``trisect``
    band boundaries of the core;
``successor``
    the even-sized border parts follow the Hamiltonian-cycle rule; core
    processors follow their pattern;
``combine``
    a fixed number of successor rewrites stitch the cycles into the path.

Patterns.  Between consecutive endpoint coordinates along an axis the
construction repeats every four lines once the gap is long enough (border
combs repeat every two, the slab chain of the core every four), so an
instance is described by its *compressed* form, in which every long gap is
shortened by a multiple of four.  A processor maps its index into the
compressed instance and reads its successor offset from the pattern of
that instance.  Pattern tables are generated by the sequential
construction on first use and cached; each one is checked for periodicity
across every compression window before it is accepted.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional, Union

import numpy as np

from .grid import Rect, Vertex, _check
from .sequential import (Path, _OPEN, _open_side_for, construct,
                         hamiltonian_cycle)


class UnknownPattern(KeyError):
    pass


class BrokenChain(RuntimeError):
    pass


class CycleDetected(RuntimeError):
    pass


class PatternNotPeriodic(RuntimeError):
    """A generated pattern table failed its periodicity check."""


PHASES = ("plan", "peel", "trisect", "successor", "combine")

# Long gaps lose a multiple of PERIOD lines (the slab chain of the core
# repeats every four rows).  At least KEEP lines of every gap survive, with
# MARGIN of them on either side of the check window.
MARGIN = 6
PERIOD = 4
KEEP = 2 * MARGIN + 2 + PERIOD
MAX_REWRITES = 12

# Region ids
R1, R2, R3, R4, R5 = 1, 2, 3, 4, 5


class OpCounter:
    """Per-processor count of primitive arithmetic, comparison and select
    operations, kept separately for each phase."""

    def __init__(self, shape=()):
        self.shape = shape
        self.counts = {p: np.zeros(shape, dtype=np.int64) for p in PHASES}
        self.phase = PHASES[0]

    def enter(self, phase: str) -> None:
        if phase not in self.counts:
            raise ValueError(f"unknown phase {phase!r}")
        self.phase = phase
        self.counts[phase][...] = 0

    def charge(self, k: int = 1) -> None:
        self.counts[self.phase] += k

    def total(self) -> np.ndarray:
        return sum(self.counts.values())

    def max_total(self) -> int:
        return int(np.max(self.total())) if np.size(self.total()) else 0

    def max_per_phase(self) -> dict:
        return {p: int(np.max(c)) if np.size(c) else 0 for p, c in self.counts.items()}


def _charge(ops: Optional[OpCounter], k: int) -> None:
    if ops is not None:
        ops.charge(k)


def _sel(c, a, b):
    return np.where(c, a, b)


# ---------------------------------------------------------------------------
# Processor-visible types


@dataclass(frozen=True)
class ProcessorContext:
    """What a processor may read: its index and the shared inputs.

    ``index`` may hold numpy arrays, in which case the context stands for a
    whole set of processors evaluated in lockstep.
    """

    index: Vertex
    m: int
    n: int
    s: Vertex
    t: Vertex


@dataclass(frozen=True)
class PeelVars:
    r1: object
    r2: object
    r3: object
    r4: object

    def as_tuple(self) -> tuple:
        return (int(self.r1), int(self.r2), int(self.r3), int(self.r4))


@dataclass(frozen=True)
class TrisectVars:
    l: object
    r: object


@dataclass
class SuccessorMap:
    """Successor of every vertex as a flat index (row-major, 0-based).

    ``-1`` marks the end of the path and ``-2`` a vertex the path skips.
    """

    m: int
    n: int
    s: Vertex
    t: Vertex
    succ: np.ndarray
    ops: Optional[OpCounter] = field(default=None, repr=False)

    END = -1
    SKIPPED = -2

    def _flat(self, v) -> int:
        return (v[1] - 1) * self.m + (v[0] - 1)

    def _vertex(self, i: int) -> Vertex:
        return Vertex(i % self.m + 1, i // self.m + 1)

    def successor(self, v) -> Optional[Vertex]:
        j = int(self.succ[self._flat(v)])
        return self._vertex(j) if j >= 0 else None

    def on_path(self, v) -> bool:
        return int(self.succ[self._flat(v)]) != self.SKIPPED

    def to_dict(self) -> dict:
        out = {"m": self.m, "n": self.n, "s": list(self.s), "t": list(self.t), "successors": []}
        for i, j in enumerate(self.succ.tolist()):
            if j == self.SKIPPED:
                continue
            v = self._vertex(i)
            w = None if j < 0 else list(self._vertex(j))
            out["successors"].append([v.x, v.y, w])
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


# ---------------------------------------------------------------------------
# Closed-form rules


def normalize_context(ctx: ProcessorContext, ops: Optional[OpCounter] = None):
    """Transpose so that ``m >= n`` and swap so that ``s_x <= t_x``.

    Returns the normalized context and the two flags.
    """
    tr = ctx.m < ctx.n
    m, n = _sel(tr, ctx.n, ctx.m), _sel(tr, ctx.m, ctx.n)
    x, y = _sel(tr, ctx.index[1], ctx.index[0]), _sel(tr, ctx.index[0], ctx.index[1])
    sx, sy = _sel(tr, ctx.s[1], ctx.s[0]), _sel(tr, ctx.s[0], ctx.s[1])
    tx, ty = _sel(tr, ctx.t[1], ctx.t[0]), _sel(tr, ctx.t[0], ctx.t[1])
    sw = sx > tx
    s = Vertex(_sel(sw, tx, sx), _sel(sw, ty, sy))
    t = Vertex(_sel(sw, sx, tx), _sel(sw, sy, ty))
    _charge(ops, 16)
    out = ProcessorContext(Vertex(x, y), int(m), int(n),
                           Vertex(int(s[0]), int(s[1])), Vertex(int(t[0]), int(t[1])))
    return out, bool(tr), bool(sw)


def peel_vars(ctx: ProcessorContext, ops: Optional[OpCounter] = None) -> PeelVars:
    """The four peeling boundaries of a normalized instance."""
    sx, sy, tx, ty, m, n = ctx.s[0], ctx.s[1], ctx.t[0], ctx.t[1], ctx.m, ctx.n
    r1 = _sel(sx % 2 == 0, sx - 2, sx - 1)
    r2 = _sel(tx % 2 == m % 2, tx + 1, tx + 2)
    lo, hi = np.minimum(sy, ty), np.maximum(sy, ty)
    r3 = _sel(lo % 2 == 0, lo - 2, lo - 1)
    r4 = _sel(hi % 2 == n % 2, hi + 1, hi + 2)
    _charge(ops, 24)
    return PeelVars(r1, r2, r3, r4)


def region_of(ctx: ProcessorContext, v: PeelVars, ops: Optional[OpCounter] = None):
    """Region id (1..5) of the processor, by comparison with the boundaries.

    Columns are separated first unless ``m`` is odd and ``s_x = t_x``.
    """
    x, y = ctx.index
    vertical_first = np.logical_not((ctx.m % 2 == 1) & (ctx.s[0] == ctx.t[0]))
    left, right = x <= v.r1, x >= v.r2
    top, bottom = y <= v.r3, y >= v.r4
    a = _sel(left, R1, _sel(right, R2, _sel(top, R3, _sel(bottom, R4, R5))))
    b = _sel(top, R3, _sel(bottom, R4, _sel(left, R1, _sel(right, R2, R5))))
    _charge(ops, 23)
    return _sel(vertical_first, a, b)


def trisect_vars(ctx: ProcessorContext, vertical: bool = False,
                 ops: Optional[OpCounter] = None) -> TrisectVars:
    """Band boundaries ``l`` (last line of the band holding the nearer endpoint)
    and ``r`` (first line of the other band).  Rows by default; columns when
    ``vertical``."""
    a, b = (ctx.s[0], ctx.t[0]) if vertical else (ctx.s[1], ctx.t[1])
    lo, hi = np.minimum(a, b), np.maximum(a, b)
    l = _sel(lo % 2 == 0, lo, lo + 1)
    both_even = (ctx.m % 2 == 0) & (ctx.n % 2 == 0)
    r_eo = _sel(hi % 2 == 0, hi, hi - 1)
    r_ee = _sel(hi % 2 == 1, hi, hi - 1)
    _charge(ops, 19)
    return TrisectVars(l, _sel(both_even, r_ee, r_eo))


def successor_hamcycle(ctx: ProcessorContext, reverse=False,
                       ops: Optional[OpCounter] = None) -> Vertex:
    """Successor on the comb cycle of an ``m x n`` block with ``m`` even.

    The cycle runs along row 1 left to right, then snakes back through
    rows ``2..n`` column by column: down the even columns, up the odd ones.
    Of the bottom row it only uses the turns from an even column into the
    odd column on its left.  ``reverse`` yields the predecessor instead.
    """
    x, y = ctx.index
    m, n = ctx.m, ctx.n
    odd = np.asarray(x % 2 == 1)
    even = np.logical_not(odd)
    # forward
    fx = _sel((y == 1) & (x < m), x + 1,
              _sel(((y == 2) & odd & (x != 1)) | ((y == n) & even), x - 1, x))
    fy = _sel((y == 1) & (x < m), y,
              _sel(((y == 2) & odd & (x != 1)) | ((y == n) & even), y,
                   _sel(even & (y < n), y + 1, y - 1)))
    # backward
    top = y == 1
    bx = _sel(top, _sel(x > 1, x - 1, x),
              _sel(even, _sel(y > 2, x, _sel(x == m, x, x + 1)),
                   _sel(y < n, x, x + 1)))
    by = _sel(top, _sel(x > 1, y, y + 1),
              _sel(even, _sel(y > 2, y - 1, _sel(x == m, y - 1, y)),
                   _sel(y < n, y + 1, y)))
    _charge(ops, 44)
    rev = np.asarray(reverse)
    return Vertex(_sel(rev, bx, fx), _sel(rev, by, fy))


def _alg_snake(x, y, m, n):
    # odd x odd: row-by-row boustrophedon from (1,1) to (m,n)
    end = (x == m) & (y == n)
    row_odd = y % 2 == 1
    nx = _sel(row_odd, _sel(x < m, x + 1, x), _sel(x > 1, x - 1, x))
    ny = _sel(row_odd, _sel(x < m, y, y + 1), _sel(x > 1, y, y + 1))
    return end, nx, ny


def _alg_even(x, y, m, n):
    # even x even, ends at (m, 1)
    end = (x == m) & (y == 1)
    up = ((y % 2 == 1) & (x == m)) | ((y % 2 == 0) & (x == 1) & (y < n - 1)) | \
        ((y == n) & (x % 2 == 0))
    right = ((y % 2 == 1) & (x < m) & (y != n - 1)) | ((y == n - 1) & (x % 2 == 0)) | \
        ((y == n) & (x % 2 == 1))
    left = (y % 2 == 0) & (x > 1) & (y != n)
    down = (y == n - 1) & (x % 2 == 1)
    nx = _sel(up | down, x, _sel(right, x + 1, _sel(left, x - 1, x)))
    ny = _sel(up, y - 1, _sel(down, y + 1, y))
    return end, nx, ny


BUILTIN_PATTERNS = {"odd-snake": _alg_snake, "even-return": _alg_even}


def successor_pattern(ctx: ProcessorContext, pattern: Union[str, "CorePattern"],
                      ops: Optional[OpCounter] = None):
    """Successor of a core processor under ``pattern``; ``None`` marks the end.

    ``pattern`` is a built-in name (``"odd-snake"``: a row boustrophedon from
    ``(1, 1)`` to ``(m, n)`` in an odd x odd block; ``"even-return"``: a path
    from ``(1, n - 1)`` to ``(m, 1)`` in an even x even block) or a :class:`CorePattern`.
    For array contexts the result is ``(end_mask, x, y)``.
    """
    x, y = ctx.index
    if isinstance(pattern, CorePattern):
        end, nx, ny = pattern.evaluate(x, y, ops)
    else:
        try:
            rule = BUILTIN_PATTERNS[pattern]
        except KeyError:
            raise UnknownPattern(pattern) from None
        end, nx, ny = rule(x, y, ctx.m, ctx.n)
        _charge(ops, 30)
    if np.ndim(x) == 0:
        return None if bool(end) else Vertex(int(nx), int(ny))
    return end, nx, ny


# ---------------------------------------------------------------------------
# Compression and pattern tables


def _axis_blocks(size, a, b, margin: int = MARGIN):
    """Removal blocks ``(start, length, kept)`` for the three gaps of one axis,
    followed by the compressed positions of ``min(a, b)``, ``max(a, b)`` and
    of the far end."""
    lo, hi = np.minimum(a, b), np.maximum(a, b)
    keep = 2 * margin + 2 + PERIOD
    out = []
    for p, q in ((1, lo), (lo, hi), (hi, size)):
        g = q - p - 1
        k = _sel(g >= keep + PERIOD, (g - keep) // PERIOD, 0)
        out.append((p + margin + 2, PERIOD * k, g - PERIOD * k))
    lo2 = out[0][2] + 2
    hi2 = lo2 + out[1][2] + 1
    return out, (lo2, hi2, hi2 + out[2][2] + 1)


# instruction counts: two per axis for min/max, eleven per gap, five for the
# compressed positions; eight per block and one for the final shift
_BLOCK_COST = 2 + 3 * 11 + 5
_SHRINK_COST = 3 * 8 + 1


def _shrink(v, blocks):
    shift = 0
    for start, rem, _ in blocks:
        d = v - start
        shift = shift + _sel(d >= rem, rem, _sel(d >= 0, d - d % PERIOD, 0))
    return v - shift


@dataclass(frozen=True)
class Compression:
    """Removal blocks per axis of a normalized instance and the compressed
    instance itself."""

    xs: tuple
    ys: tuple
    m: int
    n: int
    s: Vertex
    t: Vertex

    @classmethod
    def of(cls, m, n, s, t, margin: int = MARGIN) -> "Compression":
        xs, (xlo, xhi, mm) = _axis_blocks(m, s[0], t[0], margin)
        ys, (ylo, yhi, nn) = _axis_blocks(n, s[1], t[1], margin)
        down = s[1] <= t[1]
        cs = Vertex(int(_sel(s[0] <= t[0], xlo, xhi)), int(_sel(down, ylo, yhi)))
        ct = Vertex(int(_sel(s[0] <= t[0], xhi, xlo)), int(_sel(down, yhi, ylo)))
        fix = lambda blocks: tuple(tuple(int(v) for v in b) for b in blocks)
        return cls(fix(xs), fix(ys), int(mm), int(nn), cs, ct)

    def point(self, x, y):
        return _shrink(x, self.xs), _shrink(y, self.ys)


@dataclass(frozen=True)
class PatternKey:
    m: int
    n: int
    s: Vertex
    t: Vertex
    swap: bool


@dataclass
class PatternTable:
    """Everything a processor reads from the pattern of a compressed instance.

    Coordinates are those of the compressed, normalized instance; offsets
    ``(dx, dy)`` give successors in the direction from the original ``s``.
    """

    key: PatternKey
    peeled: bool
    cuts: tuple              # adjusted boundaries
    cut_shift: tuple         # adjusted minus closed form
    part_frame: dict         # region id -> (transpose, flip_y)
    part_reversed: dict      # region id -> bool
    core_dx: np.ndarray
    core_dy: np.ndarray
    core_end: np.ndarray
    core_skip: np.ndarray
    rewrites: np.ndarray     # (MAX_REWRITES, 4): x, y, dx, dy; unused rows are 0
    final: np.ndarray        # (n, m, 2) successor offsets, for checks
    final_end: np.ndarray
    final_skip: np.ndarray
    region: np.ndarray


def _offsets(path: np.ndarray, m: int, n: int):
    dx = np.zeros((n, m), dtype=np.int64)
    dy = np.zeros((n, m), dtype=np.int64)
    end = np.zeros((n, m), dtype=bool)
    skip = np.ones((n, m), dtype=bool)
    xs, ys = path[:, 0] - 1, path[:, 1] - 1
    skip[ys, xs] = False
    dx[ys[:-1], xs[:-1]] = np.diff(path[:, 0])
    dy[ys[:-1], xs[:-1]] = np.diff(path[:, 1])
    end[ys[-1], xs[-1]] = True
    return dx, dy, end, skip


def _cycle_offsets(cyc: np.ndarray, m: int, n: int, reverse: bool):
    c = cyc[::-1] if reverse else cyc
    nxt = np.roll(c, -1, axis=0)
    dx = np.zeros((n, m), dtype=np.int64)
    dy = np.zeros((n, m), dtype=np.int64)
    dx[c[:, 1] - 1, c[:, 0] - 1] = nxt[:, 0] - c[:, 0]
    dy[c[:, 1] - 1, c[:, 0] - 1] = nxt[:, 1] - c[:, 1]
    return dx, dy


def _region_grid(p, m: int, n: int) -> np.ndarray:
    g = np.full((n, m), R5, dtype=np.int64)
    for rid, part in zip((R1, R2, R3, R4), (p.R1, p.R2, p.R3, p.R4)):
        if not part.empty:
            g[part.y1 - 1:part.y2, part.x1 - 1:part.x2] = rid
    return g


@lru_cache(maxsize=4096)
def pattern_table(key: PatternKey) -> PatternTable:
    """Generate the pattern of a compressed normalized instance."""
    m, n, s, t = key.m, key.n, key.s, key.t
    c = construct(m, n, s, t)
    path = c.path[::-1] if key.swap else c.path
    core = c.core[::-1] if key.swap else c.core
    fdx, fdy, fend, fskip = _offsets(path, m, n)
    cdx, cdy, cend, cskip = _offsets(core, m, n)
    frames, reversed_ = {}, {}
    if c.peeling is None:
        region = np.full((n, m), R5, dtype=np.int64)
        cuts = (0, m + 1, 0, n + 1)
        shift = (0, 0, 0, 0)
        bdx, bdy = cdx.copy(), cdy.copy()
        bend = cend
    else:
        p = c.peeling
        region = _region_grid(p, m, n)
        cuts = p.cuts
        ctx = ProcessorContext(Vertex(1, 1), m, n, Vertex(*s), Vertex(*t))
        base = peel_vars(ctx).as_tuple()
        shift = tuple(a - b for a, b in zip(cuts, base))
        bdx, bdy, bend = cdx.copy(), cdy.copy(), cend.copy()
        for rid, part in zip((R1, R2, R3, R4), (p.R1, p.R2, p.R3, p.R4)):
            if part.empty:
                continue
            side = _open_side_for(part, p.R5)
            cyc = hamiltonian_cycle(part, side).vertices
            mask = region == rid
            fwd = _cycle_offsets(cyc, m, n, False)
            agree = np.sum((fwd[0] == fdx) & (fwd[1] == fdy) & mask)
            rev = bool(agree * 2 < mask.sum())
            odx, ody = _cycle_offsets(cyc, m, n, rev)
            bdx[mask], bdy[mask] = odx[mask], ody[mask]
            frames[rid] = (bool(_OPEN[side]["transpose"]), bool(_OPEN[side]["flip_y"]))
            reversed_[rid] = rev
        bend = bend & (region == R5)
    diff = ((bdx != fdx) | (bdy != fdy) | (bend != fend)) & ~fskip
    ys, xs = np.nonzero(diff)
    if len(xs) > MAX_REWRITES:
        raise PatternNotPeriodic(f"{len(xs)} rewrites exceed {MAX_REWRITES}")
    rw = np.zeros((MAX_REWRITES, 4), dtype=np.int64)
    for i, (x, y) in enumerate(zip(xs, ys)):
        rw[i] = (x + 1, y + 1, fdx[y, x], fdy[y, x])
    return PatternTable(key, c.peeling is not None, tuple(cuts), shift, frames, reversed_,
                        cdx, cdy, cend, cskip, rw, np.stack([fdx, fdy], axis=-1),
                        fend, fskip, region)


def _windows(blocks) -> list[int]:
    """Compressed-coordinate start of the duplicated pair of every removed block."""
    out, removed = [], 0
    for start, rem, _ in blocks:
        if rem:
            out.append(start - removed)
        removed += rem
    return out


def check_periodic(table: PatternTable, comp: Compression) -> None:
    """Raise :class:`PatternNotPeriodic` unless every compression window of
    ``table`` repeats with period :data:`PERIOD` and holds no rewrite."""
    grids = [table.final[..., 0], table.final[..., 1], table.final_end, table.final_skip,
             table.region, table.core_dx, table.core_dy]
    for axis, blocks in ((1, comp.xs), (0, comp.ys)):
        for c in _windows(blocks):
            # lines c-1 and c must equal lines c-1+PERIOD and c+PERIOD
            lo = c - 2
            for g in grids:
                a = np.take(g, [lo, lo + 1], axis=axis)
                b = np.take(g, [lo + PERIOD, lo + PERIOD + 1], axis=axis)
                if not np.array_equal(a, b):
                    raise PatternNotPeriodic(f"window at {c} on axis {axis} is not periodic")
            coord = table.rewrites[:, 0] if axis == 1 else table.rewrites[:, 1]
            used = table.rewrites[:, 0] > 0
            if np.any(used & (coord >= c - 1) & (coord <= c + PERIOD)):
                raise PatternNotPeriodic(f"rewrite inside window at {c}")


@dataclass
class CorePattern:
    """A pattern table bound to the compression of one instance."""

    table: PatternTable
    comp: Compression

    def evaluate(self, x, y, ops: Optional[OpCounter] = None):
        cx, cy = self.comp.point(x, y)
        i, j = cy - 1, cx - 1
        dx = self.table.core_dx[i, j]
        dy = self.table.core_dy[i, j]
        end = self.table.core_end[i, j]
        _charge(ops, 2 * _SHRINK_COST + 4)
        return end, x + dx, y + dy


@lru_cache(maxsize=4096)
def _checked_table(key: PatternKey, comp: Compression) -> PatternTable:
    table = pattern_table(key)
    check_periodic(table, comp)
    return table


def plan_pattern(m: int, n: int, s, t, swap: bool) -> CorePattern:
    """Compressed pattern for a normalized instance."""
    comp = Compression.of(m, n, s, t)
    key = PatternKey(comp.m, comp.n, comp.s, comp.t, swap)
    return CorePattern(_checked_table(key, comp), comp)


# ---------------------------------------------------------------------------
# The SIMD program

# selecting which compressed end is s or t, and reading the table
_KEY_COST = 5


@dataclass
class _Lanes:
    """Per-processor registers shared between phases."""

    ctx: ProcessorContext          # normalized
    transpose: bool
    swap: bool
    pattern: CorePattern
    cx: np.ndarray = None          # compressed coordinates
    cy: np.ndarray = None
    vars: PeelVars = None
    region: np.ndarray = None
    bands: TrisectVars = None


def _part_bounds(ctx: ProcessorContext, v: PeelVars, region, ops):
    m, n = ctx.m, ctx.n
    vf = np.logical_not((ctx.m % 2 == 1) & (ctx.s[0] == ctx.t[0]))
    r1, r2, r3, r4 = v.r1, v.r2, v.r3, v.r4
    # vertical first: R1/R2 full height, R3/R4 between them
    ax0 = _sel(region == R1, 1, _sel(region == R2, r2, r1 + 1))
    ax1 = _sel(region == R1, r1, _sel(region == R2, m, r2 - 1))
    ay0 = _sel(region == R4, r4, 1)
    ay1 = _sel(region == R3, r3, n)
    # horizontal first: R3/R4 full width, R1/R2 between them
    bx0 = _sel(region == R2, r2, 1)
    bx1 = _sel(region == R1, r1, m)
    by0 = _sel(region == R3, 1, _sel(region == R4, r4, r3 + 1))
    by1 = _sel(region == R3, r3, _sel(region == R4, n, r4 - 1))
    _charge(ops, 44)
    return (_sel(vf, ax0, bx0), _sel(vf, ax1, bx1), _sel(vf, ay0, by0), _sel(vf, ay1, by1))


def _border_successor(lanes: _Lanes, ops):
    ctx, table = lanes.ctx, lanes.pattern.table
    x, y = ctx.index
    x0, x1, y0, y1 = _part_bounds(ctx, lanes.vars, lanes.region, ops)
    lx, ly, W, H = x - x0 + 1, y - y0 + 1, x1 - x0 + 1, y1 - y0 + 1
    frame = np.zeros((6, 3), dtype=np.int64)      # region -> transpose, flip, reverse
    for rid, (tp, fl) in table.part_frame.items():
        frame[rid] = (tp, fl, table.part_reversed[rid])
    tp, fl, rev = (frame[lanes.region, k].astype(bool) for k in range(3))
    fw, fh = _sel(tp, H, W), _sel(tp, W, H)
    fx = _sel(tp, ly, lx)
    fy0 = _sel(tp, lx, ly)
    fy = _sel(fl, fh + 1 - fy0, fy0)
    _charge(ops, 8 + 3 + 10)
    nxt = successor_hamcycle(ProcessorContext(Vertex(fx, fy), fw, fh, None, None), rev, ops)
    sy0 = _sel(fl, fh + 1 - nxt[1], nxt[1])
    ux, uy = _sel(tp, sy0, nxt[0]), _sel(tp, nxt[0], sy0)
    _charge(ops, 10)
    return ux + x0 - 1, uy + y0 - 1


def combine_phase(smap: SuccessorMap, lanes: _Lanes, ops: Optional[OpCounter] = None) -> SuccessorMap:
    """Apply the pattern's rewrites: each processor compares its compressed
    index with every rewrite slot and, on a match, takes the slot's offset."""
    ctx = lanes.ctx
    x, y = ctx.index
    nx, ny = _from_flat(smap, lanes)
    table = lanes.pattern.table
    here = lanes.cy * (table.key.m + 1) + lanes.cx
    _charge(ops, 3)
    for rx, ry, dx, dy in table.rewrites.tolist():
        hit = here == ry * (table.key.m + 1) + rx
        nx = _sel(hit, x + dx, nx)
        ny = _sel(hit, y + dy, ny)
        _charge(ops, 5)
    keep = smap.succ < 0
    out = _to_flat(smap, lanes, nx, ny, keep, ops)
    return SuccessorMap(smap.m, smap.n, smap.s, smap.t, out, smap.ops)


def _to_flat(smap: SuccessorMap, lanes: _Lanes, nx, ny, keep, ops):
    ox, oy = _sel(lanes.transpose, ny, nx), _sel(lanes.transpose, nx, ny)
    flat = (oy - 1) * smap.m + (ox - 1)
    _charge(ops, 7)
    return np.where(keep, smap.succ, flat).astype(np.int64)


def _from_flat(smap: SuccessorMap, lanes: _Lanes):
    j = np.maximum(smap.succ, 0)
    ox, oy = j % smap.m + 1, j // smap.m + 1
    return _sel(lanes.transpose, oy, ox), _sel(lanes.transpose, ox, oy)


def run_parallel(R: Rect, s, t) -> SuccessorMap:
    """Successor map of a longest s-t path, computed by one straight-line
    program per vertex.  ``.ops`` holds the per-processor operation counts."""
    _check(R, s, t)
    ls, lt = R.to_local(s), R.to_local(t)
    m, n = R.m, R.n
    Y, X = np.mgrid[1:n + 1, 1:m + 1]
    X, Y = X.ravel().astype(np.int64), Y.ravel().astype(np.int64)
    ops = OpCounter(X.shape)

    ops.enter("plan")
    ctx, tr, sw = normalize_context(ProcessorContext(Vertex(X, Y), m, n, ls, lt), ops)
    pattern = plan_pattern(ctx.m, ctx.n, ctx.s, ctx.t, sw)
    ops.charge(2 * _BLOCK_COST + _KEY_COST)
    lanes = _Lanes(ctx, tr, sw, pattern)
    lanes.cx, lanes.cy = pattern.comp.point(ctx.index[0], ctx.index[1])
    ops.charge(2 * _SHRINK_COST)
    table = pattern.table

    ops.enter("peel")
    base = peel_vars(ctx, ops)
    defaults = (0, ctx.m + 1, 0, ctx.n + 1)
    adj = [_sel(table.peeled, b + d, z) for b, d, z in zip(
        (base.r1, base.r2, base.r3, base.r4), table.cut_shift, defaults)]
    ops.charge(10)
    lanes.vars = PeelVars(*adj)
    lanes.region = region_of(ctx, lanes.vars, ops)

    ops.enter("trisect")
    lanes.bands = trisect_vars(ctx, ops=ops)

    ops.enter("successor")
    bx, by = _border_successor(lanes, ops)
    ci, cj = lanes.cy - 1, lanes.cx - 1
    cdx, cdy = table.core_dx[ci, cj], table.core_dy[ci, cj]
    cend, cskip = table.core_end[ci, cj], table.core_skip[ci, cj]
    ops.charge(6)
    core = lanes.region == R5
    x, y = ctx.index
    nx = _sel(core, x + cdx, bx)
    ny = _sel(core, y + cdy, by)
    code = _sel(core & cskip, SuccessorMap.SKIPPED, _sel(core & cend, SuccessorMap.END, 0))
    ops.charge(10)
    pre = SuccessorMap(m, n, Vertex(*ls), Vertex(*lt), np.zeros(X.shape, np.int64), ops)
    pre.succ = code
    pre.succ = _to_flat(pre, lanes, nx, ny, code < 0, ops)

    ops.enter("combine")
    out = combine_phase(pre, lanes, ops)
    return out


def reconstruct(smap: SuccessorMap) -> Path:
    """Follow successors from ``s``; raise on a cycle or a chain that stops
    anywhere other than ``t``."""
    succ = np.asarray(smap.succ, dtype=np.int64)
    N = len(succ)
    start = (smap.s[1] - 1) * smap.m + (smap.s[0] - 1)
    goal = (smap.t[1] - 1) * smap.m + (smap.t[0] - 1)
    if succ[start] == SuccessorMap.SKIPPED:
        raise BrokenChain("start vertex is marked as skipped")
    # pointer jumping: distance to the end of each chain and the end itself
    nxt = np.where(succ >= 0, succ, np.arange(N))
    dist = (succ >= 0).astype(np.int64)
    for _ in range(max(1, int(np.ceil(np.log2(max(N, 2))))) + 1):
        dist = dist + dist[nxt] * (nxt != np.arange(N))
        nxt = nxt[nxt]
    ended = succ[nxt] < 0
    if not ended[start]:
        raise CycleDetected("the chain from s never ends")
    if nxt[start] != goal or succ[goal] != SuccessorMap.END:
        raise BrokenChain(f"the chain from s ends at flat index {int(nxt[start])}")
    members = np.flatnonzero((nxt == goal) & (succ != SuccessorMap.SKIPPED))
    L = int(dist[start]) + 1
    if len(members) != L:
        raise BrokenChain("another chain merges into the path")
    order = members[np.argsort(-dist[members], kind="stable")]
    if np.any(np.diff(-dist[order]) != 1):
        raise BrokenChain("path positions are not contiguous")
    pts = np.column_stack([order % smap.m + 1, order // smap.m + 1]).astype(np.int64)
    return Path(pts)
