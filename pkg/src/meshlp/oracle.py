"""Exhaustive ground truth for small meshes, plus path and cycle validators.

The search enumerates self-avoiding walks from ``s`` over a bitboard.  It
prunes with two bounds that hold for any bipartite grid graph: the walk can
only continue inside the component reachable from its head, and it must
alternate colors on the way to ``t``.  Nothing here consults the closed-form
bound from :mod:`meshlp.grid`.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .grid import Rect, Vertex, _check


class BudgetExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class SearchBudget:
    max_vertices: int = 26
    max_expansions: Optional[int] = None


class _Board:
    """Bit layout with one padding column so shifts never wrap across rows."""

    def __init__(self, m: int, n: int):
        self.m, self.n = m, n
        self.stride = m + 1
        self.full = 0
        self.white = 0
        for y in range(n):
            for x in range(m):
                b = 1 << (y * self.stride + x)
                self.full |= b
                if (x + y) % 2 == 0:
                    self.white |= b
        self.nbrs = {}
        for y in range(n):
            for x in range(m):
                i = y * self.stride + x
                out = []
                for dx, dy in ((1, 0), (-1, 0), (0, 1), (0, -1)):
                    xx, yy = x + dx, y + dy
                    if 0 <= xx < m and 0 <= yy < n:
                        out.append(yy * self.stride + xx)
                self.nbrs[i] = out

    def index(self, v) -> int:
        return (v[1] - 1) * self.stride + (v[0] - 1)

    def vertex(self, i: int) -> Vertex:
        return Vertex(i % self.stride + 1, i // self.stride + 1)

    def spread(self, seed: int, free: int) -> int:
        w = self.stride
        reach = seed & free
        while True:
            grown = (reach | (reach << 1) | (reach >> 1) | (reach << w) | (reach >> w)) & free
            if grown == reach:
                return reach
            reach = grown


def _tail_bound(board: _Board, head: int, target: int, free: int) -> int:
    """Upper bound on vertices still addable after ``head``; -1 if ``t`` is cut off."""
    hbit = 1 << head
    seed = 0
    for j in board.nbrs[head]:
        seed |= 1 << j
    comp = board.spread(seed, free)
    if not comp >> target & 1:
        return -1
    nw = (comp & board.white).bit_count()
    nb = comp.bit_count() - nw
    head_white = bool(board.white & hbit)
    # the walk continues with the opposite color and alternates up to t
    na, nother = (nb, nw) if head_white else (nw, nb)
    first_color_white = not head_white
    t_white = bool(board.white >> target & 1)
    if t_white == first_color_white:
        return max(-1, min(2 * na - 1, 2 * nother + 1))
    return 2 * min(na, nother)


def _search(R: Rect, s, t, budget: SearchBudget, stop_at: Optional[int]):
    _check(R, s, t)
    if R.size > budget.max_vertices:
        raise BudgetExceeded(f"{R.m}x{R.n} exceeds {budget.max_vertices} vertices")
    board = _Board(R.m, R.n)
    src, dst = board.index(R.to_local(s)), board.index(R.to_local(t))
    best: list[int] = []
    path = [src]
    expansions = 0
    ceiling = 1 + _tail_bound(board, src, dst, board.full & ~(1 << src))
    if stop_at is None or stop_at > ceiling:
        stop_at = ceiling

    def onward(i: int, free: int) -> int:
        return sum(1 for j in board.nbrs[i] if free >> j & 1)

    def dfs(head: int, free: int) -> bool:
        nonlocal best, expansions
        expansions += 1
        if budget.max_expansions is not None and expansions > budget.max_expansions:
            raise BudgetExceeded("node-expansion cap reached")
        if head == dst:
            if len(path) > len(best):
                best = path.copy()
            return len(best) >= stop_at
        tail = _tail_bound(board, head, dst, free)
        if tail < 0 or len(path) + tail <= len(best):
            return False
        nxt = [j for j in board.nbrs[head] if free >> j & 1]
        nxt.sort(key=lambda j: onward(j, free))
        for j in nxt:
            path.append(j)
            done = dfs(j, free & ~(1 << j))
            path.pop()
            if done:
                return True
        return False

    dfs(src, board.full & ~(1 << src))
    pts = np.array([board.vertex(i) for i in best], dtype=np.int64)
    pts[:, 0] += R.origin.x - 1
    pts[:, 1] += R.origin.y - 1
    return pts


def brute_longest(R: Rect, s, t, budget: SearchBudget = SearchBudget()) -> np.ndarray:
    """A maximum-vertex s-t path by exhaustive enumeration, as an ``(L, 2)`` array."""
    return _search(R, s, t, budget, None)


def brute_longest_length(R: Rect, s, t, budget: SearchBudget = SearchBudget()) -> int:
    return len(brute_longest(R, s, t, budget))


def brute_is_hamiltonian(R: Rect, s, t, budget: SearchBudget = SearchBudget()) -> bool:
    return len(_search(R, s, t, budget, R.size)) == R.size


def _steps_ok(pts: np.ndarray) -> bool:
    d = np.abs(np.diff(pts, axis=0)).sum(axis=1)
    return bool(np.all(d == 1))


def _distinct(R: Rect, pts: np.ndarray) -> bool:
    ids = (pts[:, 1] - R.y1) * R.m + (pts[:, 0] - R.x1)
    return len(np.unique(ids)) == len(ids)


def _inside(R: Rect, pts: np.ndarray) -> bool:
    return bool(np.all((pts[:, 0] >= R.x1) & (pts[:, 0] <= R.x2)
                       & (pts[:, 1] >= R.y1) & (pts[:, 1] <= R.y2)))


def validate_path(R: Rect, path, s, t) -> bool:
    """True iff ``path`` is a simple s-t path inside ``R`` with unit steps."""
    pts = np.asarray(getattr(path, "vertices", path), dtype=np.int64).reshape(-1, 2)
    if len(pts) == 0:
        return False
    if tuple(pts[0]) != tuple(s) or tuple(pts[-1]) != tuple(t):
        return False
    return _inside(R, pts) and _steps_ok(pts) and _distinct(R, pts)


def validate_cycle(R: Rect, cycle) -> bool:
    """True iff ``cycle`` is a Hamiltonian cycle of ``R``."""
    pts = np.asarray(getattr(cycle, "vertices", cycle), dtype=np.int64).reshape(-1, 2)
    if len(pts) != R.size or len(pts) < 4:
        return False
    closed = np.vstack([pts, pts[:1]])
    return _inside(R, pts) and _steps_ok(closed) and _distinct(R, pts)
