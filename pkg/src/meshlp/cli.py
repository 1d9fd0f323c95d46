"""Command-line front end: ``solve``, ``verify``, ``bench`` and ``render``.

Coordinates are 1-based ``x,y`` with ``(1,1)`` in the upper-left corner.
Exit codes: 0 on success, 1 on a failed check or counterexample, 2 on a
usage error.
"""
from __future__ import annotations

import argparse
import json
import os
import statistics
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterator, Optional
from xml.sax.saxutils import escape

import numpy as np

from .grid import GridError, Rect, Vertex, classify, is_white, upper_bound
from .oracle import SearchBudget, brute_longest_length, validate_path
from .parallel import reconstruct, run_parallel
from .sequential import hamiltonian_cycle, longest_path

THREADS_ENV = "MESH_LP_THREADS"
FORMATS = ("text", "ascii", "json", "svg")


class UsageError(ValueError):
    pass


@dataclass(frozen=True)
class SolveRequest:
    m: int
    n: int
    s: Vertex
    t: Vertex
    mode: str = "seq"
    format: str = "text"

    def check(self) -> None:
        if self.m < 1 or self.n < 1:
            raise UsageError(f"m and n must be >= 1 (got m={self.m}, n={self.n})")
        if self.mode not in ("seq", "par"):
            raise UsageError(f"mode must be seq or par (got {self.mode!r})")
        if self.format not in FORMATS:
            raise UsageError(f"format must be one of {', '.join(FORMATS)} (got {self.format!r})")
        if tuple(self.s) == tuple(self.t):
            raise UsageError(f"s and t must differ (both are {tuple(self.s)})")
        for name, v in (("s", self.s), ("t", self.t)):
            if not (1 <= v[0] <= self.m and 1 <= v[1] <= self.n):
                raise UsageError(f"{name}={v[0]},{v[1]} is outside 1..{self.m} x 1..{self.n}")


@dataclass
class SolveReport:
    m: int
    n: int
    s: Vertex
    t: Vertex
    problem_class: str
    upper_bound: int
    path: np.ndarray
    mode: str
    elapsed: float
    successors: Optional[dict] = field(default=None, repr=False)

    @property
    def length(self) -> int:
        return len(self.path)

    def to_dict(self) -> dict:
        return {"m": self.m, "n": self.n, "s": list(self.s), "t": list(self.t),
                "class": self.problem_class, "upper_bound": self.upper_bound,
                "length": self.length, "path": self.path.tolist()}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    def to_text(self) -> str:
        lines = [f"R({self.m},{self.n})  s={tuple(self.s)}  t={tuple(self.t)}  mode={self.mode}",
                 f"class {self.problem_class}  upper bound {self.upper_bound}  length {self.length}"
                 f"  ({self.elapsed * 1000:.1f} ms)"]
        return "\n".join(lines)


def cmd_solve(req: SolveRequest, dump_successors: bool = False) -> SolveReport:
    req.check()
    R = Rect.of(req.m, req.n)
    t0 = time.perf_counter()
    succ = None
    if req.mode == "par":
        smap = run_parallel(R, req.s, req.t)
        pts = reconstruct(smap).vertices
        if dump_successors:
            succ = smap.to_dict()
    else:
        pts = longest_path(R, req.s, req.t).vertices
    elapsed = time.perf_counter() - t0
    return SolveReport(req.m, req.n, Vertex(*req.s), Vertex(*req.t), classify(R, req.s, req.t).value,
                       upper_bound(R, req.s, req.t), pts, req.mode, elapsed, succ)


# ---------------------------------------------------------------------------
# verify


def corpus(max_dim: int = 5) -> Iterator[tuple[int, int]]:
    """Rectangles ``(m, n)`` with ``n <= m <= max_dim``.  From ``max_dim = 5``
    on, the strip families (``n`` in 1, 2 up to ``m = 8``; ``n = 3`` up to
    ``m = 7``) are added."""
    seen = set()
    for m in range(1, max_dim + 1):
        for n in range(1, m + 1):
            seen.add((m, n))
            yield m, n
    if max_dim < 5:
        return
    for n, top in ((1, 8), (2, 8), (3, 7)):
        for m in range(n, top + 1):
            if (m, n) not in seen:
                seen.add((m, n))
                yield m, n


def _check_rect(args) -> list[str]:
    """Every failed check for one rectangle, as reproducer lines."""
    m, n, max_vertices, with_oracle = args
    R = Rect.of(m, n)
    out = []
    budget = SearchBudget(max_vertices)
    verts = list(R.vertices())
    for s in verts:
        for t in verts:
            if s == t:
                continue
            repro = f"meshlp solve -m {m} -n {n} -s {s.x},{s.y} -t {t.x},{t.y}"
            try:
                U = upper_bound(R, s, t)
                p = longest_path(R, s, t)
                if not validate_path(R, p, s, t):
                    out.append(f"{repro}  # invalid sequential path")
                    continue
                if len(p) != U:
                    out.append(f"{repro}  # sequential length {len(p)} != bound {U}")
                    continue
                if with_oracle and R.size <= max_vertices:
                    b = brute_longest_length(R, s, t, budget)
                    if b != U:
                        out.append(f"{repro}  # oracle {b} != bound {U}")
                        continue
                q = reconstruct(run_parallel(R, s, t))
                if not validate_path(R, q, s, t) or len(q) != len(p):
                    out.append(f"{repro} --mode par  # parallel length {len(q)} != {len(p)}")
            except Exception as e:       # any crash is a counterexample too
                out.append(f"{repro}  # {type(e).__name__}: {e}")
    return out


def _threads() -> int:
    raw = os.environ.get(THREADS_ENV)
    if raw is None:
        return os.cpu_count() or 1
    try:
        return max(1, int(raw))
    except ValueError:
        raise UsageError(f"{THREADS_ENV} must be an integer (got {raw!r})") from None


@dataclass
class VerifySummary:
    rectangles: int
    instances: int
    counterexamples: list
    elapsed: float

    @property
    def ok(self) -> bool:
        return not self.counterexamples


def cmd_verify(max_dim: int = 5, budget: int = SearchBudget.max_vertices,
               oracle: bool = True, threads: Optional[int] = None) -> VerifySummary:
    """Check every corpus instance; stops at the first rectangle with a
    counterexample (in corpus order, independent of the worker count)."""
    t0 = time.perf_counter()
    rects = list(corpus(max_dim))
    jobs = [(m, n, budget, oracle) for m, n in rects]
    threads = threads or _threads()
    found: list[str] = []
    done = 0
    if threads == 1:
        results = map(_check_rect, jobs)
        pool = None
    else:
        pool = ProcessPoolExecutor(max_workers=threads)
        results = pool.map(_check_rect, jobs)
    try:
        for (m, n), bad in zip(rects, results):
            done += 1
            if bad:
                found = bad
                break
    finally:
        if pool is not None:
            pool.shutdown(cancel_futures=True)
    inst = sum(m * n * (m * n - 1) for m, n in rects[:done])
    return VerifySummary(done, inst, found, time.perf_counter() - t0)


# ---------------------------------------------------------------------------
# bench


def parse_size(text: str) -> tuple[int, int]:
    a, sep, b = text.lower().partition("x")
    try:
        return (int(a), int(b)) if sep else (int(a), int(a))
    except ValueError:
        raise UsageError(f"bad size {text!r}; use MxN or M") from None


def _bench_endpoints(m: int, n: int) -> tuple[Vertex, Vertex]:
    # a fixed interior pair so that every size runs the full peel-and-core route
    s = Vertex(max(1, m // 3), max(1, n // 3))
    t = Vertex(max(1, 2 * m // 3), max(1, 2 * n // 3 + 1))
    if s == t:
        t = Vertex(m, n) if (m, n) != tuple(s) else Vertex(1, 1)
    return s, t


@dataclass
class BenchRow:
    m: int
    n: int
    seconds: float
    length: int
    max_ops: Optional[int]


def cmd_bench(sizes, repeats: int = 5, parallel: bool = True) -> list[BenchRow]:
    """Median wall time of the sequential solver per size, plus the largest
    per-processor operation count of the parallel program."""
    rows = []
    for m, n in sizes:
        R = Rect.of(m, n)
        s, t = _bench_endpoints(m, n)
        times = []
        for _ in range(repeats):
            t0 = time.perf_counter()
            p = longest_path(R, s, t)
            times.append(time.perf_counter() - t0)
        ops = run_parallel(R, s, t).ops.max_total() if parallel else None
        rows.append(BenchRow(m, n, statistics.median(times), len(p), ops))
    return rows


def format_bench(rows: list[BenchRow]) -> str:
    if not rows:
        return "size  seconds  length  max_ops"
    out = [f"{'size':>11} {'seconds':>9} {'length':>9} {'max_ops':>8}"]
    for r in rows:
        ops = "-" if r.max_ops is None else str(r.max_ops)
        out.append(f"{f'{r.m}x{r.n}':>11} {r.seconds:9.4f} {r.length:9d} {ops:>8}")
    for a, b in zip(rows, rows[1:]):
        ratio = b.seconds / a.seconds if a.seconds > 0 else float("inf")
        grow = (b.m * b.n) / (a.m * a.n)
        out.append(f"ratio {b.m}x{b.n} / {a.m}x{a.n}: time x{ratio:.2f} for vertices x{grow:.2f}")
    return "\n".join(out)


# ---------------------------------------------------------------------------
# render


def render_ascii(m: int, n: int, pts, s=None, t=None, closed: bool = False) -> str:
    """Vertices as ``o`` (``.`` when off the path, ``s``/``t`` at the ends),
    path edges as ``-`` and ``|``."""
    pts = np.asarray(pts, dtype=np.int64).reshape(-1, 2)
    canvas = [[" "] * (2 * m - 1) for _ in range(2 * n - 1)]
    for y in range(1, n + 1):
        for x in range(1, m + 1):
            canvas[2 * y - 2][2 * x - 2] = "."
    for x, y in pts.tolist():
        canvas[2 * y - 2][2 * x - 2] = "o"
    pairs = list(zip(pts[:-1].tolist(), pts[1:].tolist()))
    if closed and len(pts) > 2:
        pairs.append((pts[-1].tolist(), pts[0].tolist()))
    for (ax, ay), (bx, by) in pairs:
        cx, cy = ax + bx - 2, ay + by - 2
        canvas[cy][cx] = "-" if ay == by else "|"
    for mark, v in (("s", s), ("t", t)):
        if v is not None:
            canvas[2 * v[1] - 2][2 * v[0] - 2] = mark
    return "\n".join("".join(row).rstrip() for row in canvas)


def render_svg(m: int, n: int, pts, s=None, t=None, closed: bool = False, cell: int = 24) -> str:
    """SVG with y growing downward: circles filled by vertex color and the
    path as a polyline (a polygon when ``closed``)."""
    pts = np.asarray(pts, dtype=np.int64).reshape(-1, 2)
    pad = cell // 2
    W, H = (m - 1) * cell + 2 * pad, (n - 1) * cell + 2 * pad

    def xy(v):
        return pad + (v[0] - 1) * cell, pad + (v[1] - 1) * cell

    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" '
           f'viewBox="0 0 {W} {H}">']
    title = f"R({m},{n})" + (f" s={tuple(s)} t={tuple(t)}" if s is not None else "")
    out.append(f"<title>{escape(title)}</title>")
    coords = " ".join(f"{a},{b}" for a, b in map(xy, pts.tolist()))
    tag = "polygon" if closed else "polyline"
    out.append(f'<{tag} points="{coords}" fill="none" stroke="#c03030" stroke-width="3"/>')
    r = max(2, cell // 5)
    for y in range(1, n + 1):
        for x in range(1, m + 1):
            cx, cy = xy((x, y))
            fill = "white" if is_white((x, y)) else "black"
            out.append(f'<circle cx="{cx}" cy="{cy}" r="{r}" fill="{fill}" stroke="black"/>')
    for label, v in (("s", s), ("t", t)):
        if v is not None:
            cx, cy = xy(v)
            out.append(f'<text x="{cx + r + 1}" y="{cy - r - 1}" font-size="{cell // 2}">{label}</text>')
    out.append("</svg>")
    return "\n".join(out)


def cmd_render(req: SolveRequest, cycle: bool = False) -> str:
    """ASCII (``text``/``ascii``) or SVG picture of the solved path, or of the
    Hamiltonian cycle of the whole rectangle when ``cycle`` is set."""
    if cycle:
        if req.m < 1 or req.n < 1:
            raise UsageError(f"m and n must be >= 1 (got m={req.m}, n={req.n})")
        try:
            pts = hamiltonian_cycle(Rect.of(req.m, req.n)).vertices
        except GridError as e:
            raise UsageError(f"no Hamiltonian cycle: {e}") from None
        s = t = None
    else:
        rep = cmd_solve(req)
        pts, s, t = rep.path, req.s, req.t
    if req.format == "svg":
        return render_svg(req.m, req.n, pts, s, t, closed=cycle)
    if req.format == "json":
        return json.dumps({"m": req.m, "n": req.n, "path": np.asarray(pts).tolist()})
    return render_ascii(req.m, req.n, pts, s, t, closed=cycle)


# ---------------------------------------------------------------------------
# argument parsing


def _vertex(text: str) -> Vertex:
    try:
        x, y = (int(v) for v in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected x,y (got {text!r})") from None
    return Vertex(x, y)


def _instance_args(p: argparse.ArgumentParser, need_st: bool = True) -> None:
    p.add_argument("-m", type=int, required=True, help="number of columns")
    p.add_argument("-n", type=int, required=True, help="number of rows")
    p.add_argument("-s", type=_vertex, required=need_st, help="start vertex x,y")
    p.add_argument("-t", type=_vertex, required=need_st, help="end vertex x,y")
    p.add_argument("--mode", choices=("seq", "par"), default="seq")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="meshlp", description="Longest paths in rectangular grid graphs.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="solve one instance")
    _instance_args(p)
    p.add_argument("--format", choices=FORMATS, default="text")
    p.add_argument("--dump-successors", metavar="FILE",
                   help="with --mode par, write the successor map as JSON ('-' for stdout)")

    p = sub.add_parser("verify", help="check the solvers against the oracle on a corpus")
    p.add_argument("--max-dim", type=int, default=5)
    p.add_argument("--budget", type=int, default=SearchBudget.max_vertices,
                   help="largest rectangle (in vertices) handed to the oracle")
    p.add_argument("--no-oracle", action="store_true")

    p = sub.add_parser("bench", help="time the solvers across sizes")
    p.add_argument("sizes", nargs="*", help="sizes as MxN or M (square)")
    p.add_argument("--repeats", type=int, default=5)
    p.add_argument("--no-par", action="store_true", help="skip the parallel op count")

    p = sub.add_parser("render", help="draw a path as ASCII or SVG")
    _instance_args(p, need_st=False)
    p.add_argument("--format", choices=FORMATS, default="text")
    p.add_argument("--cycle", action="store_true", help="draw the Hamiltonian cycle of the rectangle")
    return ap


def _request(a) -> SolveRequest:
    if a.s is None or a.t is None:
        raise UsageError("-s and -t are required")
    return SolveRequest(a.m, a.n, a.s, a.t, a.mode, a.format)


def _write(text: str, dest: str) -> None:
    if dest == "-":
        print(text)
    else:
        with open(dest, "w") as fh:
            fh.write(text + "\n")


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "solve":
            req = _request(args)
            if args.dump_successors and req.mode != "par":
                raise UsageError("--dump-successors needs --mode par")
            rep = cmd_solve(req, dump_successors=bool(args.dump_successors))
            if req.format == "json":
                print(rep.to_json())
            elif req.format == "svg":
                print(render_svg(req.m, req.n, rep.path, req.s, req.t))
            else:
                print(rep.to_text())
            if rep.successors is not None:
                _write(json.dumps(rep.successors), args.dump_successors)
            return 0 if rep.length == rep.upper_bound else 1
        if args.command == "verify":
            if args.max_dim < 1:
                raise UsageError("--max-dim must be >= 1")
            summ = cmd_verify(args.max_dim, args.budget, oracle=not args.no_oracle)
            print(f"{summ.rectangles} rectangles, {summ.instances} instances, "
                  f"{len(summ.counterexamples)} counterexamples, {summ.elapsed:.1f} s")
            for line in summ.counterexamples[:1]:
                print(f"counterexample: {line}")
            return 0 if summ.ok else 1
        if args.command == "bench":
            sizes = [parse_size(s) for s in args.sizes]
            rows = cmd_bench(sizes, args.repeats, parallel=not args.no_par)
            print(format_bench(rows))
            return 0
        if args.command == "render":
            if args.cycle:
                req = SolveRequest(args.m, args.n, Vertex(1, 1), Vertex(1, 1), args.mode, args.format)
            else:
                req = _request(args)
            print(cmd_render(req, cycle=args.cycle))
            return 0
    except (UsageError, GridError) as e:
        print(f"meshlp: error: {e}", file=sys.stderr)
        return 2
    except AssertionError as e:
        print(f"meshlp: internal check failed: {e}", file=sys.stderr)
        return 1
    return 2


if __name__ == "__main__":
    sys.exit(main())
