import json

import numpy as np
import pytest
from hypothesis import given

from meshlp import (BrokenChain, CycleDetected, ProcessorContext, Rect, SuccessorMap,
                    UnknownPattern, Vertex, longest_path, peel_vars, reconstruct,
                    region_of, run_parallel, successor_hamcycle, successor_pattern, trisect_vars,
                    upper_bound, validate_cycle, validate_path)
from meshlp.parallel import (PHASES, R1, R2, R3, R5, Compression, PatternNotPeriodic,
                             check_periodic, pattern_table, PatternKey)

from strategies import instances

BUDGET = 500


def ctx(x, y, m, n, s=(1, 1), t=(2, 1)):
    return ProcessorContext(Vertex(x, y), m, n, Vertex(*s), Vertex(*t))


def test_peel_vars_example():
    v = peel_vars(ctx(1, 1, 15, 11, (6, 5), (8, 9)))
    assert v.as_tuple() == (4, 10, 4, 10)


def test_peel_vars_parity_clauses():
    assert peel_vars(ctx(1, 1, 9, 9, (3, 4), (6, 6))).r1 == 2
    assert peel_vars(ctx(1, 1, 16, 9, (3, 4), (8, 6))).r2 == 9


def test_peel_vars_same_on_every_processor():
    Y, X = np.mgrid[1:12, 1:16]
    v = peel_vars(ProcessorContext(Vertex(X, Y), 15, 11, Vertex(6, 5), Vertex(8, 9)))
    assert v.as_tuple() == (4, 10, 4, 10)


@pytest.mark.parametrize("v, region", [((2, 6), R1), ((7, 7), R5), ((7, 2), R3), ((12, 2), R2)])
def test_region_of(v, region):
    c = ctx(*v, 15, 11, (6, 5), (8, 9))
    assert region_of(c, peel_vars(c)) == region


def test_trisect_vars():
    assert trisect_vars(ctx(1, 1, 9, 11, (2, 5), (8, 9))).l == 6
    assert trisect_vars(ctx(1, 1, 9, 11, (2, 5), (8, 9))).r == 8
    assert trisect_vars(ctx(1, 1, 8, 8, (2, 1), (7, 6))).r == 5


@pytest.mark.parametrize("v, succ", [((1, 1), (2, 1)), ((2, 3), (2, 4)), ((3, 2), (2, 2))])
def test_successor_hamcycle_examples(v, succ):
    assert successor_hamcycle(ctx(*v, 4, 7)) == succ


def _walk(rule, start, size):
    v, out = start, []
    for _ in range(size):
        out.append(v)
        v = tuple(int(a) for a in rule(v))
    return out, v


def test_successor_hamcycle_forms_cycles():
    for m in range(2, 13, 2):
        for n in range(2, 13):
            R = Rect.of(m, n)
            cyc, back = _walk(lambda v: successor_hamcycle(ctx(*v, m, n)), (1, 1), R.size)
            assert back == (1, 1) and validate_cycle(R, cyc)
            rev, back = _walk(lambda v: successor_hamcycle(ctx(*v, m, n), reverse=True),
                              (1, 1), R.size)
            assert back == (1, 1) and rev[1:] == cyc[:0:-1]


def test_successor_hamcycle_order_independent():
    m, n = 6, 5
    Y, X = np.mgrid[1:n + 1, 1:m + 1]
    X, Y = X.ravel(), Y.ravel()
    full = successor_hamcycle(ProcessorContext(Vertex(X, Y), m, n, None, None))
    perm = np.random.default_rng(0).permutation(len(X))
    part = successor_hamcycle(ProcessorContext(Vertex(X[perm], Y[perm]), m, n, None, None))
    assert np.array_equal(full[0][perm], part[0]) and np.array_equal(full[1][perm], part[1])


def test_successor_pattern_examples():
    assert successor_pattern(ctx(1, 2, 7, 5), "odd-snake") == (1, 3)
    assert successor_pattern(ctx(7, 3, 7, 5), "odd-snake") == (7, 4)
    assert successor_pattern(ctx(6, 1, 6, 4), "even-return") is None
    with pytest.raises(UnknownPattern):
        successor_pattern(ctx(1, 1, 3, 3), "spiral")


@pytest.mark.parametrize("name, dims, start, end", [
    ("odd-snake", [(m, n) for m in (3, 5, 7) for n in (3, 5, 7)], lambda m, n: (1, 1),
     lambda m, n: (m, n)),
    ("even-return", [(m, n) for m in (4, 6, 8) for n in (4, 6, 8)], lambda m, n: (1, n - 1),
     lambda m, n: (m, 1)),
])
def test_builtin_patterns_are_hamiltonian(name, dims, start, end):
    for m, n in dims:
        R = Rect.of(m, n)
        v, path = start(m, n), []
        while v is not None and len(path) <= R.size:
            path.append(v)
            v = successor_pattern(ctx(*v, m, n), name)
            v = None if v is None else tuple(v)
        assert validate_path(R, path, start(m, n), end(m, n)) and len(path) == R.size


def test_combine_without_border_parts_is_identity():
    R, s, t = Rect.of(6, 6), (1, 1), (6, 6)
    out = run_parallel(R, s, t)
    table = pattern_table(PatternKey(6, 6, Vertex(1, 1), Vertex(6, 6), False))
    assert not table.part_frame and not np.any(table.rewrites)
    p = reconstruct(out)
    assert len(p) == upper_bound(R, s, t) == 35 and validate_path(R, p, s, t)


def test_border_cycles_are_stitched():
    # R1 and R3 are both present; the rewrites join them to the core path
    R, s, t = Rect.of(15, 11), (6, 5), (8, 9)
    table = pattern_table(PatternKey(15, 11, Vertex(6, 5), Vertex(8, 9), False))
    assert {R1, R3} <= set(table.part_frame)
    assert 0 < np.count_nonzero(table.rewrites[:, 0]) <= len(table.rewrites)
    p = reconstruct(run_parallel(R, s, t))
    assert len(p) == 163 and validate_path(R, p, s, t)


@pytest.mark.parametrize("dims, s, t, length", [
    ((5, 1), (2, 1), (4, 1), 3), ((3, 3), (1, 1), (3, 3), 9), ((15, 11), (6, 5), (8, 9), 163)])
def test_run_parallel_examples(dims, s, t, length):
    R = Rect.of(*dims)
    p = reconstruct(run_parallel(R, s, t))
    assert len(p) == length and validate_path(R, p, s, t)


def test_reconstruct_segment():
    p = reconstruct(run_parallel(Rect.of(5, 1), (2, 1), (4, 1)))
    assert p.to_list() == [[2, 1], [3, 1], [4, 1]]


def test_reconstruct_errors():
    loop = SuccessorMap(2, 1, Vertex(1, 1), Vertex(2, 1), np.array([0, -1]))
    with pytest.raises(CycleDetected):
        reconstruct(loop)
    early = SuccessorMap(3, 1, Vertex(1, 1), Vertex(3, 1), np.array([1, -1, -1]))
    with pytest.raises(BrokenChain):
        reconstruct(early)
    merged = SuccessorMap(3, 1, Vertex(1, 1), Vertex(2, 1), np.array([1, -1, 1]))
    with pytest.raises(BrokenChain):
        reconstruct(merged)


def test_successor_map_json():
    smap = run_parallel(Rect.of(3, 2), (1, 1), (3, 2))
    d = json.loads(smap.to_json())
    succ = {(x, y): w for x, y, w in d["successors"]}
    assert succ[(3, 2)] is None
    v, seen = (1, 1), 1
    while succ[v] is not None:
        v, seen = tuple(succ[v]), seen + 1
    assert v == (3, 2) and seen == len(reconstruct(smap))


def test_op_counts_are_phase_split():
    smap = run_parallel(Rect.of(20, 13), (3, 3), (17, 11))
    per = smap.ops.max_per_phase()
    assert set(per) == set(PHASES)
    assert sum(per.values()) == smap.ops.max_total() <= BUDGET
    assert np.all(smap.ops.total() == smap.ops.max_total())


def test_op_count_constant_across_sizes():
    counts = {run_parallel(Rect.of(k, k), (1, 2), (k, k - 1)).ops.max_total()
              for k in (3, 10, 57, 200)}
    assert len(counts) == 1 and counts.pop() <= BUDGET


def test_periodicity_check_rejects_a_broken_table():
    m, n, s, t = 120, 9, Vertex(3, 4), Vertex(110, 6)
    comp = Compression.of(m, n, s, t)
    table = pattern_table(PatternKey(comp.m, comp.n, comp.s, comp.t, False))
    check_periodic(table, comp)
    bad = pattern_table.__wrapped__(PatternKey(comp.m, comp.n, comp.s, comp.t, False))
    bad.final[:, 9:12] = 0
    with pytest.raises(PatternNotPeriodic):
        check_periodic(bad, comp)


@given(instances(9))
def test_parallel_matches_sequential_small(inst):
    R, s, t = inst
    p = reconstruct(run_parallel(R, s, t))
    assert validate_path(R, p, s, t)
    assert len(p) == len(longest_path(R, s, t)) == upper_bound(R, s, t)


@given(instances(400))
def test_parallel_matches_sequential_large(inst):
    R, s, t = inst
    smap = run_parallel(R, s, t)
    p = reconstruct(smap)
    assert validate_path(R, p, s, t) and len(p) == upper_bound(R, s, t)
    assert smap.ops.max_total() <= BUDGET


def test_deterministic():
    a = run_parallel(Rect.of(33, 21), (5, 4), (29, 18)).succ
    b = run_parallel(Rect.of(33, 21), (5, 4), (29, 18)).succ
    assert np.array_equal(a, b)
