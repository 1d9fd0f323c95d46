import numpy as np
import pytest
from hypothesis import given, strategies as st

from meshlp import (Rect, Vertex, adjust_peeling, corner_ham_path, find_junctions,
                    hamiltonian_cycle, is_proper, longest_path, merge_cycle_path, merge_cycles,
                    peel, solve_no_junction, solve_small, solve_strip1, solve_strip2, trisect,
                    upper_bound, validate_cycle, validate_path)
from meshlp.grid import bound
from meshlp.sequential import (Cycle, DegenerateSide, NoParallelEdges, NotEvenSized, Path,
                               Side, open_sides, peeling_invariants)

from strategies import instances, placed_instances


def _ok(R, p, s, t, length):
    return validate_path(R, p, s, t) and len(p) == length


def test_strip_segment():
    p = longest_path(Rect.of(5, 1), (2, 1), (4, 1))
    assert p.to_list() == [[2, 1], [3, 1], [4, 1]]


@pytest.mark.parametrize("s, t, length", [((1, 1), (8, 1), 8), ((3, 1), (5, 1), 3)])
def test_solve_strip1(s, t, length):
    R = Rect.of(8, 1)
    assert _ok(R, solve_strip1(R, s, t), s, t, length)
    R2 = Rect.of(2, 1)
    assert _ok(R2, solve_strip1(R2, (1, 1), (2, 1)), (1, 1), (2, 1), 2)


@pytest.mark.parametrize("dims, s, t, length", [
    ((4, 2), (2, 1), (2, 2), 6),     # oracle
    ((4, 2), (1, 1), (4, 2), 7),     # oracle: same colors, so one vertex is left out
    ((5, 2), (1, 1), (2, 2), 9),     # oracle
])
def test_solve_strip2(dims, s, t, length):
    R = Rect.of(*dims)
    assert _ok(R, solve_strip2(R, s, t), s, t, length)


@pytest.mark.parametrize("s, t, length", [((1, 1), (3, 3), 9), ((1, 1), (2, 1), 8),
                                          ((2, 1), (2, 3), 7)])
def test_solve_small(s, t, length):
    R = Rect.of(3, 3)
    assert _ok(R, solve_small(R, s, t), s, t, length)


def test_large_example():
    R = Rect.of(15, 11)
    p = longest_path(R, (6, 5), (8, 9))
    assert _ok(R, p, (6, 5), (8, 9), 163)


def test_peel_example():
    R = Rect.of(15, 11)
    p = peel(R, (6, 5), (8, 9))
    assert p.cuts == (4, 10, 4, 10)
    assert p.R5 == Rect.span(5, 9, 5, 9)
    assert not peeling_invariants(p, R, (6, 5), (8, 9))
    assert is_proper(p, R, (6, 5), (8, 9))


@pytest.mark.parametrize("dims, s, t", [((5, 5), (2, 1), (4, 5)), ((6, 6), (1, 1), (6, 6))])
def test_peel_nothing_to_remove(dims, s, t):
    R = Rect.of(*dims)
    p = peel(R, s, t)
    assert all(r.empty for r in p.borders)
    assert p.R5 == R


def test_improper_even_instance_is_adjusted():
    # s black with even s_x, t one row down and one column right
    R, s, t = Rect.of(6, 6), (2, 1), (3, 2)
    p = peel(R, s, t)
    assert not is_proper(p, R, s, t)
    q = adjust_peeling(p, R, s, t)
    assert is_proper(q, R, s, t) and not peeling_invariants(q, R, s, t)


def test_adjustment_moves_columns_when_rows_are_empty():
    # improper with R3 and R4 empty: the core widens by columns taken from R2
    R, s, t = Rect.of(6, 4), (1, 2), (2, 3)
    p = peel(R, s, t)
    assert p.R3.empty and p.R4.empty and not is_proper(p, R, s, t)
    q = adjust_peeling(p, R, s, t)
    assert q.R5.m > p.R5.m and is_proper(q, R, s, t)


def test_adjustment_moves_rows():
    R, s, t = Rect.of(6, 6), (2, 1), (3, 2)
    p = peel(R, s, t)
    q = adjust_peeling(p, R, s, t)
    assert q.R5.n > p.R5.n and q.R5.m == p.R5.m


def test_proper_peeling_is_unchanged():
    R = Rect.of(15, 11)
    p = peel(R, (6, 5), (8, 9))
    assert adjust_peeling(p, R, (6, 5), (8, 9)) is p


def test_odd_odd_c1_c2_peelings_are_proper():
    for dims in ((5, 5), (7, 5), (7, 7)):
        R = Rect.of(*dims)
        for s in R.vertices():
            for t in R.vertices():
                if s == t or s.x > t.x or upper_bound(R, s, t) == R.size:
                    continue
                assert is_proper(peel(R, s, t), R, s, t)


def test_trisect_odd_core():
    tri = trisect(Rect.of(5, 5), (2, 1), (4, 5))
    assert tri.orientation == "horizontal"
    assert (tri.Rs, tri.Rm, tri.Rt) == (Rect.span(1, 5, 1, 2), Rect.span(1, 5, 3, 3),
                                        Rect.span(1, 5, 4, 5))


def test_trisect_even_core():
    tri = trisect(Rect.of(6, 6), (1, 1), (6, 6))
    assert (tri.Rs.y1, tri.Rs.y2, tri.Rm.y1, tri.Rm.y2, tri.Rt.y1, tri.Rt.y2) == (1, 2, 3, 4, 5, 6)


def test_trisect_flat_core_is_vertical():
    tri = trisect(Rect.of(6, 3), (1, 2), (6, 2))
    assert tri.orientation == "vertical"
    assert tri.Rs.m == 2 and tri.Rt.m == 2


def _junction_sum(R, s, t, tri, j):
    Rs, Rm, Rt = tri.Rs, tri.Rm, tri.Rt
    total = bound(Rs.m, Rs.n, Rs.to_local(s), Rs.to_local(j.p))
    total += bound(Rt.m, Rt.n, Rt.to_local(j.q), Rt.to_local(t))
    if not Rm.empty:
        total += bound(Rm.m, Rm.n, Rm.to_local(j.m_enter), Rm.to_local(j.m_exit))
    return total


@pytest.mark.parametrize("dims, s, t", [((6, 6), (1, 1), (6, 6)), ((7, 7), (3, 2), (5, 6))])
def test_junctions_satisfy_sum(dims, s, t):
    R = Rect.of(*dims)
    tri = trisect(R, s, t)
    j = find_junctions(tri, R, s, t)
    assert j is not None
    assert _junction_sum(R, s, t, tri, j) == upper_bound(R, s, t)


def test_corner_junction_on_even_square():
    R = Rect.of(6, 6)
    j = find_junctions(trisect(R, (1, 1), (6, 6)), R, (1, 1), (6, 6))
    assert j.p == (1, 2) and j.q == (1, 5)


def test_four_row_core_without_junction():
    R, s, t = Rect.of(5, 4), (2, 1), (4, 4)
    assert find_junctions(trisect(R, s, t), R, s, t) is None
    assert _ok(R, solve_no_junction(R, s, t), s, t, upper_bound(R, s, t))


def test_solve_no_junction_six_by_four():
    R, s, t = Rect.of(6, 4), (2, 2), (5, 3)
    assert _ok(R, solve_no_junction(R, s, t), s, t, 23)    # oracle value
    with pytest.raises(ValueError):
        solve_no_junction(R, s, t, strict=True)


@given(st.integers(2, 12), st.integers(2, 12))
def test_junction_sum_whenever_found(m, n):
    R = Rect.of(m, n)
    s, t = Vertex(1, 1), Vertex(m, n)
    try:
        tri = trisect(R, s, t)
    except ValueError:
        return
    j = find_junctions(tri, R, s, t)
    if j is not None:
        assert _junction_sum(R, s, t, tri, j) == upper_bound(R, s, t)


@pytest.mark.parametrize("dims, a, b, length", [
    ((5, 2), (1, 1), (2, 1), 10),
    ((4, 4), (1, 1), (4, 1), 16),     # oracle
    ((3, 1), (1, 1), (3, 1), 3),
])
def test_corner_ham_path(dims, a, b, length):
    R = Rect.of(*dims)
    assert _ok(R, corner_ham_path(R, a, b), a, b, length)


def test_corner_ham_path_refuses_non_hamiltonian():
    with pytest.raises(ValueError):
        corner_ham_path(Rect.of(3, 3), (1, 1), (2, 1))


def test_hamiltonian_cycle_examples():
    c = hamiltonian_cycle(Rect.of(5, 4))
    assert len(c) == 20 and validate_cycle(Rect.of(5, 4), c)
    assert validate_cycle(Rect.of(2, 2), hamiltonian_cycle(Rect.of(2, 2)))
    with pytest.raises(NotEvenSized):
        hamiltonian_cycle(Rect.of(3, 3))
    with pytest.raises(DegenerateSide):
        hamiltonian_cycle(Rect.of(4, 1))


def test_hamiltonian_cycle_open_side_choice():
    R = Rect.of(4, 6, 3, 2)
    for side in open_sides(R):
        assert validate_cycle(R, hamiltonian_cycle(R, side))
    with pytest.raises(ValueError):
        hamiltonian_cycle(Rect.of(3, 4), Side.TOP)


def test_merge_two_squares():
    a = hamiltonian_cycle(Rect.of(2, 2))
    b = hamiltonian_cycle(Rect.of(2, 2, 3, 1))
    c = merge_cycles(a, b)
    assert isinstance(c, Cycle)
    assert validate_cycle(Rect.of(4, 2), c)


def test_merge_border_cycles_of_a_peeling():
    R = Rect.of(15, 11)
    p = peel(R, (6, 5), (8, 9))
    c = merge_cycles(hamiltonian_cycle(p.R3, Side.LEFT), hamiltonian_cycle(p.R1, Side.TOP))
    assert len(c) == p.R1.size + p.R3.size
    assert len({tuple(v) for v in c.vertices}) == len(c)
    steps = np.abs(np.diff(np.vstack([c.vertices, c.vertices[:1]]), axis=0)).sum(axis=1)
    assert np.all(steps == 1)


def test_merge_needs_facing_edges():
    a = hamiltonian_cycle(Rect.of(2, 2))
    b = hamiltonian_cycle(Rect.of(2, 2, 5, 5))
    with pytest.raises(NoParallelEdges):
        merge_cycles(a, b)


def test_merge_cycle_into_path():
    c = hamiltonian_cycle(Rect.of(2, 2))
    p = Path([(1, 3), (2, 3), (3, 3), (4, 3)])
    q = merge_cycle_path(c, p)
    R = Rect.span(1, 4, 1, 3)
    assert len(q) == 8 and validate_path(R, q, (1, 3), (4, 3))


def test_merge_empty_cycle_keeps_path():
    p = longest_path(Rect.of(15, 11), (6, 5), (8, 9))
    q = merge_cycle_path(Cycle(np.zeros((0, 2))), p)
    assert np.array_equal(q.vertices, p.vertices)


@given(placed_instances(14))
def test_longest_path_reaches_bound(inst):
    R, s, t = inst
    p = longest_path(R, s, t)
    assert validate_path(R, p, s, t)
    assert len(p) == upper_bound(R, s, t)


@given(instances(300))
def test_longest_path_large(inst):
    R, s, t = inst
    p = longest_path(R, s, t)
    assert validate_path(R, p, s, t) and len(p) == upper_bound(R, s, t)


def test_deterministic():
    a = longest_path(Rect.of(40, 30), (3, 7), (31, 22)).vertices
    b = longest_path(Rect.of(40, 30), (3, 7), (31, 22)).vertices
    assert np.array_equal(a, b)
