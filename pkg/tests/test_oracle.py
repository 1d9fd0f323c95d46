import pytest
from hypothesis import given

from meshlp import (BudgetExceeded, Rect, SearchBudget, brute_is_hamiltonian, brute_longest,
                    hamiltonian_cycle, validate_cycle, validate_path)
from meshlp.oracle import brute_longest_length
from meshlp.parallel import successor_hamcycle, ProcessorContext

from strategies import instances


@pytest.mark.parametrize("dims, s, t, expected", [
    ((3, 3), (1, 1), (3, 3), 9),
    ((2, 1), (1, 1), (2, 1), 2),
    ((4, 2), (2, 1), (2, 2), 6),
])
def test_brute_longest(dims, s, t, expected):
    R = Rect.of(*dims)
    p = brute_longest(R, s, t)
    assert len(p) == expected
    assert validate_path(R, p, s, t)


@pytest.mark.parametrize("dims, s, t, expected", [
    ((4, 3), (1, 2), (2, 2), False),
    ((5, 1), (1, 1), (5, 1), True),
    ((5, 4), (1, 1), (1, 2), True),
])
def test_brute_is_hamiltonian(dims, s, t, expected):
    assert brute_is_hamiltonian(Rect.of(*dims), s, t) is expected


def test_budget_refuses_big_instances():
    with pytest.raises(BudgetExceeded):
        brute_longest(Rect.of(6, 5), (1, 1), (6, 5))
    with pytest.raises(BudgetExceeded):
        brute_longest(Rect.of(5, 5), (1, 1), (2, 1), SearchBudget(max_expansions=3))


def test_oracle_on_offset_rectangle():
    R = Rect.of(3, 2, 10, -4)
    p = brute_longest(R, (10, -4), (12, -3))
    assert len(p) == 6 and validate_path(R, p, (10, -4), (12, -3))


@given(instances(4))
def test_swap_symmetry(inst):
    R, s, t = inst
    assert brute_longest_length(R, s, t) == brute_longest_length(R, t, s)


@given(instances(4))
def test_extension_never_shortens(inst):
    R, s, t = inst
    if R.m + 1 > 5 or (R.m + 1) * R.n > 20:
        return
    assert brute_longest_length(Rect.of(R.m + 1, R.n), s, t) >= brute_longest_length(R, s, t)


def test_hamiltonian_iff_full_length():
    R = Rect.of(4, 3)
    for s in R.vertices():
        for t in R.vertices():
            if s != t:
                assert brute_is_hamiltonian(R, s, t) == (brute_longest_length(R, s, t) == 12)


def test_validate_path_rejects():
    R = Rect.of(5, 1)
    assert validate_path(R, [(2, 1), (3, 1), (4, 1)], (2, 1), (4, 1))
    R2 = Rect.of(3, 3)
    assert not validate_path(R2, [(1, 1), (2, 2), (3, 3)], (1, 1), (3, 3))           # diagonal
    assert not validate_path(R2, [(1, 1), (2, 1), (1, 1), (1, 2)], (1, 1), (1, 2))   # revisit
    assert not validate_path(R2, [(1, 1), (2, 1)], (1, 1), (3, 1))                   # wrong end
    assert not validate_path(R2, [(3, 1), (4, 1)], (3, 1), (4, 1))                   # outside
    assert not validate_path(R2, [], (1, 1), (2, 1))


def test_validate_cycle():
    # the closed-form rule over R(4,7), walked from (1,1)
    R = Rect.of(4, 7)
    v, cyc = (1, 1), []
    for _ in range(R.size):
        cyc.append(v)
        nxt = successor_hamcycle(ProcessorContext(v, 4, 7, None, None))
        v = (int(nxt[0]), int(nxt[1]))
    assert v == (1, 1)
    assert validate_cycle(R, cyc)
    assert validate_cycle(Rect.of(2, 2), [(1, 1), (2, 1), (2, 2), (1, 2)])
    assert not validate_cycle(Rect.of(2, 2), [(1, 1), (2, 1), (2, 2)])
    c = hamiltonian_cycle(Rect.of(4, 4)).vertices
    assert not validate_cycle(Rect.of(4, 4), c[:-1])
