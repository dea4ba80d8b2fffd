import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from curvedim.core import LinearSystem, virtual_dim
from curvedim.degen import (
    IntervalParams,
    candidate_pairs,
    capital_D,
    dhigh,
    dlow,
    interval_witness,
    limit_dim,
    limit_rule,
    min_h,
    search_witness,
    subsystems,
)

D_MINUS_ONE = (9, 13, 17, 20, 24, 28, 32, 36, 40, 50, 55)


def test_subsystems_examples():
    assert subsystems(LinearSystem(7, 0, 12, 2), 4, 8) == (
        LinearSystem(4, 0, 4, 2),
        LinearSystem(3, 0, 4, 2),
        LinearSystem(7, 4, 8, 2),
        LinearSystem(7, 5, 8, 2),
    )
    assert subsystems(LinearSystem(12, 0, 15, 3), 8, 8) == (
        LinearSystem(8, 0, 7, 3),
        LinearSystem(7, 0, 7, 3),
        LinearSystem(12, 8, 8, 3),
        LinearSystem(12, 9, 8, 3),
    )
    assert subsystems(LinearSystem(9, 0, 4, 3), 9, 0)[2] == LinearSystem(9, 9, 0, 3)
    with pytest.raises(ValueError):
        subsystems(LinearSystem(7, 0, 3, 2), 4, 5)


def test_virtual_identities_on_1000_tuples():
    rng = random.Random(7)
    for _ in range(1000):
        d, m0, m = rng.randint(0, 60), rng.randint(0, 30), rng.randint(0, 20)
        n = rng.randint(0, 40)
        a, b = rng.randint(0, d + 5), rng.randint(0, n)
        P, Ph, F, Fh = (virtual_dim(S) for S in subsystems(LinearSystem(d, m0, n, m), a, b))
        v = virtual_dim(LinearSystem(d, m0, n, m))
        assert v == P + F - a == F + Ph + 1 == P + Fh + 1


@pytest.mark.parametrize(
    "args, value", [((2, -1, 1, -1, 4), -1), ((0, -1, 6, -1, 6), 0), ((5, 2, 4, 1, 3), 6)]
)
def test_limit_dim_examples(args, value):
    assert limit_dim(*args) == value


def test_limit_rule_boundary_on_1000_tuples():
    rng = random.Random(11)
    seen = 0
    while seen < 1000:
        a = rng.randint(1, 40)
        rP = rng.randint(-1, a)
        rF = a - 1 - rP
        if rF < -1 or rF > a:
            continue
        lPhat, lFhat = rng.randint(-1, 50), rng.randint(-1, 50)
        lP, lF = lPhat + rP + 1, lFhat + rF + 1
        assert lPhat + lFhat + 1 == lP + lF - a
        assert limit_dim(lP, lPhat, lF, lFhat, a) == lP + lF - a
        seen += 1


@given(st.integers(1, 30), st.integers(-1, 40), st.integers(-1, 40), st.integers(-1, 30), st.integers(-1, 30))
def test_limit_dim_is_max_form(a, lPhat, lFhat, rP, rF):
    if rP > a or rF > a:
        with pytest.raises(ValueError):
            limit_rule(lPhat + rP + 1, lPhat, lFhat + rF + 1, lFhat, a)
        return
    lP, lF = lPhat + rP + 1, lFhat + rF + 1
    assert limit_dim(lP, lPhat, lF, lFhat, a) == max(lPhat + lFhat + 1, lP + lF - a)


def test_dlow_dhigh_examples():
    assert dlow(0, 2, 3) == 8
    assert dlow(-1, 4, 12) == Fraction(779, 14)
    assert dlow(-1, 1, 2) == Fraction(11, 4)
    assert dhigh(0, 0, 5) == 4
    assert dhigh(-1, 2, 3) == 8
    assert dhigh(1, 3, 3) == 17


def test_interval_matching_grid():
    for m in range(2, 41):
        for h in range(0, 61):
            assert dhigh(-1, h, m) == dlow(0, h, m)
            assert dhigh(0, h, m) == dlow(1, h, m)


def test_gap_bound():
    for m in range(2, 41):
        for h in range(min_h(m), min_h(m) + 80):
            assert dlow(-1, h + 1, m) - dhigh(1, h, m) <= 1


def test_capital_D_table():
    assert tuple(capital_D(m) - 1 for m in range(2, 13)) == D_MINUS_ONE
    assert (capital_D(2), capital_D(7), capital_D(12)) == (10, 29, 56)


def test_interval_cover():
    for m in range(2, 13):
        D = capital_D(m)
        for d in range(D, D + 201):
            w = interval_witness(d, m)
            assert w is not None, (d, m)
            assert dlow(w.gamma, w.h, m) <= d <= dhigh(w.gamma, w.h, m)
            assert w.h >= min_h(m)


def test_interval_witness_examples():
    assert interval_witness(14, 3) == IntervalParams(0, 3)
    assert interval_witness(56, 12).h >= 4
    assert interval_witness(3, 12) is None
    assert IntervalParams(0, 3).pair(14, 3) == (11, 7)


def test_candidate_order():
    pairs = list(candidate_pairs(12, 15, 3))
    assert pairs[0] == (9, 12)
    assert {a for a, _ in pairs} == {7, 8, 9, 10}
    keys = [(abs(a - 9), -b, a) for a, b in pairs]
    assert keys == sorted(keys)
    assert (8, 8) in pairs


def test_search_examples(engine):
    w = search_witness(12, 15, 3, engine.subsystem_dim)
    assert w is not None and w.l0 == 0
    assert search_witness(19, 10, 6, engine.subsystem_dim) is None
    w = search_witness(55, 21, 12, engine.subsystem_dim)
    assert w is not None and w.succeeds


def test_wider_window_matches_published_failures(engine):
    # Offsets -7..2 cover every published pair; the failures then coincide
    # with the published ones for 7 <= m <= 12.
    from curvedim import reference_tables

    wide = tuple(range(-7, 3))
    for m in range(7, 13):
        for d, n, _, _, pair in reference_tables.rows_for(m):
            found = search_witness(d, n, m, engine.subsystem_dim, wide)
            assert (found is None) == (pair is None), (d, n, m)
