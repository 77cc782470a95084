import itertools
import random

import pytest

from hackenbush.nimsum import (
    ChainOp,
    ChainStep,
    chain_eval,
    lower,
    lower_slow,
    upper,
    upper_slow,
    xor,
)

UP, DOWN = ChainOp.UPPER, ChainOp.LOWER


def test_xor_basic():
    assert xor(5, 3) == 6
    assert xor(77, 0) == 77
    assert xor(19, 19) == 0
    with pytest.raises(ValueError):
        xor(-1, 2)


def test_scan_definitions_on_small_values():
    # upper/lower over {5^0, 5^1, 5^2, 5^3} = {5, 4, 7, 6}
    assert upper_slow(5, 3) == 7
    assert lower_slow(5, 3) == 4
    assert upper_slow(9, 0) == 9
    assert lower_slow(9, 0) == 9


def test_closed_forms_match_spot_values():
    assert upper(5, 3) == 7
    assert lower(5, 3) == 4
    assert upper(2, 2) == 3  # scan of {2, 3, 0}
    assert lower(2, 2) == 0
    assert upper(6, 0) == 6 and lower(6, 0) == 6


def test_closed_forms_equal_scans_exhaustively():
    for m in range(64):
        for n in range(64):
            assert upper(m, n) == upper_slow(m, n)
            assert lower(m, n) == lower_slow(m, n)


def test_closed_forms_on_wide_values():
    # Values beyond 32 bits still match the definitional scan locally.
    base = 1 << 40
    for m in (base + 5, base * 3 + 1):
        for n in range(16):
            assert upper(m, n) == max(m ^ k for k in range(n + 1))
            assert lower(m, n) == min(m ^ k for k in range(n + 1))


def test_upper_commutative_and_monotone():
    for m in range(32):
        for n in range(32):
            assert upper(m, n) == upper(n, m)
            assert upper(m + 1, n) >= upper(m, n)
            assert upper(m, n + 1) >= upper(m, n)


def test_lower_monotone_up_in_first_down_in_second():
    for m in range(32):
        for n in range(32):
            assert lower(m + 1, n) >= lower(m, n)
            assert lower(m, n + 1) <= lower(m, n)


def test_mixed_order_inequality():
    for a in range(24):
        for b in range(24):
            for c in range(24):
                assert lower(upper(a, b), c) <= upper(lower(a, c), b)


def test_permutation_positivity_of_lower_chains():
    rng = random.Random(99)
    for _ in range(300):
        a = rng.randrange(32)
        bs = [rng.randrange(16) for _ in range(rng.randint(1, 4))]
        flags = {
            chain_eval(a, [ChainStep(DOWN, b) for b in perm]) > 0
            for perm in itertools.permutations(bs)
        }
        assert len(flags) == 1


def test_chain_eval():
    assert chain_eval(9, []) == 9
    assert chain_eval(0, [ChainStep(UP, 1), ChainStep(DOWN, 2)]) == 0
    assert chain_eval(4, [ChainStep(UP, 1)]) == 5
