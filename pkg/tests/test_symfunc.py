import itertools
import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from gkmfilter.symfunc import elementary_symmetric, elementary_symmetric_all, r_poly, shifted_seq


def esym_subsets(xs, i):
    return sum(math.prod(c) for c in itertools.combinations(xs, i))


def test_esym_examples():
    assert elementary_symmetric((5, 7), 0) == 1
    assert elementary_symmetric((), 0) == 1
    assert elementary_symmetric((2, 3, 4), 3) == 24
    assert elementary_symmetric((2, 3, 4), 1) == 9
    assert elementary_symmetric((2, 3, 4), 2) == 26


def test_esym_order_beyond_length_is_zero():
    assert elementary_symmetric((2, 3), 3) == 0


def test_esym_negative_order_rejected():
    with pytest.raises(ValueError):
        elementary_symmetric((2,), -1)


def test_esym_large_values_are_exact():
    xs = [10**12 + j for j in range(20)]
    assert elementary_symmetric(xs, 20) == math.prod(xs)


@given(st.lists(st.integers(-5, 9), max_size=8), st.integers(0, 9))
def test_esym_matches_subset_enumeration(xs, i):
    assert elementary_symmetric(xs, i) == esym_subsets(xs, i)


@given(st.lists(st.integers(0, 9), max_size=8))
def test_esym_all_is_generating_polynomial(xs):
    # prod(1 + x t) at t = 2 equals sum S_i 2^i
    e = elementary_symmetric_all(xs)
    assert len(e) == len(xs) + 1
    assert sum(c * 2**i for i, c in enumerate(e)) == math.prod(1 + 2 * x for x in xs)
    assert e == [elementary_symmetric(xs, i) for i in range(len(xs) + 1)]


def test_shifted_seq_examples():
    assert shifted_seq((2, 3), -1) == (1, 2)
    assert shifted_seq((), 5) == ()
    assert shifted_seq((4, 2, 2), 1) == (5, 3, 3)


def test_r_poly_examples():
    assert r_poly((2, 3), 0) == 1
    assert r_poly((7, 7, 7), 0) == 1
    assert r_poly((2, 3), 1) == 4
    assert r_poly((2, 2, 2), 2) == 7


@given(st.lists(st.integers(2, 5), min_size=1, max_size=6))
def test_r_poly_full_order_is_product(B):
    # sum over all subsets of prod(b - 1) = prod(b)
    assert r_poly(B, len(B)) == math.prod(B)


@given(st.lists(st.integers(2, 5), max_size=6), st.integers(0, 7))
def test_r_poly_is_prefix_sum(B, i):
    assert r_poly(B, i) == sum(esym_subsets([b - 1 for b in B], j) for j in range(i + 1))
