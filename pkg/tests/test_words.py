import itertools
import math

import pytest
from hypothesis import given

from conftest import spec_and_k, specs, words
from gkmfilter.symfunc import elementary_symmetric, r_poly
from gkmfilter.words import (
    GAP,
    AlphabetSpec,
    agree_disagree,
    enumerate_Delta,
    enumerate_Gamma,
    enumerate_U,
    enumerate_V,
    enumerate_Vprime,
    enumerate_Vprime_upto,
    gap_partition,
    gap_set,
    matches,
    match_set_M,
    match_set_N,
    nongap_set,
    restrict_B,
    u_index,
)

S23 = AlphabetSpec((2, 3))


def fmt(spec, ws):
    return [spec.format_word(w) for w in ws]


def test_alphabet_validation():
    with pytest.raises(ValueError):
        AlphabetSpec(())
    with pytest.raises(ValueError):
        AlphabetSpec((2, 1))
    with pytest.raises(ValueError):
        AlphabetSpec((2,), symbols=(("a",),))
    with pytest.raises(ValueError):
        AlphabetSpec((2,), symbols=(("a", "a"),))
    with pytest.raises(ValueError):
        AlphabetSpec((2,), symbols=(("a", "-"),))


def test_symbol_names_round_trip():
    spec = AlphabetSpec((2, 3), symbols=(("A", "T"), ("lo", "mid", "hi")))
    w = (1, GAP)
    assert spec.format_word(w) == "T|-"
    assert spec.parse_word("T|-") == w
    assert spec.parse_word("A|hi") == (0, 2)
    with pytest.raises(ValueError):
        spec.parse_word("A|x")


def test_gap_alias():
    assert S23.parse_word("1g") == (1, GAP)
    assert S23.parse_word("gg") == (GAP, GAP)
    spec = AlphabetSpec((2,), symbols=(("g", "c"),))
    assert spec.parse_word("g") == (0,)


def test_enumerate_U_examples():
    assert fmt(AlphabetSpec((2,)), enumerate_U(AlphabetSpec((2,)))) == ["0", "1"]
    assert fmt(S23, enumerate_U(S23)) == ["00", "01", "02", "10", "11", "12"]
    spec = AlphabetSpec((2, 2, 2))
    assert len(enumerate_U(spec)) == 8
    assert u_index(spec, (1, 0, 1)) == 5


def test_enumerate_V_examples():
    assert fmt(S23, enumerate_V(S23, 1)) == ["0-", "1-", "-0", "-1", "-2"]
    assert enumerate_V(S23, 2) == enumerate_U(S23)
    assert enumerate_V(S23, 0) == [(GAP, GAP)]


def test_enumerate_Vprime_examples():
    assert fmt(S23, enumerate_Vprime(S23, 1)) == ["1-", "-1", "-2"]
    assert enumerate_Vprime(S23, 0) == [(GAP, GAP)]
    assert fmt(AlphabetSpec((2, 2)), enumerate_Vprime(AlphabetSpec((2, 2)), 2)) == ["11"]


def test_enumerate_Vprime_upto_examples():
    assert fmt(S23, enumerate_Vprime_upto(S23, 1)) == ["--", "1-", "-1", "-2"]
    assert enumerate_Vprime_upto(AlphabetSpec((2, 2)), 0) == [(GAP, GAP)]
    assert len(enumerate_Vprime_upto(AlphabetSpec((2, 2, 2)), 2)) == 7


def test_bad_order_rejected():
    with pytest.raises(ValueError):
        enumerate_V(S23, 3)
    with pytest.raises(ValueError):
        enumerate_Vprime(S23, -1)


@given(spec_and_k())
def test_enumeration_sizes(sk):
    spec, k = sk
    assert len(enumerate_U(spec)) == spec.size
    assert len(enumerate_V(spec, k)) == elementary_symmetric(spec.B, k)
    assert len(enumerate_Vprime(spec, k)) == elementary_symmetric([b - 1 for b in spec.B], k)
    assert len(enumerate_Vprime_upto(spec, k)) == r_poly(spec.B, k)
    assert len(enumerate_Gamma(spec)) == spec.size
    assert len(enumerate_Delta(spec)) == math.prod(b + 1 for b in spec.B)


@given(spec_and_k())
def test_enumerations_are_distinct_and_well_formed(sk):
    spec, k = sk
    V = enumerate_V(spec, k)
    assert len(set(V)) == len(V)
    assert all(len(gap_set(v)) == spec.ell - k for v in V)
    for v in enumerate_Vprime(spec, k):
        assert 0 not in v and len(gap_set(v)) == spec.ell - k


@given(specs())
def test_u_index_is_position(spec):
    U = enumerate_U(spec)
    assert [u_index(spec, u) for u in U] == list(range(len(U)))


def test_matches_examples():
    assert matches(words(S23, "01"), words(S23, "0g"))
    assert not matches(words(S23, "11"), words(S23, "0g"))
    assert matches(words(S23, "00"), words(S23, "gg"))
    with pytest.raises(ValueError):
        matches(words(S23, "0g"), words(S23, "00"))


def test_match_set_examples():
    u = words(S23, "01")
    assert set(match_set_M(S23, u, 1)) == set(words(S23, "0g", "g1"))
    assert match_set_M(S23, u, 0) == [(GAP, GAP)]
    assert match_set_M(S23, u, 2) == [u]
    assert match_set_N(S23, words(S23, "g1")) == list(words(S23, "01", "11"))
    assert match_set_N(S23, u) == [u]
    assert match_set_N(S23, words(S23, "gg")) == enumerate_U(S23)


@given(spec_and_k())
def test_match_set_sizes(sk):
    spec, k = sk
    for u in enumerate_U(spec):
        M = match_set_M(spec, u, k)
        assert len(M) == math.comb(spec.ell, k)
        assert all(matches(u, v) for v in M)
    for v in enumerate_V(spec, k):
        N = match_set_N(spec, v)
        assert len(N) == math.prod(spec.B[i] for i in gap_set(v))
        assert all(matches(u, v) for u in N)


def test_gap_sets_and_restriction():
    assert gap_set(words(S23, "g1")) == {0} and nongap_set(words(S23, "g1")) == {1}
    assert gap_set(words(S23, "gg")) == {0, 1}
    assert gap_set(words(S23, "01")) == frozenset()
    spec = AlphabetSpec((2, 3, 4))
    assert restrict_B(spec, {0, 2}) == (2, 4)
    assert restrict_B(spec, set()) == ()
    assert restrict_B(spec, range(3)) == spec.B


def test_agree_disagree_examples():
    u = words(S23, "01")
    assert agree_disagree(u, words(S23, "0g")) == ({0}, set())
    assert agree_disagree(u, words(S23, "1g")) == (set(), {0})
    assert agree_disagree(u, words(S23, "02")) == ({0}, {1})


def test_gap_partition_examples():
    g1, g11, gg, one1 = words(S23, "g1", "1g", "gg", "11")
    assert gap_partition(g1, g11) == (set(), {0}, {1}, set())
    assert gap_partition(gg, gg) == ({0, 1}, set(), set(), set())
    assert gap_partition(gg, one1) == (set(), {0, 1}, set(), set())


@given(specs())
def test_gap_partition_covers_positions(spec):
    delta = enumerate_Delta(spec)
    for v1, v2 in itertools.islice(itertools.product(delta, repeat=2), 200):
        parts = gap_partition(v1, v2)
        assert frozenset().union(*parts) == frozenset(range(spec.ell))
        assert sum(len(p) for p in parts) == spec.ell


@given(specs())
def test_format_parse_round_trip(spec):
    for w in enumerate_Delta(spec):
        assert spec.parse_word(spec.format_word(w)) == w
