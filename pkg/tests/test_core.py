import pytest
from hypothesis import given

from helpers import pools
from seqsubset.core import (
    AlphabetParams, Pool, hamming, parse_pool, pool_difference, seq, seq_str, serialize_pool,
)
from seqsubset.errors import DimensionError, ModeError, ParseError


def test_members_are_canonically_sorted():
    a = Pool.of(["1010", "0011"], 2)
    b = Pool.of(["0011", "1010"], 2)
    assert a == b
    assert str(a) == "{0011,1010}"


def test_set_mode_rejects_duplicates():
    with pytest.raises(ModeError):
        Pool.of(["0011", "0011"], 2)


def test_multiset_keeps_multiplicities():
    p = Pool.of(["0101", "0101", "1011"], 2, multiset=True)
    assert len(p) == 3
    assert p.counts()[seq("0101")] == 2
    assert p != Pool.of(["0101", "1011"], 2, multiset=True)


@pytest.mark.parametrize("q,L", [(1, 3), (2, 0), (2 ** 16 + 1, 2)])
def test_bad_alphabet(q, L):
    with pytest.raises(DimensionError):
        AlphabetParams(q, L)


def test_symbol_out_of_range():
    with pytest.raises(DimensionError):
        Pool.of(["0120"], 2)


def test_ragged_member():
    with pytest.raises(DimensionError):
        Pool(AlphabetParams(2, 3), ((0, 1, 0), (1, 1)))


def test_hamming():
    assert hamming(seq("1010"), seq("0011")) == 2
    with pytest.raises(DimensionError):
        hamming(seq("10"), seq("101"))


def test_set_operations():
    a = Pool.of(["0000", "0011", "1010"], 2)
    b = Pool.of(["0011", "1111"], 2)
    assert pool_difference(a, b) == Pool.of(["0000", "1010"], 2)
    assert a.union(b) == Pool.of(["0000", "0011", "1010", "1111"], 2)
    assert a.intersection(b) == Pool.of(["0011"], 2)


def test_mixing_modes_is_an_error():
    a = Pool.of(["00"], 2)
    with pytest.raises(ModeError):
        a.union(a.as_multiset())


def test_parse_with_header_and_compact_digits():
    p = parse_pool("#q=2 L=4\n0011\n1 0 1 0\n")
    assert p == Pool.of(["0011", "1010"], 2)


def test_parse_wide_alphabet():
    p = parse_pool("#q=16 L=2\n15 3\n10 0\n")
    assert p.members == ((10, 0), (15, 3))
    assert seq_str(p.members[0]) == "10 0"


def test_parse_multiset_comment():
    p = parse_pool("#q=2 L=2\n#multiset\n01\n01\n")
    assert p.multiset and len(p) == 2


def test_parse_empty_pool_needs_header():
    assert len(parse_pool("#q=3 L=2\n")) == 0
    with pytest.raises(ParseError):
        parse_pool("\n")


@pytest.mark.parametrize("text,line", [
    ("#q=2 L=3\n010\n01\n", 3),
    ("#q=2 L=3\n010\n012\n", 3),
    ("#q=2 L=3\n010\n010\n", 3),
    ("#q=2 L=3\n0x0\n", 2),
])
def test_parse_errors_carry_line_numbers(text, line):
    with pytest.raises(ParseError) as info:
        parse_pool(text)
    assert info.value.line == line


def test_parse_needs_alphabet():
    with pytest.raises(ParseError):
        parse_pool("0101\n")
    assert parse_pool("0101\n", q=2).L == 4


@given(pools(count=1))
def test_serialize_round_trip(ps):
    (p,) = ps
    assert parse_pool(serialize_pool(p)) == p
