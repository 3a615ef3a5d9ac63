import random

import pytest
from hypothesis import given, settings

from helpers import pools, random_instance, random_pool
from seqsubset.core import Pool, pool_difference
from seqsubset.distance import (
    Injection, fixed_point_witness, injection_cost, metric_violations, min_cost_assignment,
    pairwise_distances, seqsubset_distance, seqsubset_distance_bruteforce, seqsubset_distance_value,
)
from seqsubset.errors import DimensionError, InstanceTooLargeError, InvalidInjectionError, ModeError

X1 = Pool.of(["1010", "0010", "1101"], 2)
X2 = Pool.of(["1101", "0011", "1011", "1100"], 2)


def _ordered(a, b):
    return (a, b) if len(a) <= len(b) else (b, a)


def test_golden_pair():
    res = seqsubset_distance(X1, X2)
    assert res.distance == 6
    assert injection_cost(X1, X2, res.witness) == 6
    assert seqsubset_distance_bruteforce(X1, X2).distance == 6


def test_golden_channel_pair():
    assert seqsubset_distance_value(Pool.of(["0011", "1010"], 2), Pool.of(["0111", "1010", "1100"], 2)) == 5


def test_golden_multiset_pair():
    a = Pool.of(["0101", "0101", "1011"], 2, multiset=True)
    b = Pool.of(["0111", "1101", "1001", "1001"], 2, multiset=True)
    assert seqsubset_distance_value(a, b) == 7
    assert seqsubset_distance_bruteforce(a, b).distance == 7


def test_empty_pools():
    empty = Pool.of([], 2, L=4)
    assert seqsubset_distance_value(empty, X2) == 16
    assert seqsubset_distance_value(X2, empty) == 16
    assert seqsubset_distance_value(empty, empty) == 0
    assert injection_cost(empty, X2, []) == 16


def test_explicit_injection_by_dict():
    chi = {(1, 0, 1, 0): (1, 0, 1, 1), (0, 0, 1, 0): (0, 0, 1, 1), (1, 1, 0, 1): (1, 1, 0, 1)}
    assert injection_cost(X1, X2, chi) == 1 + 1 + 0 + 4


def test_identity_injection_is_free():
    assert injection_cost(X1, X1, [0, 1, 2]) == 0


@pytest.mark.parametrize("images", [[0, 0, 1], [0, 1, 7], [0, 1]])
def test_invalid_injections(images):
    with pytest.raises(InvalidInjectionError):
        injection_cost(X1, X2, images)


def test_injection_must_map_smaller_into_larger():
    with pytest.raises(InvalidInjectionError):
        injection_cost(X2, X1, [0, 1, 2, 0])


def test_dimension_and_mode_errors():
    with pytest.raises(DimensionError):
        seqsubset_distance(X1, Pool.of(["10101"], 2))
    with pytest.raises(ModeError):
        seqsubset_distance(X1, X2.as_multiset())


def test_bruteforce_guard():
    big = Pool.of([format(i, "04b") for i in range(9)], 2)
    with pytest.raises(InstanceTooLargeError):
        seqsubset_distance_bruteforce(X1, big)


def test_singleton_domain():
    x = Pool.of(["0000"], 2)
    expected = min(sum(a != b for a, b in zip((0, 0, 0, 0), y)) for y in X2) + 4 * 3
    assert seqsubset_distance_value(x, X2) == expected


def test_fixed_point_witness_on_subset():
    sub = Pool.of(["1101", "0011"], 2)
    w = fixed_point_witness(sub, X2)
    assert all(x == y for x, y in w.pairs())
    assert injection_cost(sub, X2, w) == 2 * 4


@given(pools(multiset=False, max_size=5))
def test_fixed_point_witness_is_optimal_and_fixes_overlap(ps):
    a, b = _ordered(*ps)
    w = fixed_point_witness(a, b)
    assert injection_cost(a, b, w) == seqsubset_distance_value(a, b)
    for x, y in w.pairs():
        if x in b:
            assert x == y


def test_assignment_small_matrix():
    total, assign = min_cost_assignment([[4, 1, 3], [2, 0, 5], [3, 2, 2]])
    assert total == 5
    assert sorted(assign) == [0, 1, 2]


def test_witness_is_lexicographically_smallest():
    rng = random.Random(5)
    for _ in range(300):
        a, b = _ordered(*random_instance(rng, max_q=2, max_L=3, max_size=4))
        res = seqsubset_distance(a, b)
        assert res.witness.images == seqsubset_distance_bruteforce(a, b).witness.images


@given(pools(max_size=5))
def test_matches_bruteforce(ps):
    a, b = ps
    fast = seqsubset_distance(a, b)
    assert fast.distance == seqsubset_distance_bruteforce(a, b).distance
    assert injection_cost(*_ordered(a, b), fast.witness) == fast.distance


@settings(max_examples=200)
@given(pools(count=3))
def test_metric_axioms(ps):
    x, y, z = ps
    d = seqsubset_distance_value
    assert d(x, y) == d(y, x) >= 0
    assert (d(x, y) == 0) == (x == y)
    assert d(x, y) <= d(x, z) + d(z, y)


@given(pools(multiset=False))
def test_disjoint_parts_carry_the_distance(ps):
    a, b = ps
    d = seqsubset_distance_value
    assert d(a, b) == d(pool_difference(a, b), pool_difference(b, a))


@given(pools(multiset=False))
def test_shrinking_the_larger_side_never_increases_distance(ps):
    a, b = _ordered(*ps)
    rng = random.Random(len(a) * 31 + len(b))
    keep = rng.sample(b.members, rng.randint(len(a), len(b)))
    assert seqsubset_distance_value(a, b.with_members(keep)) <= seqsubset_distance_value(a, b)


def test_pairwise_distances_parallel_matches_serial():
    rng = random.Random(1)
    ps = [random_pool(rng, 2, 4, rng.randint(1, 5)) for _ in range(5)]
    serial = pairwise_distances(ps)
    assert pairwise_distances(ps, jobs=2) == serial


def test_metric_spot_check_is_clean():
    ps = [Pool.of(w, 2) for w in (["00101", "10001"], ["01011", "10110"], ["01000", "11100"])]
    assert metric_violations(ps, trials=50) == []


def test_injection_object_validates():
    with pytest.raises(InvalidInjectionError):
        Injection(X1, X2, (0, 0, 1))
