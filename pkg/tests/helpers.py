"""Shared fixtures data and random generators for the test suite."""

import random

from hypothesis import strategies as st

from seqsubset.codebook import Code
from seqsubset.conventional import ConventionalCode, linear_code_from_generator
from seqsubset.core import AlphabetParams, Pool

G1 = [[1, 0, 0, 1, 0], [0, 1, 0, 0, 1], [0, 0, 1, 1, 1]]
G2 = [
    [1, 0, 0, 1, 1, 1, 0, 0],
    [0, 1, 0, 0, 0, 1, 1, 1],
    [0, 0, 1, 1, 0, 1, 0, 1],
]


def small_code():
    """Three pools of two length-5 binary sequences, minimum distance 4."""
    return Code.of([
        Pool.of(["00101", "10001"], 2),
        Pool.of(["01011", "10110"], 2),
        Pool.of(["01000", "11100"], 2),
    ])


def inner_53():
    return linear_code_from_generator(G1, 2)


def outer_83():
    return linear_code_from_generator(G2, 2)


def fold_pair():
    """Index code {0000, 1111} and a length-8 code with distance 5."""
    c1 = ConventionalCode.of(["0000", "1111"], 2, 4)
    c2 = ConventionalCode.of(["00000000", "11111000", "01010111"], 2, 8)
    return c1, c2


def random_pool(rng, q, L, size, multiset=False):
    params = AlphabetParams(q, L)
    if multiset:
        members = [tuple(rng.randrange(q) for _ in range(L)) for _ in range(size)]
        return Pool(params, tuple(members), True)
    size = min(size, q ** L)
    members = set()
    while len(members) < size:
        members.add(tuple(rng.randrange(q) for _ in range(L)))
    return Pool(params, tuple(members))


def random_instance(rng, max_q=4, max_L=6, max_size=5, count=2, multiset=False):
    q = rng.randint(2, max_q)
    L = rng.randint(1, max_L)
    return [random_pool(rng, q, L, rng.randint(0, max_size), multiset) for _ in range(count)]


@st.composite
def pools(draw, count=2, max_q=4, max_L=6, max_size=6, multiset=None, min_size=0):
    """``count`` pools sharing one random ``(q, L)``."""
    q = draw(st.integers(2, max_q))
    L = draw(st.integers(1, max_L))
    if multiset is None:
        multiset = draw(st.booleans())
    params = AlphabetParams(q, L)
    word = st.tuples(*[st.integers(0, q - 1)] * L)
    cap = max_size if multiset else min(max_size, q ** L)
    out = []
    for _ in range(count):
        if multiset:
            members = draw(st.lists(word, min_size=min_size, max_size=cap))
        else:
            members = draw(st.lists(word, min_size=min(min_size, cap), max_size=cap, unique=True))
        out.append(Pool(params, tuple(members), multiset))
    return out


def rng(seed):
    return random.Random(seed)


def construct_pair_code():
    from seqsubset.constructions import construct2

    return construct2(inner_53(), outer_83())
