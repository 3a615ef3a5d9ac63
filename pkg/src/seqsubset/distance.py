"""Sequence-subset distance between two pools.

The distance between pools ``X1`` and ``X2`` (``|X1| <= |X2|``) is the
minimum, over injections ``chi: X1 -> X2``, of

    sum(hamming(x, chi(x)) for x in X1) + L * (|X2| - |X1|)

It is computed exactly as a minimum-weight perfect matching on a square
cost matrix whose padding rows cost ``L`` everywhere.  All arithmetic is on
Python ints.
"""

from __future__ import annotations

import itertools
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Mapping, Sequence as Seq, Tuple, Union

from .core import Pool, Sequence, check_compatible, hamming
from .errors import InstanceTooLargeError, InvalidInjectionError, ModeError

BRUTEFORCE_MAX = 8


@dataclass(frozen=True)
class Injection:
    """Map from ``domain`` into ``codomain``.

    ``images[i]`` is the index in ``codomain.members`` of the image of
    ``domain.members[i]``.  Indices rather than sequences keep the map
    well defined for multisets.
    """

    domain: Pool
    codomain: Pool
    images: Tuple[int, ...]

    def __post_init__(self):
        validate_images(self.domain, self.codomain, self.images)

    def pairs(self):
        return [(x, self.codomain.members[j]) for x, j in zip(self.domain.members, self.images)]

    def __call__(self, x: Sequence) -> Sequence:
        i = self.domain.members.index(tuple(x))
        return self.codomain.members[self.images[i]]


@dataclass(frozen=True)
class DistanceResult:
    distance: int
    witness: Injection


def validate_images(x1: Pool, x2: Pool, images: Seq[int]) -> None:
    if len(x1) > len(x2):
        raise InvalidInjectionError(f"no injection from {len(x1)} members into {len(x2)}")
    if len(images) != len(x1):
        raise InvalidInjectionError(f"map has {len(images)} images for {len(x1)} members")
    for j in images:
        if not 0 <= j < len(x2):
            raise InvalidInjectionError(f"image index {j} out of range for pool of size {len(x2)}")
    if len(set(images)) != len(images):
        raise InvalidInjectionError("map is not injective")


def _as_images(x1: Pool, x2: Pool, chi) -> Tuple[int, ...]:
    if isinstance(chi, Injection):
        if chi.domain != x1 or chi.codomain != x2:
            raise InvalidInjectionError("injection was built for different pools")
        return chi.images
    if isinstance(chi, Mapping):
        if x1.multiset:
            raise InvalidInjectionError("sequence-keyed maps are ambiguous for multisets; pass indices")
        index = {m: j for j, m in enumerate(x2.members)}
        images = []
        for x in x1.members:
            if x not in chi:
                raise InvalidInjectionError(f"map is missing member {x}")
            y = tuple(chi[x])
            if y not in index:
                raise InvalidInjectionError(f"image {y} is not in the codomain")
            images.append(index[y])
        return tuple(images)
    return tuple(chi)


def injection_cost(x1: Pool, x2: Pool, chi: Union[Injection, Mapping, Seq[int]]) -> int:
    """Cost of one injection: Hamming terms plus ``L`` per unmatched member."""
    check_compatible(x1, x2)
    images = _as_images(x1, x2, chi)
    validate_images(x1, x2, images)
    total = sum(hamming(x, x2.members[j]) for x, j in zip(x1.members, images))
    return total + x1.L * (len(x2) - len(x1))


def min_cost_assignment(cost: list[list[int]]) -> Tuple[int, list[int]]:
    """Kuhn-Munkres on an ``n x m`` integer matrix with ``n <= m``.

    Returns ``(total, assignment)`` where ``assignment[i]`` is the column
    given to row ``i``.  O(n^2 m), shortest-augmenting-path form with row
    and column potentials.
    """
    n = len(cost)
    if n == 0:
        return 0, []
    m = len(cost[0])
    if n > m:
        raise ValueError("min_cost_assignment needs rows <= columns")
    big = 4 * (n + 1) * (m + 1) * (1 + max(max(abs(c) for c in row) for row in cost))
    u = [0] * (n + 1)
    v = [0] * (m + 1)
    p = [0] * (m + 1)  # p[j]: row (1-based) matched to column j, 0 = free
    way = [0] * (m + 1)
    for i in range(1, n + 1):
        p[0] = i
        j0 = 0
        minv = [big] * (m + 1)
        used = [False] * (m + 1)
        while True:
            used[j0] = True
            i0 = p[j0]
            row = cost[i0 - 1]
            ui0 = u[i0]
            delta = big
            j1 = -1
            for j in range(1, m + 1):
                if not used[j]:
                    cur = row[j - 1] - ui0 - v[j]
                    if cur < minv[j]:
                        minv[j] = cur
                        way[j] = j0
                    if minv[j] < delta:
                        delta = minv[j]
                        j1 = j
            for j in range(m + 1):
                if used[j]:
                    u[p[j]] += delta
                    v[j] -= delta
                else:
                    minv[j] -= delta
            j0 = j1
            if p[j0] == 0:
                break
        while j0:
            j1 = way[j0]
            p[j0] = p[j1]
            j0 = j1
    assignment = [0] * n
    for j in range(1, m + 1):
        if p[j]:
            assignment[p[j] - 1] = j - 1
    total = sum(cost[i][assignment[i]] for i in range(n))
    return total, assignment


def _order(x1: Pool, x2: Pool) -> Tuple[Pool, Pool]:
    return (x1, x2) if len(x1) <= len(x2) else (x2, x1)


def seqsubset_distance(x1: Pool, x2: Pool) -> DistanceResult:
    """Exact sequence-subset distance with a witness injection.

    The witness maps the smaller pool (``x1`` on a size tie) into the larger.
    Among optimal injections the lexicographically smallest image vector is
    returned: each real row ``i`` of ``k`` carries a tie-break penalty
    ``j * n**(k-1-i)``, strictly below the scale factor ``n**k`` applied to
    the Hamming costs, so the optimum of the scaled problem is an optimum of
    the original one.
    """
    check_compatible(x1, x2)
    small, large = _order(x1, x2)
    k, n, L = len(small), len(large), small.L
    if k == 0:
        return DistanceResult(L * n, Injection(small, large, ()))
    scale = n ** k
    weights = [n ** (k - 1 - i) for i in range(k)]
    cost = []
    for i, x in enumerate(small.members):
        w = weights[i]
        cost.append([hamming(x, y) * scale + j * w for j, y in enumerate(large.members)])
    pad = [L * scale] * n
    cost.extend([pad] * (n - k))
    total, assignment = min_cost_assignment(cost)
    images = tuple(assignment[:k])
    distance = total // scale
    return DistanceResult(distance, Injection(small, large, images))


def seqsubset_distance_value(x1: Pool, x2: Pool) -> int:
    return seqsubset_distance(x1, x2).distance


def seqsubset_distance_bruteforce(x1: Pool, x2: Pool) -> DistanceResult:
    """Minimum over every injection, enumerated literally.

    Used as the oracle for :func:`seqsubset_distance`; refuses pools larger
    than ``BRUTEFORCE_MAX``.
    """
    check_compatible(x1, x2)
    small, large = _order(x1, x2)
    if len(large) > BRUTEFORCE_MAX:
        raise InstanceTooLargeError(
            f"brute force limited to pools of size <= {BRUTEFORCE_MAX}, got {len(large)}"
        )
    L = small.L
    table = [[hamming(x, y) for y in large.members] for x in small.members]
    pad = L * (len(large) - len(small))
    best, best_images = None, None
    # permutations() yields image tuples in lexicographic order, so the first
    # minimum found is the lexicographically smallest witness
    for images in itertools.permutations(range(len(large)), len(small)):
        c = sum(row[j] for row, j in zip(table, images))
        if best is None or c < best:
            best, best_images = c, images
    return DistanceResult(best + pad, Injection(small, large, tuple(best_images)))


def fixed_point_witness(x1: Pool, x2: Pool) -> Injection:
    """Optimal injection ``x1 -> x2`` that fixes every common member.

    Solves the disjoint remainders ``x1 \\ x2`` and ``x2 \\ x1`` and extends the
    result by the identity on the intersection.
    """
    check_compatible(x1, x2)
    if x1.multiset:
        raise ModeError("fixed-point witnesses are defined for set-mode pools")
    if len(x1) > len(x2):
        raise InvalidInjectionError("fixed_point_witness needs |x1| <= |x2|")
    a = x1.difference(x2)
    b = x2.difference(x1)
    inner = seqsubset_distance(a, b).witness
    moved = dict(inner.pairs())
    index = {m: j for j, m in enumerate(x2.members)}
    images = tuple(index[moved.get(x, x)] for x in x1.members)
    return Injection(x1, x2, images)


def _pair_distance(args):
    i, j, a, b = args
    return i, j, seqsubset_distance(a, b).distance


def pairwise_distances(pools: Seq[Pool], jobs: int = 1) -> dict:
    """Distances for every unordered pair ``(i, j)``, ``i < j``."""
    tasks = [(i, j, pools[i], pools[j]) for i, j in itertools.combinations(range(len(pools)), 2)]
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            results = list(ex.map(_pair_distance, tasks, chunksize=max(1, len(tasks) // (4 * jobs))))
    else:
        results = [_pair_distance(t) for t in tasks]
    return {(i, j): d for i, j, d in sorted(results)}


def metric_violations(pools: Seq[Pool], trials: int = 200, seed: int = 0) -> list[str]:
    """Spot-check the metric axioms on random triples drawn from ``pools``.

    Pairs small enough for brute force are also cross-checked against it.
    Returns human-readable descriptions of any violation.
    """
    rng = random.Random(seed)
    problems = []
    if not pools:
        return problems
    for _ in range(trials):
        a, b, c = (rng.choice(pools) for _ in range(3))
        ab = seqsubset_distance(a, b).distance
        ba = seqsubset_distance(b, a).distance
        ac = seqsubset_distance(a, c).distance
        bc = seqsubset_distance(b, c).distance
        if ab != ba:
            problems.append(f"asymmetry: d({a},{b})={ab} but d({b},{a})={ba}")
        if (ab == 0) != (a == b):
            problems.append(f"identity: d({a},{b})={ab}")
        if ab > ac + bc:
            problems.append(f"triangle: d({a},{b})={ab} > {ac}+{bc} via {c}")
        if max(len(a), len(b)) <= BRUTEFORCE_MAX and seqsubset_distance_bruteforce(a, b).distance != ab:
            problems.append(f"oracle mismatch on ({a},{b})")
    return problems
