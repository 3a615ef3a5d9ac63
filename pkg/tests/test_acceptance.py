"""End-to-end acceptance checks, one per criterion.

Each check returns ``(ok, detail)``.  Running this file directly prints one
PASS/FAIL line per criterion; under pytest the same lines appear in the
terminal summary.
"""

import itertools
import random
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from helpers import fold_pair, inner_53, outer_83, random_instance, random_pool, small_code  # noqa: E402

from seqsubset import bounds  # noqa: E402
from seqsubset.channel import ErrorPattern, apply_channel, pattern_bound  # noqa: E402
from seqsubset.codebook import (  # noqa: E402
    Code, complement_code, correction_radius, decode, min_distance, simulate_round_trips,
)
from seqsubset.constructions import (  # noqa: E402
    construct1, construct2, construct3, construct4, construct4_prime,
)
from seqsubset.conventional import ConventionalCode  # noqa: E402
from seqsubset.core import Pool, pool_difference  # noqa: E402
from seqsubset.distance import (  # noqa: E402
    injection_cost, pairwise_distances, seqsubset_distance, seqsubset_distance_bruteforce,
)
from seqsubset.errors import InfeasiblePatternError, NotApplicableError  # noqa: E402


def d(a, b):
    return seqsubset_distance(a, b).distance


def criterion_1():
    got = {
        "two pools of 3 and 4": d(Pool.of(["1010", "0010", "1101"], 2),
                                  Pool.of(["1101", "0011", "1011", "1100"], 2)),
        "channel output": d(Pool.of(["0011", "1010"], 2), Pool.of(["0111", "1010", "1100"], 2)),
        "pattern bound": pattern_bound(ErrorPattern(1, 0, 1), 4),
        "multiset": d(Pool.of(["0101", "0101", "1011"], 2, multiset=True),
                      Pool.of(["0111", "1101", "1001", "1001"], 2, multiset=True)),
    }
    code = small_code()
    pairs = pairwise_distances(code.codewords)
    got["pairs"] = (pairs[0, 1], pairs[0, 2], pairs[1, 2])
    got["code"] = min_distance(code)
    want = {"two pools of 3 and 4": 6, "channel output": 5, "pattern bound": 5,
            "multiset": 7, "pairs": (6, 6, 4), "code": 4}
    return got == want, str(got)


def criterion_2():
    code = small_code()
    a = decode(code, Pool.of(["01101", "10001"], 2))
    b = decode(code, Pool.of(["01101"], 2))
    ok = (a.index, a.distance, a.ambiguous) == (0, 1, False)
    ok &= (b.index, b.distance, b.runner_up_distance, b.ambiguous) == (0, 6, 7, False)
    return ok, f"X{a.index + 1}@{a.distance}; X{b.index + 1}@{b.distance} runner-up {b.runner_up_distance}"


def criterion_3():
    rng = random.Random(3)
    mismatches = 0
    for multiset, count in ((False, 1000), (True, 300)):
        for _ in range(count):
            x1, x2 = random_instance(rng, max_q=4, max_L=6, max_size=5, multiset=multiset)
            fast = seqsubset_distance(x1, x2)
            slow = seqsubset_distance_bruteforce(x1, x2)
            if fast.distance != slow.distance or injection_cost(*_ordered(x1, x2), fast.witness) != fast.distance:
                mismatches += 1
    return mismatches == 0, f"{mismatches} mismatches over 1000 set + 300 multiset instances"


def _ordered(x1, x2):
    return (x1, x2) if len(x1) <= len(x2) else (x2, x1)


def criterion_4():
    rng = random.Random(4)
    bad = 0
    for i in range(10_000):
        x, y, z = random_instance(rng, max_q=4, max_L=6, max_size=6, count=3, multiset=i % 5 == 0)
        xy, yx, xz, yz = d(x, y), d(y, x), d(x, z), d(y, z)
        bad += xy != yx or (xy == 0) != (x == y) or xy > xz + yz or xy < 0
    for _ in range(2_000):
        x1, x2 = random_instance(rng, max_q=4, max_L=6, max_size=6)
        bad += d(x1, x2) != d(pool_difference(x1, x2), pool_difference(x2, x1))
        if len(x2) > len(x1):
            kept = rng.sample(x2.members, rng.randint(len(x1), len(x2)))
            bad += d(x1, x2.with_members(kept)) > d(x1, x2)
    return bad == 0, f"{bad} violations over 10000 triples and 2000 pairs"


def criterion_5():
    big, cert_big = construct1(16, 4, 16)
    dist_big = set(pairwise_distances(big.codewords).values())
    small, cert_small = construct1(4, 2, 4)
    cap = bounds.special_case_bound(4, 2, 4)
    ok = len(big) == 8 and dist_big == {64} and cert_big.verified
    ok &= len(small) == 2 and min_distance(small) == 8 and cap == len(small) and cert_small.verified
    return ok, f"N={len(big)} distances={sorted(dist_big)}; N={len(small)} d={min_distance(small)} cap={cap}"


def example_codes():
    c4 = construct2(inner_53(), outer_83())
    c2 = ConventionalCode.of(["0000", "0101", "1010", "1111"], 2, 4)
    labels = {
        (0, 0): "00000", (1, 0): "01001", (2, 0): "10010", (3, 0): "11011",
        (0, 1): "00111", (1, 1): "01110", (2, 1): "10101", (3, 1): "11100",
    }
    imap = {k: tuple(int(ch) for ch in v) for k, v in labels.items()}
    c5 = construct3(inner_53(), c2, index_map=imap)
    s, u = fold_pair()
    c8 = construct4(s, u)
    c8p = construct4_prime(s, u, 2)
    return {"c2": c4, "c3": c5, "c4": c8, "c4p": c8p}


def criterion_6():
    codes = example_codes()
    (k2, cert2), (k3, cert3) = codes["c2"], codes["c3"]
    xw = Pool.of(["00000", "00111", "11011", "10101"], 2)
    xw2 = Pool.of(["00000", "10010", "01001", "11011", "10101", "01110"], 2)
    pair2 = d(xw, xw2)
    pair3 = d(k3[0], k3[1])
    m2, m3 = min_distance(k2), min_distance(k3)
    ok = pair2 == 12 and xw in k2.codewords and xw2 in k2.codewords and m2 >= 4 == cert2.claimed_min_distance
    ok &= pair3 == 6 and m3 >= 4 == cert3.claimed_min_distance
    return ok, f"pair {pair2}, d={m2} claim {cert2.claimed_min_distance}; pair {pair3}, d={m3} claim {cert3.claimed_min_distance}"


def criterion_7():
    codes = example_codes()
    (k4, cert4), (k4p, cert4p) = codes["c4"], codes["c4p"]
    ok = min_distance(k4) == 5 == cert4.claimed_min_distance and len(k4) == 3
    ok &= min_distance(k4p) == 5 == cert4p.claimed_min_distance and len(k4p) == 9
    return ok, f"d={min_distance(k4)} over {len(k4)}; d={min_distance(k4p)} over {len(k4p)}"


def admissible_patterns(code):
    radius = correction_radius(code)
    L, M = code.L, code.M
    for n_I, n_D in itertools.product(range(radius // L + 1), repeat=2):
        for n_S in range(radius + 1):
            p = ErrorPattern(n_I, n_D, n_S)
            if pattern_bound(p, L) <= radius and n_D <= M and n_S <= L * (M - n_D):
                yield p


def criterion_8():
    details, ok = [], True
    for name, code in (("small", small_code()), ("c1", construct1(4, 2, 4)[0])):
        patterns = list(admissible_patterns(code))
        for p in patterns:
            s = simulate_round_trips(code, p, 100, seed=8)
            ok &= s.recovered == 100 and s.ambiguous == 0 and s.bound_violations == 0
        kinds = {(p.n_I > 0, p.n_D > 0, p.n_S > 0) for p in patterns}
        details.append(f"{name}: {len(patterns)} patterns")
        if name == "c1":
            ok &= {(False, False, True), (False, True, False), (True, False, False)} <= kinds
    rng = random.Random(88)
    violations = transcripts = 0
    while transcripts < 1000:
        q, L, size = rng.choice((2, 4)), rng.randint(4, 8), rng.randint(2, 10)
        x = random_pool(rng, q, L, size)
        n_D = rng.randint(0, size)
        p = ErrorPattern(rng.randint(0, 3), n_D, rng.randint(0, L * (size - n_D)))
        try:
            t = apply_channel(x, p, rng)
        except InfeasiblePatternError:
            continue
        transcripts += 1
        violations += d(t.input, t.output) > pattern_bound(t.realized, L)
    ok &= violations == 0
    details.append(f"{violations} bound violations in 1000 transcripts")
    return ok, "; ".join(details)


def criterion_9():
    grid_ok = all(
        bounds.plotkin_like_bound(q, L, M, L * M) == q
        for q in range(2, 9) for L in range(1, 6) for M in range(1, 9)
    )
    singleton = bounds.singleton_like_bound(2, 4, 3, 7)
    reduces = all(
        bounds.singleton_like_bound(q, L, M0, L * M0) == bounds.special_case_bound(q, L, M0)
        for q in range(2, 9) for L in range(1, 5) for M0 in range(1, 6)
    )
    codes = [construct1(16, 4, 16)[0], construct1(4, 2, 4)[0]] + [c for c, _ in example_codes().values()]
    contradictions = checked = 0
    for code in codes:
        try:
            reports = bounds.check_code_against_bounds(code)
        except NotApplicableError:
            continue
        checked += 1
        contradictions += sum(r.holds is False for r in reports)
    ok = grid_ok and singleton == 12 and reduces and contradictions == 0
    return ok, (f"plotkin grid {grid_ok}, singleton(2,4,3,7)={singleton}, reduction {reduces}, "
                f"{contradictions} contradictions over {checked} constant-size codes")


def criterion_10():
    rng = random.Random(10)
    codes = [small_code()]
    while len(codes) < 4:
        L = rng.randint(2, 4)
        M = rng.randint(1, 2 ** L - 1)
        pools = {random_pool(rng, 2, L, M) for _ in range(rng.randint(2, 4))}
        if len(pools) >= 2:
            codes.append(Code.of(sorted(pools, key=lambda p: p.members)))
    pairs = [(min_distance(c), min_distance(complement_code(c))) for c in codes]
    return all(a == b for a, b in pairs), str(pairs)


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
            criterion_6, criterion_7, criterion_8, criterion_9, criterion_10]


def run(check):
    n = check.__name__.split("_")[1]
    ok, detail = check()
    return ok, f"criterion {n:>2} {'PASS' if ok else 'FAIL'}  {detail}"


@pytest.mark.parametrize("check", CRITERIA, ids=lambda c: c.__name__)
def test_criterion(check):
    from conftest import ACCEPTANCE_LINES

    ok, line = run(check)
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line


if __name__ == "__main__":
    results = [run(c) for c in CRITERIA]
    for _, line in results:
        print(line)
    sys.exit(0 if all(ok for ok, _ in results) else 1)
