"""Sequence-subset codes: containers, minimum distance, decoding, rate."""

from __future__ import annotations

import itertools
import math
import random
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, List, Optional, Sequence as Seq, Tuple

from .channel import ErrorPattern, apply_channel, pattern_bound
from .core import AlphabetParams, Pool, format_sequence, parse_header, parse_sequence_line
from .distance import pairwise_distances, seqsubset_distance
from .errors import (
    DimensionError,
    InstanceTooLargeError,
    ModeError,
    ParseError,
    UndefinedMinimumError,
)

COMPLEMENT_MAX = 2 ** 20


@dataclass
class Code:
    """A sequence-subset code: distinct pools over one ``(q, L)``.

    Codeword order is kept so codewords can be referred to as ``X1, X2, ...``.
    """

    params: AlphabetParams
    codewords: Tuple[Pool, ...]
    metadata: List[str] = field(default_factory=list, compare=False)
    _min_distance: Optional[int] = field(default=None, init=False, repr=False, compare=False)

    def __post_init__(self):
        self.codewords = tuple(self.codewords)
        for x in self.codewords:
            if x.params != self.params:
                raise DimensionError(f"codeword {x} does not use {self.params}")
        if len({(x.members, x.multiset) for x in self.codewords}) != len(self.codewords):
            raise ValueError("code contains repeated codewords")
        if len({x.multiset for x in self.codewords}) > 1:
            raise ModeError("code mixes set-mode and multiset-mode codewords")
        if self.constant_size and self.codewords and 2 * self.M > self.params.space_size:
            warnings.warn(
                f"constant codeword size M={self.M} exceeds q^L/2; the complement code is smaller"
            )

    @classmethod
    def of(cls, pools: Iterable[Pool]) -> "Code":
        pools = tuple(pools)
        if not pools:
            raise ValueError("cannot infer parameters of an empty code")
        return cls(pools[0].params, pools)

    @property
    def q(self) -> int:
        return self.params.q

    @property
    def L(self) -> int:
        return self.params.L

    @property
    def M(self) -> int:
        """Maximal codeword size."""
        return max((len(x) for x in self.codewords), default=0)

    @property
    def constant_size(self) -> bool:
        return len({len(x) for x in self.codewords}) <= 1

    @property
    def multiset(self) -> bool:
        return bool(self.codewords) and self.codewords[0].multiset

    def __len__(self) -> int:
        return len(self.codewords)

    def __iter__(self):
        return iter(self.codewords)

    def __getitem__(self, i) -> Pool:
        return self.codewords[i]


def min_distance(c: Code, jobs: int = 1) -> int:
    if len(c) < 2:
        raise UndefinedMinimumError("minimum distance needs at least two codewords")
    if c._min_distance is None:
        c._min_distance = min(pairwise_distances(c.codewords, jobs=jobs).values())
    return c._min_distance


def correction_radius(c: Code) -> int:
    return (min_distance(c) - 1) // 2


@dataclass(frozen=True)
class DecodeOutcome:
    decoded: Pool
    index: int
    distance: int
    ambiguous: bool
    runner_up_distance: Optional[int]


def decode(c: Code, y: Pool, dedup: bool = False) -> DecodeOutcome:
    """Minimum-distance decoding of a received pool.

    Ties go to the codeword with the smallest canonical member list and are
    reported through ``ambiguous``.  A multiset ``y`` is compared as a
    multiset unless ``dedup`` collapses repeats first.
    """
    if not c.codewords:
        raise ValueError("cannot decode with an empty code")
    if y.params != c.params:
        raise DimensionError(f"received pool uses {y.params}, code uses {c.params}")
    if dedup and y.multiset:
        y = y.deduplicated()
    # a set is a multiset without repeats, so mixed modes compare as multisets
    lift = y.multiset and not c.multiset
    if c.multiset and not y.multiset:
        y = y.as_multiset()
    scored = [
        (seqsubset_distance(x.as_multiset() if lift else x, y).distance, x.members, i)
        for i, x in enumerate(c)
    ]
    scored.sort()
    best, _, index = scored[0]
    runner = scored[1][0] if len(scored) > 1 else None
    return DecodeOutcome(c[index], index, best, runner == best, runner)


def _log_binom(n: int, k: int) -> float:
    if k < 0 or k > n:
        return -math.inf
    if min(k, n - k) <= 256:
        return math.log(math.comb(n, k))
    return math.lgamma(n + 1) - math.lgamma(k + 1) - math.lgamma(n - k + 1)


def _logsumexp(values: Seq[float]) -> float:
    top = max(values)
    return top + math.log(sum(math.exp(v - top) for v in values))


def log_space_size(q: int, L: int, M: int, constant_size: bool) -> float:
    """Natural log of the number of candidate codewords."""
    N = q ** L
    if constant_size:
        return _log_binom(N, M)
    return _logsumexp([_log_binom(N, m) for m in range(M + 1)])


def redundancy(c: Code) -> float:
    log_total = log_space_size(c.q, c.L, c.M, c.constant_size)
    return (log_total - math.log(len(c))) / math.log(c.q)


def rate(c: Code) -> float:
    if len(c) <= 1:
        return 0.0
    log_total = log_space_size(c.q, c.L, c.M, c.constant_size)
    return math.log(len(c)) / log_total


def complement_code(c: Code) -> Code:
    """Replace every codeword by its complement in the full sequence space."""
    if c.multiset:
        raise ModeError("complements are defined for set-mode codes")
    if c.params.space_size > COMPLEMENT_MAX:
        raise InstanceTooLargeError(f"q^L = {c.params.space_size} exceeds {COMPLEMENT_MAX}")
    space = list(itertools.product(range(c.q), repeat=c.L))
    out = []
    for x in c:
        members = set(x.members)
        out.append(Pool(c.params, tuple(s for s in space if s not in members)))
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        return Code(c.params, tuple(out))


def support_union(c: Code) -> Pool:
    seen = set()
    for x in c:
        seen.update(x.members)
    return Pool(c.params, tuple(seen))


def parse_code(text, q: int | None = None, L: int | None = None) -> Code:
    """Read the code format: ``#q=<q> L=<L>`` then codeword blocks split by ``---``.

    Other ``#`` comment lines are kept in ``Code.metadata``.
    """
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    blocks: list[list] = [[]]
    metadata = []
    multiset = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line == "---":
            blocks.append([])
            continue
        if line.startswith("#"):
            h = parse_header(line)
            if h:
                q, L = h
            elif line.lstrip("#").strip() == "multiset":
                multiset = True
            else:
                metadata.append(line[1:])
            continue
        if q is None:
            raise ParseError("alphabet size unknown: add a #q= L= header", lineno)
        s = parse_sequence_line(line, q, lineno)
        if L is None:
            L = len(s)
        if len(s) != L:
            raise ParseError(f"ragged sequence of length {len(s)}, expected {L}", lineno)
        if not multiset and s in blocks[-1]:
            raise ParseError("duplicate sequence inside a codeword", lineno)
        blocks[-1].append(s)
    if q is None or L is None:
        raise ParseError("code file needs a #q= L= header")
    params = AlphabetParams(q, L)
    if len(blocks) == 1 and not blocks[0]:
        blocks = []
    return Code(params, tuple(Pool(params, tuple(b), multiset) for b in blocks), metadata)


def serialize_code(c: Code, comments: Iterable[str] = ()) -> str:
    lines = [f"#q={c.q} L={c.L}"]
    if c.multiset:
        lines.append("#multiset")
    lines.extend(f"#{m}" for m in list(c.metadata) + list(comments))
    for i, x in enumerate(c):
        if i:
            lines.append("---")
        lines.extend(format_sequence(m) for m in x.members)
    return "\n".join(lines) + "\n"


@dataclass
class TrialRecord:
    trial: int
    sent: int
    decoded: int
    distance: int
    pattern_bound: int
    ambiguous: bool


@dataclass
class SimulationSummary:
    pattern: ErrorPattern
    pattern_bound: int
    radius: Optional[int]
    records: List[TrialRecord]

    @property
    def trials(self) -> int:
        return len(self.records)

    @property
    def recovered(self) -> int:
        return sum(r.decoded == r.sent and not r.ambiguous for r in self.records)

    @property
    def ambiguous(self) -> int:
        return sum(r.ambiguous for r in self.records)

    @property
    def bound_violations(self) -> int:
        return sum(r.distance > r.pattern_bound for r in self.records)

    @property
    def within_radius(self) -> bool:
        return self.radius is not None and self.pattern_bound <= self.radius


def _one_trial(args):
    code, pattern, seed, t = args
    sent = t % len(code)
    x = code[sent]
    t_out = apply_channel(x, pattern, random.Random(f"{seed}:{t}"))
    out = decode(code, t_out.output)
    d = seqsubset_distance(x, t_out.output).distance
    return TrialRecord(t, sent, out.index, d, pattern_bound(t_out.realized, code.L), out.ambiguous)


def simulate_round_trips(code: Code, pattern, trials: int, seed: int, jobs: int = 1) -> SimulationSummary:
    """Send codewords round-robin through the channel and decode each output.

    Trial ``t`` uses codeword ``t mod |C|`` and its own generator seeded by
    ``(seed, t)``, so results do not depend on ``jobs``.
    """
    tasks = [(code, pattern, seed, t) for t in range(trials)]
    if jobs > 1 and trials > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            records = list(ex.map(_one_trial, tasks))
    else:
        records = [_one_trial(t) for t in tasks]
    radius = correction_radius(code) if len(code) >= 2 else None
    return SimulationSummary(pattern, pattern_bound(pattern, code.L), radius, records)
