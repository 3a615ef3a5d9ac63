"""Sequences, pools and the plain-text pool format.

A sequence is a tuple of ints in ``range(q)``.  A :class:`Pool` is an
immutable, canonically ordered collection of equal-length sequences; in
multiset mode it may hold repeats.
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Tuple, Union

from .errors import DimensionError, ModeError, ParseError

Sequence = Tuple[int, ...]

MAX_Q = 2 ** 16

_HEADER_RE = re.compile(r"#\s*q\s*=\s*(\d+)\s+L\s*=\s*(\d+)\s*$")


@dataclass(frozen=True)
class AlphabetParams:
    q: int
    L: int

    def __post_init__(self):
        if not 2 <= self.q <= MAX_Q:
            raise DimensionError(f"alphabet size q={self.q} outside [2, {MAX_Q}]")
        if self.L < 1:
            raise DimensionError(f"sequence length L={self.L} must be >= 1")

    @property
    def space_size(self) -> int:
        return self.q ** self.L

    def check(self, seq: Sequence) -> Sequence:
        if len(seq) != self.L:
            raise DimensionError(f"sequence {seq} has length {len(seq)}, expected {self.L}")
        for s in seq:
            if not 0 <= s < self.q:
                raise DimensionError(f"symbol {s} not in [0, {self.q})")
        return seq


def seq(text: str) -> Sequence:
    """Digit string to sequence, for alphabets of size <= 10: ``seq("1010")``."""
    return tuple(int(ch) for ch in text)


def seq_str(s: Sequence) -> str:
    if all(x < 10 for x in s):
        return "".join(str(x) for x in s)
    return " ".join(str(x) for x in s)


def hamming(a: Sequence, b: Sequence) -> int:
    if len(a) != len(b):
        raise DimensionError(f"length mismatch: {len(a)} vs {len(b)}")
    return sum(x != y for x, y in zip(a, b))


@dataclass(frozen=True)
class Pool:
    """Finite set (or multiset) of sequences sharing one ``(q, L)``.

    Members are stored sorted, so equality ignores insertion order and, in
    multiset mode, compares multiplicities.
    """

    params: AlphabetParams
    members: Tuple[Sequence, ...]
    multiset: bool = False
    _index: dict = field(default=None, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        members = tuple(sorted(tuple(int(x) for x in m) for m in self.members))
        for m in members:
            self.params.check(m)
        if not self.multiset:
            for a, b in zip(members, members[1:]):
                if a == b:
                    raise ModeError(f"duplicate sequence {seq_str(a)} in set-mode pool")
        object.__setattr__(self, "members", members)

    @classmethod
    def of(cls, seqs: Iterable, q: int, L: int | None = None, multiset: bool = False) -> "Pool":
        """Build a pool from sequences given as tuples or digit strings.

        With an empty ``seqs`` the length ``L`` must be passed explicitly.
        """
        items = [seq(s) if isinstance(s, str) else tuple(s) for s in seqs]
        if L is None:
            if not items:
                raise DimensionError("cannot infer L from an empty pool")
            L = len(items[0])
        return cls(AlphabetParams(q, L), tuple(items), multiset)

    @property
    def q(self) -> int:
        return self.params.q

    @property
    def L(self) -> int:
        return self.params.L

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self) -> Iterator[Sequence]:
        return iter(self.members)

    def __contains__(self, s) -> bool:
        return tuple(s) in self.counts()

    def counts(self) -> Counter:
        if self._index is None:
            object.__setattr__(self, "_index", Counter(self.members))
        return self._index

    def __str__(self) -> str:
        return "{" + ",".join(seq_str(m) for m in self.members) + "}"

    def with_members(self, members: Iterable[Sequence]) -> "Pool":
        return Pool(self.params, tuple(members), self.multiset)

    def as_multiset(self) -> "Pool":
        return Pool(self.params, self.members, True)

    def deduplicated(self) -> "Pool":
        return Pool(self.params, tuple(set(self.members)), False)

    def union(self, other: "Pool") -> "Pool":
        check_compatible(self, other)
        if self.multiset:
            return self.with_members(self.members + other.members)
        return self.with_members(set(self.members) | set(other.members))

    def difference(self, other: "Pool") -> "Pool":
        return pool_difference(self, other)

    def intersection(self, other: "Pool") -> "Pool":
        check_compatible(self, other)
        if self.multiset:
            raise ModeError("intersection is defined for set-mode pools only")
        return self.with_members(set(self.members) & set(other.members))


def check_compatible(x: Pool, y: Pool) -> None:
    if x.params != y.params:
        raise DimensionError(f"pool parameters differ: {x.params} vs {y.params}")
    if x.multiset != y.multiset:
        raise ModeError("cannot mix set-mode and multiset-mode pools")


def pool_difference(x: Pool, y: Pool) -> Pool:
    check_compatible(x, y)
    if x.multiset:
        raise ModeError("pool difference is only supported for set-mode pools")
    other = set(y.members)
    return x.with_members(m for m in x.members if m not in other)


def _tokens(line: str, q: int | None) -> list[str]:
    parts = line.split()
    # a single multi-character token is read digit by digit ("0011")
    if len(parts) == 1 and len(parts[0]) > 1 and (q is None or q <= 10) and parts[0].isdigit():
        return list(parts[0])
    return parts


def parse_header(line: str):
    m = _HEADER_RE.match(line.strip())
    if m is None:
        return None
    return int(m.group(1)), int(m.group(2))


def parse_sequence_line(line: str, q: int | None, lineno: int | None = None) -> Sequence:
    try:
        symbols = tuple(int(t) for t in _tokens(line, q))
    except ValueError:
        raise ParseError(f"non-integer symbol in {line.strip()!r}", lineno) from None
    for s in symbols:
        if s < 0 or (q is not None and s >= q):
            raise ParseError(f"symbol {s} outside alphabet [0, {q})", lineno)
    return symbols


def parse_pool(
    text: Union[str, bytes],
    q: int | None = None,
    L: int | None = None,
    multiset: bool = False,
) -> Pool:
    """Read the pool text format.

    An optional ``#q=<q> L=<L>`` header fixes the parameters; otherwise ``q``
    must be passed and ``L`` is taken from the first sequence.  A ``#multiset``
    comment switches to multiset mode.
    """
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    members: list[Sequence] = []
    seen: dict[Sequence, int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            header = parse_header(line)
            if header is not None:
                hq, hL = header
                if (q is not None and q != hq) or (L is not None and L != hL):
                    raise ParseError(f"header q={hq} L={hL} conflicts with q={q} L={L}", lineno)
                q, L = hq, hL
            elif line.lstrip("#").strip() == "multiset":
                multiset = True
            continue
        if q is None:
            raise ParseError("alphabet size unknown: no #q= header and no q given", lineno)
        s = parse_sequence_line(line, q, lineno)
        if L is None:
            L = len(s)
        if len(s) != L:
            raise ParseError(f"ragged sequence of length {len(s)}, expected {L}", lineno)
        if not multiset and s in seen:
            raise ParseError(f"duplicate sequence (first seen on line {seen[s]})", lineno)
        seen.setdefault(s, lineno)
        members.append(s)
    if q is None or L is None:
        raise ParseError("empty pool without a #q= L= header")
    return Pool(AlphabetParams(q, L), tuple(members), multiset)


def format_sequence(s: Sequence) -> str:
    return " ".join(str(x) for x in s)


def serialize_pool(pool: Pool, header: bool = True, comments: Iterable[str] = ()) -> str:
    lines = []
    if header:
        lines.append(f"#q={pool.q} L={pool.L}")
    if pool.multiset:
        lines.append("#multiset")
    lines.extend(f"#{c}" for c in comments)
    lines.extend(format_sequence(m) for m in pool.members)
    return "\n".join(lines) + "\n"
