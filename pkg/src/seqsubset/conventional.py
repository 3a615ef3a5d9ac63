"""Classical Hamming-metric codes used as ingredients of the constructions."""

from __future__ import annotations

import itertools
import re
import warnings
from dataclasses import dataclass, field
from typing import Iterable, List, Optional

from .core import AlphabetParams, Sequence, hamming, parse_header, parse_sequence_line, seq
from .errors import DimensionError, InstanceTooLargeError, ParseError, UnsupportedError

ENUMERATION_MAX = 2 ** 20
PAIRWISE_MAX = 2 ** 24

_GEN_HEADER_RE = re.compile(r"#\s*q\s*=\s*(\d+)\s+k\s*=\s*(\d+)\s+n\s*=\s*(\d+)\s*$")


@dataclass
class ConventionalCode:
    """Ordered list of distinct length-``n`` codewords over ``range(q)``.

    Order is significant: the constructions index codewords by position.
    ``params.L`` is the block length.
    """

    params: AlphabetParams
    codewords: List[Sequence]
    verified_min_hamming: Optional[int] = None
    trusted_min_hamming: Optional[int] = field(default=None, repr=False)

    def __post_init__(self):
        self.codewords = [self.params.check(tuple(c)) for c in self.codewords]
        if len(set(self.codewords)) != len(self.codewords):
            raise ValueError("conventional code has repeated codewords")

    @classmethod
    def of(cls, words: Iterable, q: int, n: int | None = None) -> "ConventionalCode":
        words = [seq(w) if isinstance(w, str) else tuple(w) for w in words]
        if n is None:
            if not words:
                raise DimensionError("cannot infer block length of an empty code")
            n = len(words[0])
        return cls(AlphabetParams(q, n), words)

    @property
    def q(self) -> int:
        return self.params.q

    @property
    def n(self) -> int:
        return self.params.L

    def __len__(self) -> int:
        return len(self.codewords)

    def __iter__(self):
        return iter(self.codewords)

    def min_distance(self) -> int:
        """Verified distance if available, else a caller-trusted one."""
        if self.verified_min_hamming is not None:
            return self.verified_min_hamming
        if self.trusted_min_hamming is not None:
            return self.trusted_min_hamming
        return min_hamming_distance(self)

    def trust(self, d: int) -> "ConventionalCode":
        """Record a minimum distance that is too expensive to verify."""
        self.trusted_min_hamming = d
        return self


def min_hamming_distance(c: ConventionalCode) -> int:
    if len(c) < 2:
        raise ValueError("minimum distance needs at least two codewords")
    if len(c) ** 2 > PAIRWISE_MAX:
        raise InstanceTooLargeError(f"{len(c)} codewords exceed the pairwise guard")
    d = min(hamming(a, b) for a, b in itertools.combinations(c.codewords, 2))
    c.verified_min_hamming = d
    return d


def min_nonzero_weight(c: ConventionalCode) -> int:
    return min(sum(1 for s in w if s) for w in c.codewords if any(w))


def is_constant_weight(c: ConventionalCode) -> Optional[int]:
    """Common Hamming weight of a binary code, or ``None``."""
    if c.q != 2:
        raise UnsupportedError("constant-weight check is defined for binary codes")
    weights = {sum(w) for w in c.codewords}
    return weights.pop() if len(weights) == 1 else None


def is_prime(q: int) -> bool:
    if q < 2:
        return False
    return all(q % p for p in range(2, int(q ** 0.5) + 1))


def rank_mod_p(G: list, p: int) -> int:
    rows = [list(r) for r in G]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for col in range(ncols):
        pivot = next((r for r in range(rank, len(rows)) if rows[r][col] % p), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        inv = pow(rows[rank][col], -1, p)
        rows[rank] = [(x * inv) % p for x in rows[rank]]
        for r in range(len(rows)):
            if r != rank and rows[r][col] % p:
                f = rows[r][col]
                rows[r] = [(a - f * b) % p for a, b in zip(rows[r], rows[rank])]
        rank += 1
    return rank


def _message_order(k: int, q: int):
    # by weight, then with earlier rows taking precedence: 100, 010, 001, 110, ...
    msgs = itertools.product(range(q), repeat=k)
    return sorted(msgs, key=lambda m: (sum(1 for x in m if x), tuple(-x for x in m)))


def linear_code_from_generator(G, q: int) -> ConventionalCode:
    """All ``q**k`` codewords ``m @ G`` over GF(q), q prime.

    Codewords are listed by message weight, then by message with earlier
    generator rows first, so a binary code lists ``0, g1, g2, ..., g1+g2, ...``.
    """
    if not is_prime(q):
        raise UnsupportedError(f"q={q} is not prime; supply an explicit codeword list instead")
    G = [[int(x) % q for x in row] for row in G]
    k = len(G)
    if k == 0:
        raise DimensionError("generator matrix has no rows")
    n = len(G[0])
    if any(len(row) != n for row in G):
        raise DimensionError("generator matrix rows have unequal length")
    if q ** k > ENUMERATION_MAX:
        raise InstanceTooLargeError(f"q^k = {q ** k} exceeds the enumeration guard {ENUMERATION_MAX}")
    r = rank_mod_p(G, q)
    words = []
    seen = set()
    for m in _message_order(k, q):
        w = tuple(sum(mi * g[j] for mi, g in zip(m, G)) % q for j in range(n))
        if w not in seen:
            seen.add(w)
            words.append(w)
    if r < k:
        warnings.warn(f"generator matrix has rank {r} < {k}; {q ** k - len(words)} duplicates dropped")
    return ConventionalCode(AlphabetParams(q, n), words)


def parse_generator(text) -> tuple[list, int]:
    """Read ``#q=<q> k=<k> n=<n>`` followed by ``k`` rows of ``n`` symbols."""
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    header = None
    rows = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            m = _GEN_HEADER_RE.match(line)
            if m:
                header = tuple(int(g) for g in m.groups())
            continue
        if header is None:
            raise ParseError("generator matrix needs a #q= k= n= header first", lineno)
        row = parse_sequence_line(line, header[0], lineno)
        if len(row) != header[2]:
            raise ParseError(f"row has {len(row)} entries, expected n={header[2]}", lineno)
        rows.append(row)
    if header is None:
        raise ParseError("missing #q= k= n= header")
    if len(rows) != header[1]:
        raise ParseError(f"found {len(rows)} rows, header says k={header[1]}")
    return rows, header[0]


def parse_conventional(text, q: int | None = None) -> ConventionalCode:
    """Read either a generator matrix or an ordered codeword list.

    Codeword lists use the pool header ``#q=<q> L=<n>`` (or ``n=<n>``) and one
    codeword per line; file order is kept.
    """
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    if any(_GEN_HEADER_RE.match(line.strip()) for line in text.splitlines()):
        G, gq = parse_generator(text)
        return linear_code_from_generator(G, gq)
    n = None
    words = []
    trusted = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            h = parse_header(line.replace("n=", "L=")) if "n=" in line else parse_header(line)
            if h:
                q, n = h
            m = re.match(r"#\s*d\s*=\s*(\d+)", line)
            if m:
                trusted = int(m.group(1))
            continue
        if q is None:
            raise ParseError("alphabet size unknown: add a #q= L= header", lineno)
        w = parse_sequence_line(line, q, lineno)
        if n is None:
            n = len(w)
        if len(w) != n:
            raise ParseError(f"ragged codeword of length {len(w)}, expected {n}", lineno)
        words.append(w)
    if q is None or n is None:
        raise ParseError("empty conventional code file")
    code = ConventionalCode(AlphabetParams(q, n), words)
    if trusted is not None:
        code.trust(trusted)
    return code


def serialize_conventional(c: ConventionalCode) -> str:
    lines = [f"#q={c.q} L={c.n}"]
    lines.extend(" ".join(str(x) for x in w) for w in c.codewords)
    return "\n".join(lines) + "\n"
