"""Pool-level storage channel: sequence insertions, sequence deletions and
symbol substitutions.

The sampling policy (uniform deletions, capped uniform spread of
substitutions, uniform fresh insertions) is a simulation convenience; only
the error counts matter to the distance bound.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Iterable, Tuple

from .core import Pool, Sequence, hamming, seq
from .errors import InfeasiblePatternError, ModeError

MAX_RETRIES = 100
DEFAULT_SEED = 0xD4A5704E


@dataclass(frozen=True)
class ErrorPattern:
    n_I: int
    n_D: int
    n_S: int

    def __post_init__(self):
        if min(self.n_I, self.n_D, self.n_S) < 0:
            raise ValueError(f"error counts must be nonnegative, got {tuple(self)}")

    def __iter__(self):
        return iter((self.n_I, self.n_D, self.n_S))

    @classmethod
    def parse(cls, text: str) -> "ErrorPattern":
        parts = [int(t) for t in text.replace(",", " ").split()]
        if len(parts) != 3:
            raise ValueError(f"pattern needs three counts nI,nD,nS: {text!r}")
        return cls(*parts)

    def __str__(self):
        return f"{self.n_I} {self.n_D} {self.n_S}"


def pattern_bound(p: ErrorPattern, L: int) -> int:
    """Largest distance a pattern can put between input and output."""
    return p.n_S + L * max(p.n_I, p.n_D)


def normalize_pattern(p: ErrorPattern, L: int) -> ErrorPattern:
    """Pair up insertions with deletions and count each pair as ``L`` substitutions."""
    k = min(p.n_I, p.n_D)
    return ErrorPattern(p.n_I - k, p.n_D - k, p.n_S + k * L)


@dataclass(frozen=True)
class ChannelTranscript:
    input: Pool
    output: Pool
    realized: ErrorPattern
    deleted: Pool
    inserted: Pool
    substitution_map: Tuple[Tuple[Sequence, Sequence], ...]

    def reconstruct(self) -> Pool:
        """Output rebuilt from the recorded events."""
        touched = set(self.deleted.members) | {a for a, _ in self.substitution_map}
        kept = [x for x in self.input.members if x not in touched]
        new = kept + list(self.inserted.members) + [b for _, b in self.substitution_map]
        return self.input.with_members(new)

    def check(self) -> None:
        assert self.reconstruct() == self.output, "transcript does not reproduce its output"
        assert self.realized.n_S == sum(hamming(a, b) for a, b in self.substitution_map)
        assert self.realized.n_D == len(self.deleted)
        assert self.realized.n_I == len(self.inserted)


def transcript_from_events(
    x: Pool,
    deleted: Iterable = (),
    substitutions: Iterable = (),
    inserted: Iterable = (),
) -> ChannelTranscript:
    """Build a transcript from explicitly chosen events.

    ``substitutions`` holds ``(original, corrupted)`` pairs; sequences may be
    tuples or digit strings.
    """
    conv = lambda s: seq(s) if isinstance(s, str) else tuple(s)  # noqa: E731
    deleted = [conv(s) for s in deleted]
    subs = tuple((conv(a), conv(b)) for a, b in substitutions)
    inserted = [conv(s) for s in inserted]
    for s in deleted + [a for a, _ in subs]:
        if s not in x:
            raise InfeasiblePatternError(f"{s} is not an input member")
    if len(set(deleted) | {a for a, _ in subs}) != len(deleted) + len(subs):
        raise InfeasiblePatternError("each input member can be deleted or corrupted at most once")
    d = x.with_members(deleted)
    ins = x.with_members(inserted)
    realized = ErrorPattern(len(inserted), len(deleted), sum(hamming(a, b) for a, b in subs))
    t = ChannelTranscript(x, x.with_members([]), realized, d, ins, subs)
    try:
        output = t.reconstruct()
    except ModeError as exc:
        raise InfeasiblePatternError(f"events collide in the output: {exc}") from None
    return ChannelTranscript(x, output, realized, d, ins, subs)


def _spread(rng: random.Random, n_S: int, slots: int, cap: int) -> list[int]:
    counts = [0] * slots
    open_slots = list(range(slots))
    for _ in range(n_S):
        i = rng.choice(open_slots)
        counts[i] += 1
        if counts[i] == cap:
            open_slots.remove(i)
    return counts


def _corrupt(rng: random.Random, x: Sequence, k: int, q: int) -> Sequence:
    y = list(x)
    for pos in rng.sample(range(len(x)), k):
        new = rng.randrange(q - 1)
        y[pos] = new if new < x[pos] else new + 1
    return tuple(y)


def _fresh(rng: random.Random, q: int, L: int, taken: set, count: int) -> list[Sequence]:
    space = q ** L
    if space - len(taken) < count:
        raise InfeasiblePatternError(
            f"cannot insert {count} fresh sequences: only {space - len(taken)} of {space} unused"
        )
    out: list[Sequence] = []
    if space <= 4 * (len(taken) + count):
        free = [s for s in itertools.product(range(q), repeat=L) if s not in taken]
        return rng.sample(free, count)
    while len(out) < count:
        s = tuple(rng.randrange(q) for _ in range(L))
        if s not in taken:
            taken.add(s)
            out.append(s)
    return out


def apply_channel(x: Pool, p: ErrorPattern, seed=DEFAULT_SEED) -> ChannelTranscript:
    """Pass ``x`` through the channel with exactly the error pattern ``p``.

    ``seed`` is an int or a ``random.Random``.  Deletions come first, then
    substitutions on survivors (at most ``L`` per sequence, each corrupted
    copy distinct from every input and output member), then insertions of
    sequences absent from the output.
    """
    if x.multiset:
        raise ModeError("the channel simulator works on set-mode pools")
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    q, L = x.q, x.L
    if p.n_D > len(x):
        raise InfeasiblePatternError(f"cannot delete {p.n_D} of {len(x)} sequences")
    members = list(x.members)
    deleted = rng.sample(members, p.n_D)
    gone = set(deleted)
    survivors = [m for m in members if m not in gone]
    if p.n_S > L * len(survivors):
        raise InfeasiblePatternError(
            f"{p.n_S} substitutions exceed capacity L*survivors = {L * len(survivors)}"
        )
    counts = _spread(rng, p.n_S, len(survivors), L) if p.n_S else [0] * len(survivors)
    forbidden = set(members)
    subs = []
    for s, k in zip(survivors, counts):
        if not k:
            continue
        for _ in range(MAX_RETRIES):
            y = _corrupt(rng, s, k, q)
            if y not in forbidden:
                break
        else:
            raise InfeasiblePatternError(
                f"substitution on {s} kept colliding with existing members after {MAX_RETRIES} tries"
            )
        forbidden.add(y)
        subs.append((s, y))
    corrupted = {a for a, _ in subs}
    output = [m for m in survivors if m not in corrupted] + [b for _, b in subs]
    inserted = _fresh(rng, q, L, set(output), p.n_I)
    output += inserted
    return ChannelTranscript(
        input=x,
        output=x.with_members(output),
        realized=ErrorPattern(p.n_I, p.n_D, p.n_S),
        deleted=x.with_members(deleted),
        inserted=x.with_members(inserted),
        substitution_map=tuple(sorted(subs)),
    )
