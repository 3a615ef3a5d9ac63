"""Upper bounds on the size of constant-codeword-size codes.

Code-size caps are computed with ints and :class:`fractions.Fraction` only;
redundancy and rate bounds are reals evaluated in the log domain.

Notation shared by every function: ``q`` alphabet size, ``L`` sequence
length, ``M`` codeword size, ``d`` minimum distance, ``M0 = ceil(d/L)`` and
``r = 1 - 1/q``.  The comparison ``r*L*M < d`` is evaluated as
``(q-1)*L*M < q*d``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Union

from .errors import ContradictionError, NotApplicableError

REDUNDANCY_TOL = 1e-9


def integer_root(M: int, L: int) -> Optional[int]:
    """``m`` with ``m**L == M``, or ``None``."""
    if M < 0 or L < 1:
        raise ValueError("integer_root needs M >= 0 and L >= 1")
    lo, hi = 0, 1
    while hi ** L < M:
        hi *= 2
    while lo < hi:
        mid = (lo + hi) // 2
        if mid ** L < M:
            lo = mid + 1
        else:
            hi = mid
    return lo if lo ** L == M else None


def _ceil_div(a: int, b: int) -> int:
    return -(-a // b)


def _check_params(q, L, M=None, d=None):
    if q < 2 or L < 1:
        raise ValueError(f"need q >= 2 and L >= 1, got q={q}, L={L}")
    if M is not None and M < 1:
        raise ValueError(f"codeword size must be >= 1, got M={M}")
    if d is not None and d < 1:
        raise ValueError(f"distance must be >= 1, got d={d}")


def plotkin_margin_positive(q: int, L: int, M: int, d: int) -> bool:
    """``r*L*M < d``."""
    return (q - 1) * L * M < q * d


def special_case_bound(q: int, L: int, M: int) -> int:
    """``floor(q * M**(-1/L))`` as the largest ``N`` with ``N**L * M <= q**L``.

    Caps codes with ``d = L*M``.
    """
    _check_params(q, L, M)
    target = q ** L
    lo, hi = 0, q
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if mid ** L * M <= target:
            lo = mid
        else:
            hi = mid - 1
    return lo


def plotkin_like_bound(q: int, L: int, M: int, d: int) -> int:
    """``floor(d / (d - r*L*M))``, valid when ``r*L*M < d``."""
    _check_params(q, L, M, d)
    if not plotkin_margin_positive(q, L, M, d):
        raise NotApplicableError(f"r*L*M = {(q - 1) * L * M}/{q} is not below d = {d}")
    return (q * d) // (q * d - (q - 1) * L * M)


def recursive_bound_step(q: int, L: int, M: int, K: int, d: int, inner: int) -> int:
    """``floor(K/M * inner)`` where ``inner`` caps codes with size ``M-1`` and union ``K-1``."""
    _check_params(q, L, M, d)
    if d > L * M:
        raise NotApplicableError(f"d = {d} exceeds L*M = {L * M}")
    if K > q ** L:
        raise NotApplicableError(f"K = {K} exceeds q^L = {q ** L}")
    if K < 0 or inner < 0:
        raise ValueError("K and inner must be nonnegative")
    return (K * inner) // M


def seed_value(q: int, L: int, d: int) -> Fraction:
    """Cap on codes of size ``M0 = ceil(d/L)``: the special-case value when
    ``d = L*M0``, else the unfloored Plotkin ratio ``d/(d - r*L*M0)``."""
    _check_params(q, L, None, d)
    M0 = _ceil_div(d, L)
    if d == L * M0:
        return Fraction(special_case_bound(q, L, M0))
    if not plotkin_margin_positive(q, L, M0, d):
        raise NotApplicableError(f"r*L*M0 = {(q - 1) * L * M0}/{q} is not below d = {d} (M0 = {M0})")
    return Fraction(q * d, q * d - (q - 1) * L * M0)


def singleton_like_bound(q: int, L: int, M: int, d: int, K: Optional[int] = None) -> int:
    """Nested-floor chain from ``M0`` up to ``M`` seeded with :func:`seed_value`.

    With ``K`` given, bounds codes whose codewords together use at most ``K``
    distinct sequences (the chain of recursive steps); ``K`` defaults to
    ``q**L``.
    """
    _check_params(q, L, M, d)
    M0 = _ceil_div(d, L)
    if M < M0:
        raise NotApplicableError(f"M = {M} is below M0 = ceil(d/L) = {M0}")
    if K is None:
        K = q ** L
    if K > q ** L:
        raise NotApplicableError(f"K = {K} exceeds q^L = {q ** L}")
    value = seed_value(q, L, d)
    # innermost factor (K-M+M0+1)/(M0+1), outermost K/M
    for k in range(M0 + 1, M + 1):
        value = Fraction(math.floor(Fraction(K - M + k, k) * value))
    return math.floor(value)


def _log_binom(n: int, k: int) -> float:
    if k < 0 or k > n:
        raise ValueError(f"binomial C({n}, {k}) is zero")
    if min(k, n - k) <= 256:
        return math.log(math.comb(n, k))
    return math.lgamma(n + 1) - math.lgamma(k + 1) - math.lgamma(n - k + 1)


def _log_fraction(x: Fraction) -> float:
    return math.log(x.numerator) - math.log(x.denominator)


def rate_upper_bound(q: int, L: int, M: int, d: int) -> float:
    """``f / C(q**L - M + M0, M0)``: cap on ``|C| / C(q**L, M)``."""
    _check_params(q, L, M, d)
    M0 = _ceil_div(d, L)
    if M < M0:
        raise NotApplicableError(f"M = {M} is below M0 = {M0}")
    f = seed_value(q, L, d)
    return math.exp(_log_fraction(f) - _log_binom(q ** L - M + M0, M0))


@dataclass
class BoundReport:
    name: str
    q: int
    L: int
    M: int
    d: int
    applicable: bool
    reason: str = ""
    value: Union[int, float, None] = None
    K: Optional[int] = None
    code_size: Optional[int] = None
    holds: Optional[bool] = None
    extra: dict = field(default_factory=dict)

    @property
    def M0(self) -> int:
        return _ceil_div(self.d, self.L)

    @property
    def r(self) -> Fraction:
        return 1 - Fraction(1, self.q)


def _report(name, fn, q, L, M, d, K=None, **kw) -> BoundReport:
    try:
        value = fn()
    except NotApplicableError as exc:
        return BoundReport(name, q, L, M, d, False, str(exc), K=K, **kw)
    return BoundReport(name, q, L, M, d, True, "", value, K=K, **kw)


def size_bounds(q: int, L: int, M: int, d: int, K: Optional[int] = None) -> List[BoundReport]:
    """Every code-size bound at ``(q, L, M, d)``, applicable or not."""

    def special():
        if d != L * M:
            raise NotApplicableError(f"d = {d} differs from L*M = {L * M}")
        return special_case_bound(q, L, M)

    reports = [
        _report("special", special, q, L, M, d),
        _report("plotkin", lambda: plotkin_like_bound(q, L, M, d), q, L, M, d),
        _report("singleton", lambda: singleton_like_bound(q, L, M, d), q, L, M, d),
    ]
    if K is not None:
        reports.append(
            _report("recursive", lambda: singleton_like_bound(q, L, M, d, K=K), q, L, M, d, K=K)
        )
    return reports


def redundancy_lower_bounds(q: int, L: int, M: int, d: int) -> List[BoundReport]:
    """Lower bounds on redundancy (base ``q``) implied by each size bound."""
    _check_params(q, L, M, d)
    space = q ** L
    lq = math.log(q)
    if M >= space:
        reason = f"M = {M} leaves a single possible codeword (q^L = {space})"
        return [BoundReport(n, q, L, M, d, False, reason) for n in ("special", "plotkin", "singleton")]
    log_all = _log_binom(space, M)

    def special():
        if d != L * M:
            raise NotApplicableError(f"d = {d} differs from L*M = {L * M}")
        return (log_all + math.log(M) / L) / lq - 1

    def plotkin():
        if not plotkin_margin_positive(q, L, M, d):
            raise NotApplicableError(f"r*L*M is not below d = {d}")
        margin = Fraction(q * d - (q - 1) * L * M, q * d)
        return (log_all + _log_fraction(margin)) / lq

    def singleton():
        M0 = _ceil_div(d, L)
        if M < M0:
            raise NotApplicableError(f"M = {M} is below M0 = {M0}")
        f = seed_value(q, L, d)
        return (_log_binom(space - M + M0, M0) - _log_fraction(f)) / lq

    return [
        _report("special", special, q, L, M, d),
        _report("plotkin", plotkin, q, L, M, d),
        _report("singleton", singleton, q, L, M, d),
    ]


def check_code_against_bounds(code, strict: bool = False) -> List[BoundReport]:
    """Evaluate every applicable bound at the code's own parameters.

    Size bounds must satisfy ``|C| <= value``; redundancy bounds must satisfy
    ``redundancy(C) >= value`` up to ``REDUNDANCY_TOL``.  The recursive chain is
    evaluated at ``K = |union of codewords|``.  A failed check marks
    ``holds=False``; with ``strict`` it raises :class:`ContradictionError`.
    """
    from .codebook import min_distance, redundancy, support_union

    if not code.constant_size:
        raise NotApplicableError("bounds are stated for constant-codeword-size codes")
    q, L, M, N = code.q, code.L, code.M, len(code)
    d = min_distance(code)
    K = len(support_union(code))
    reports = size_bounds(q, L, M, d, K=K)
    for rep in reports:
        rep.code_size = N
        if rep.applicable:
            rep.holds = N <= rep.value
    actual = redundancy(code)
    for rep in redundancy_lower_bounds(q, L, M, d):
        rep.name = f"redundancy-{rep.name}"
        rep.code_size = N
        rep.extra["actual"] = actual
        if rep.applicable:
            rep.holds = actual >= rep.value - REDUNDANCY_TOL
        reports.append(rep)
    bad = [r for r in reports if r.holds is False]
    if strict and bad:
        raise ContradictionError("; ".join(f"{r.name}: |C|={N}, bound={r.value}" for r in bad))
    return reports
