"""Tables of the continuant sequence kappa and the k = 2 growth statistics.

Above the first ``k**2`` seeds every value follows from two earlier ones:

    kappa(m) = (m % k + 1) * kappa(m // k) + kappa(m // k**2)      (m >= k**2)

which is the digit-peeling recurrence written with ``m = k^2 q + k b + a``.
The seeds are ``kappa(n) = n + 1`` for ``n < k`` and
``kappa(a k + b) = (a + 1)(b + 1) + 1`` for ``1 <= a < k``.

Whole base-k digit-length blocks are filled at once with numpy, in unsigned
64-bit arithmetic while a bound rules out overflow, then in Python integers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import List, Sequence

import numpy as np

from ._limits import check_alloc
from .linrep import DigitWord, eval_rep, kappa_rep

_U64_MAX = (1 << 64) - 1

LIMSUP_K2 = (2 + math.sqrt(2)) / 4
EXPONENT_K2 = math.log2(1 + math.sqrt(2))


def _seed(k: int, m: int) -> int:
    a, b = divmod(m, k)
    return m + 1 if a == 0 else (a + 1) * (b + 1) + 1


@dataclass(frozen=True)
class KappaTable:
    k: int
    N: int
    values: np.ndarray = field(repr=False)

    def __getitem__(self, n):
        return self.values[n]

    def __len__(self) -> int:
        return self.N

    @property
    def is_fixed_width(self) -> bool:
        return self.values.dtype != object

    def tolist(self) -> List[int]:
        return [int(x) for x in self.values.tolist()]


def kappa_range(k: int, N: int, *, bigint: bool = False) -> KappaTable:
    """kappa(0), ..., kappa(N - 1) for base ``k``.

    With ``bigint=True`` the whole table is held in Python integers; otherwise
    fixed-width arithmetic is used until the next block could overflow.
    """
    if not isinstance(k, int) or k < 2:
        raise ValueError(f"base must be an integer >= 2, got {k!r}")
    if N < 1:
        raise ValueError(f"N must be >= 1, got {N}")
    check_alloc(N, 8, "kappa table")

    vals = np.empty(N, dtype=object if bigint else np.uint64)
    k2 = k * k
    for m in range(min(N, k2)):
        vals[m] = _seed(k, m)
    running_max = int(max(vals[: min(N, k2)]))

    lo = k2
    while lo < N:
        hi = min(lo * k, N)
        if vals.dtype != object and (k + 1) * running_max > _U64_MAX:
            vals = vals.astype(object)
        idx = np.arange(lo, hi, dtype=np.uint64)
        if vals.dtype == object:
            digit = (idx % k + 1).astype(object)
            block = digit * vals[idx // k] + vals[idx // k2]
        else:
            block = (idx % np.uint64(k) + np.uint64(1)) * vals[idx // np.uint64(k)] + vals[
                idx // np.uint64(k2)
            ]
        vals[lo:hi] = block
        running_max = max(running_max, int(block.max()))
        lo = hi
    vals.setflags(write=False)
    return KappaTable(k=k, N=N, values=vals)


def kappa(n: int, k: int) -> int:
    """A single value, via the matrix product."""
    return eval_rep(kappa_rep(k), n)


def continuant(digits: DigitWord | Sequence[int]) -> int:
    """Denominator of the continued fraction ``[i_0 + 1, i_1 + 1, ..., i_s + 1]``."""
    if isinstance(digits, DigitWord):
        digits = digits.digits
    q_prev, q = 0, 1  # q_{-1}, q_0 of the empty fraction
    for d in digits:
        q_prev, q = q, (d + 1) * q + q_prev
    return q


def continuant_fraction(digits: DigitWord | Sequence[int]):
    """The convergent ``p/q`` itself, as a :class:`fractions.Fraction`."""
    from fractions import Fraction

    if isinstance(digits, DigitWord):
        digits = digits.digits
    x = Fraction(0)
    for d in reversed(tuple(digits)):
        x = 1 / (d + 1 + x)
    return x


@dataclass(frozen=True)
class GrowthRecord:
    m: int
    argmax: int
    max_value: int
    ratio: float
    exhaustive: bool


@dataclass(frozen=True)
class GrowthReport:
    k: int
    records: tuple

    def record(self, m: int) -> GrowthRecord:
        for r in self.records:
            if r.m == m:
                return r
        raise KeyError(m)

    def to_rows(self):
        return [(r.m, r.argmax, r.max_value, r.ratio, int(r.exhaustive)) for r in self.records]


def growth_report(m_max: int, *, exhaustive_max: int = 24) -> GrowthReport:
    """Maximum of kappa_2 over each dyadic block ``[2^(m-1), 2^m)``, m = 1..m_max.

    Blocks with ``m <= exhaustive_max`` are scanned in full; beyond that the
    maximiser is taken to be the repunit ``2^m - 1`` and only its value is
    computed.  The ratio is ``max / (2^m - 1)^log2(1 + sqrt 2)``.
    """
    if not 2 <= m_max <= 40:
        raise ValueError(f"m_max must lie in [2, 40], got {m_max}")
    if not 0 <= exhaustive_max <= 24:
        raise ValueError(f"exhaustive_max must lie in [0, 24], got {exhaustive_max}")
    scan_to = min(m_max, exhaustive_max)
    table = kappa_range(2, 1 << scan_to).values if scan_to >= 1 else None
    rep = kappa_rep(2)
    records = []
    for m in range(1, m_max + 1):
        lo, hi = 1 << (m - 1), 1 << m
        if m <= scan_to:
            block = table[lo:hi]
            # first occurrence of the maximum
            pos = int(np.argmax(block))
            argmax, value = lo + pos, int(block[pos])
        else:
            argmax, value = hi - 1, eval_rep(rep, hi - 1)
        ratio = value / float(hi - 1) ** EXPONENT_K2
        records.append(GrowthRecord(m, argmax, value, ratio, m <= scan_to))
    return GrowthReport(k=2, records=tuple(records))


def repunit(k: int, m: int) -> int:
    """The integer whose ``m`` base-k digits are all ``k - 1``."""
    return k**m - 1
