"""Partial sums of kappa, their normalised oscillation, and the Takagi function."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import List, Sequence, Tuple

import numpy as np

from ._io import atomic_write, csv_text
from .kappa import kappa_range
from .spectrum import gamma

MAX_SUM_RANGE = 1 << 24
TAKAGI_TOL = 1e-12
TAKAGI_MAX_TERMS = 64

_U64_MAX = (1 << 64) - 1


@dataclass(frozen=True)
class SumProfile:
    """Prefix sums ``S(N) = kappa(0) + ... + kappa(N)`` for N = 0..N_max."""

    k: int
    gamma: float
    S: np.ndarray = field(repr=False)

    @property
    def N_max(self) -> int:
        return len(self.S) - 1

    def __getitem__(self, N: int) -> int:
        return int(self.S[N])

    def normalized(self, lo: int = 1, hi: int | None = None) -> np.ndarray:
        """``S(N) / N^gamma`` for N in [lo, hi]."""
        if lo < 1:
            raise ValueError("the normalisation is undefined at N = 0")
        hi = self.N_max if hi is None else hi
        N = np.arange(lo, hi + 1, dtype=np.float64)
        return self.S[lo : hi + 1].astype(np.float64) / N**self.gamma

    def csv_rows(self, lo: int = 1, hi: int | None = None) -> List[tuple]:
        hi = self.N_max if hi is None else hi
        norm = self.normalized(lo, hi)
        return [(N, str(int(self.S[N])), float(norm[N - lo])) for N in range(lo, hi + 1)]


def partial_sums(k: int, N_max: int) -> SumProfile:
    if not 1 <= N_max <= MAX_SUM_RANGE:
        raise ValueError(f"N_max must lie in [1, {MAX_SUM_RANGE}], got {N_max}")
    vals = kappa_range(k, N_max + 1).values
    if vals.dtype != object and int(vals.max()) * (N_max + 1) > _U64_MAX:
        vals = vals.astype(object)
    S = np.cumsum(vals)
    S.setflags(write=False)
    return SumProfile(k=k, gamma=gamma(k), S=S)


def oscillation_profile(k: int, m: int, samples: int, sums: SumProfile | None = None) -> Tuple[np.ndarray, np.ndarray]:
    """``g_m(x) = S(floor(x k^m)) / (x k^m)^gamma`` on an even grid of ``[1, k]``."""
    if m < 4:
        raise ValueError(f"level must be >= 4, got {m}")
    if samples < 16:
        raise ValueError(f"need at least 16 samples, got {samples}")
    top = k ** (m + 1)
    if sums is None or sums.k != k or sums.N_max < top:
        sums = partial_sums(k, top)
    x = np.linspace(1.0, float(k), samples)
    t = x * float(k**m)
    idx = np.floor(t).astype(np.int64)
    return x, sums.S[idx].astype(np.float64) / t**sums.gamma


def level_gap(k: int, m: int, samples: int = 1024, sums: SumProfile | None = None) -> float:
    """``max_x |g_m(x) - g_(m+1)(x)|`` on the common grid."""
    top = k ** (m + 2)
    if sums is None or sums.N_max < top:
        sums = partial_sums(k, top)
    _, g = oscillation_profile(k, m, samples, sums)
    _, g_next = oscillation_profile(k, m + 1, samples, sums)
    return float(np.max(np.abs(g - g_next)))


# -- Takagi function ------------------------------------------------------------


@dataclass(frozen=True)
class TakagiSample:
    x: float
    tau: float
    terms: int


def takagi_terms(tol: float, max_terms: int = TAKAGI_MAX_TERMS) -> int:
    """Fewest terms whose geometric tail bound ``2^-n`` is below ``tol`` (capped)."""
    if tol <= 0:
        raise ValueError(f"tol must be positive, got {tol}")
    n = 0
    while 2.0 ** (-n) >= tol and n < max_terms:
        n += 1
    return n


def _dist_to_int(y):
    return np.abs(y - np.round(y))


def takagi(x: float, tol: float = TAKAGI_TOL) -> TakagiSample:
    """``tau(x) = sum_n 2^-n ||2^n x||``, truncated once the tail is below ``tol``."""
    if not 0.0 <= x <= 1.0:
        raise ValueError(f"x must lie in [0, 1], got {x}")
    n_terms = takagi_terms(tol)
    # doubling and dropping the integer part are exact in binary floating point
    y = float(x)
    total = []
    for n in range(n_terms):
        total.append(math.ldexp(abs(y - round(y)), -n))
        y = 2.0 * y
        y -= math.floor(y)
    return TakagiSample(x=float(x), tau=math.fsum(total), terms=n_terms)


def takagi_grid(xs: Sequence[float], tol: float = TAKAGI_TOL) -> np.ndarray:
    xs = np.asarray(xs, dtype=np.float64)
    if xs.size and (xs.min() < 0 or xs.max() > 1):
        raise ValueError("grid points must lie in [0, 1]")
    n_terms = takagi_terms(tol)
    y = xs.copy()
    tau = np.zeros_like(y)
    for n in range(n_terms):
        tau += np.ldexp(_dist_to_int(y), -n)
        y = 2.0 * y
        y -= np.floor(y)
    return tau


# -- export -----------------------------------------------------------------------


def comparison_rows(profile_x, norm_sum, takagi_x, takagi_vals, k: int = 2) -> List[tuple]:
    """Align a profile on ``[1, k]`` with a Takagi grid on ``[0, 1]``; no rescaling of either curve."""
    if not (len(profile_x) == len(norm_sum) == len(takagi_x) == len(takagi_vals)):
        raise ValueError("profile and Takagi grids must have equal length")
    mapped = (np.asarray(profile_x, dtype=np.float64) - 1.0) / (k - 1)
    if not np.allclose(mapped, takagi_x, rtol=0, atol=1e-12):
        raise ValueError("profile grid does not map onto the Takagi grid")
    return [(float(x), float(g), float(t)) for x, g, t in zip(takagi_x, norm_sum, takagi_vals)]


def export_comparison(path, m: int = 15, samples: int = 1024, tol: float = TAKAGI_TOL, sums: SumProfile | None = None):
    """Write ``x,norm_sum,takagi`` for k = 2: ``norm_sum`` is ``g_m(1 + x)``."""
    px, g = oscillation_profile(2, m, samples, sums)
    tx = np.linspace(0.0, 1.0, samples)
    rows = comparison_rows(px, g, tx, takagi_grid(tx, tol))
    return atomic_write(path, csv_text(("x", "norm_sum", "takagi"), rows))
