"""Characteristic polynomial, dominant eigenvalue and radial growth of K(z).

Setting ``z = 1`` in the polynomial coefficients of the four-term homogeneous
equation gives a cubic in ``lambda``.  Its roots are ``1`` and the two roots of
``lambda^2 - (k(k+1)/2) lambda - k^2``; the positive one, ``alpha_k``, sets the
blow-up ``K(z) ~ C(z) / (1 - z)^gamma`` with ``gamma = log_k(alpha_k)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import List, Optional, Tuple

import mpmath
import numpy as np

from ._limits import ResourceLimitError
from .kappa import kappa_range
from .series import homogeneous_coefficients

#: Truncation rule for evaluating K near the unit circle: N(z) = ceil(TAIL_FACTOR / (1 - |z|)).
TAIL_FACTOR = 40
#: Largest truncation order a radial evaluation may request.
DEFAULT_MAX_ORDER = 1 << 24


def _polymul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def alpha(k: int) -> float:
    """The dominant eigenvalue ``(k(k+1) + k sqrt((k+1)^2 + 16)) / 4`` in double precision."""
    return (k * (k + 1) + k * math.sqrt((k + 1) ** 2 + 16)) / 4


def alpha_mp(k: int, dps: int = 50):
    with mpmath.workdps(dps):
        return (k * (k + 1) + k * mpmath.sqrt((k + 1) ** 2 + 16)) / 4


def gamma(k: int) -> float:
    """Critical exponent ``log_k(alpha_k)``; exactly 2.0 for k = 2."""
    return math.log(alpha(k)) / math.log(k)


@dataclass(frozen=True)
class SpectrumReport:
    k: int
    expanded: Tuple[int, ...]  # chi coefficients, highest degree first
    factored: Tuple[int, ...]  # -k (l - 1)(l^2 - s l - k^2) multiplied out
    display: Tuple[int, ...]  # q(1) [l^3 - (s+1) l^2 - (k^2 - s) l + k^2]
    roots: Tuple[object, ...]  # mpf: 1, alpha, negative root
    alpha: float
    gamma: float

    @property
    def identity_holds(self) -> bool:
        return self.expanded == self.factored == self.display

    def chi(self, lam):
        acc = 0
        for c in self.expanded:
            acc = acc * lam + c
        return acc


def char_poly(k: int, dps: int = 50) -> SpectrumReport:
    if not isinstance(k, int) or k < 2:
        raise ValueError(f"base must be an integer >= 2, got {k!r}")
    s = k * (k + 1) // 2
    # evaluate each homogeneous-equation coefficient at z = 1
    expanded = tuple(sum(c) for c in homogeneous_coefficients(k))
    factored = tuple(-k * c for c in _polymul([1, -1], [1, -s, -k * k]))
    q1 = -k
    display = tuple(q1 * c for c in (1, -(s + 1), -(k * k - s), k * k))
    with mpmath.workdps(dps):
        disc = mpmath.sqrt(mpmath.mpf(s) ** 2 + 4 * k * k)
        roots = (mpmath.mpf(1), (s + disc) / 2, (s - disc) / 2)
    return SpectrumReport(
        k=k, expanded=expanded, factored=factored, display=display, roots=roots, alpha=alpha(k), gamma=gamma(k)
    )


def order_for(z: float, max_order: int = DEFAULT_MAX_ORDER) -> int:
    """Truncation order ``ceil(TAIL_FACTOR / (1 - |z|))``."""
    r = abs(z)
    if not r < 1:
        raise ValueError(f"|z| must be < 1, got {r}")
    N = math.ceil(TAIL_FACTOR / (1 - r))
    if N > max_order:
        raise ResourceLimitError(f"evaluating at |z| = {r} needs order {N}, above the cap {max_order}")
    return N


class KEvaluator:
    """Evaluates truncated K(z), and K(xi z) for roots of unity xi, in double precision.

    The kappa table is grown on demand and shared across calls.  Sums are
    accumulated with :func:`math.fsum`.
    """

    def __init__(self, k: int, max_order: int = DEFAULT_MAX_ORDER):
        self.k = k
        self.max_order = max_order
        self._coeffs = np.empty(0)

    def coefficients(self, N: int) -> np.ndarray:
        if N > self._coeffs.size:
            self._coeffs = kappa_range(self.k, max(N, 2 * self._coeffs.size)).values.astype(np.float64)
        return self._coeffs[:N]

    def _radial_terms(self, r: float, N: int) -> np.ndarray:
        n = np.arange(N, dtype=np.float64)
        return self.coefficients(N) * np.exp(n * math.log(r))

    def value(self, z: float, N: Optional[int] = None) -> float:
        """K(z) for real ``z`` in (-1, 1)."""
        N = N or order_for(z, self.max_order)
        terms = self._radial_terms(abs(z), N)
        if z < 0:
            terms[1::2] *= -1
        return math.fsum(terms)

    def value_at_root(self, z: float, m: int, j: int, N: Optional[int] = None) -> complex:
        """K(xi z) with ``xi = exp(2 pi i j / k^m)`` and real ``0 < z < 1``."""
        N = N or order_for(z, self.max_order)
        terms = self._radial_terms(z, N)
        period = self.k**m
        residues = (np.arange(N, dtype=np.int64) * (j % period)) % period
        phase = 2 * np.pi * residues / period
        return complex(math.fsum(terms * np.cos(phase)), math.fsum(terms * np.sin(phase)))


def radius(j: int) -> float:
    return 1.0 - 2.0 ** (-j)


@dataclass(frozen=True)
class RadialPoint:
    j: int
    z: float
    order: int
    K: float
    C_est: float
    K_k: float  # K(z^k)
    C_est_k: float  # C estimate at z^k

    @property
    def period_ratio(self) -> float:
        """``C_est(z^k) / C_est(z)``; tends to 1 because C(z) = C(z^k)."""
        return self.C_est_k / self.C_est


@dataclass(frozen=True)
class RadialProfile:
    k: int
    alpha: float
    gamma: float
    points: Tuple[RadialPoint, ...]

    def point(self, j: int) -> RadialPoint:
        for p in self.points:
            if p.j == j:
                return p
        raise KeyError(j)

    def scaling_ratio(self, j: int) -> float:
        """``alpha K(z^k) / K(z)``, which tends to 1."""
        p = self.point(j)
        return self.alpha * p.K_k / p.K

    def csv_rows(self) -> List[tuple]:
        return [(p.j, p.z, p.order, p.K, p.C_est) for p in self.points]


def c_estimate(k: int, z: float, K_value: float) -> float:
    return K_value * (1 - z) ** gamma(k)


def radial_profile(
    k: int, j_max: int, j_min: int = 1, *, max_order: int = DEFAULT_MAX_ORDER, evaluator: Optional[KEvaluator] = None
) -> RadialProfile:
    """K and ``C_est = K(z)(1 - z)^gamma`` on ``z_j = 1 - 2^-j``, j = j_min..j_max."""
    if not 2 <= j_max <= 18:
        raise ValueError(f"j_max must lie in [2, 18], got {j_max}")
    if not 1 <= j_min <= j_max:
        raise ValueError(f"j_min must lie in [1, j_max], got {j_min}")
    ev = evaluator or KEvaluator(k, max_order)
    g = gamma(k)
    # warm the coefficient cache with the largest order in one go
    ev.coefficients(order_for(radius(j_max), max_order))
    points = []
    for j in range(j_min, j_max + 1):
        z = radius(j)
        N = order_for(z, max_order)
        K = ev.value(z, N)
        zk = z**k
        K_k = ev.value(zk)
        points.append(RadialPoint(j, z, N, K, K * (1 - z) ** g, K_k, K_k * (1 - zk) ** g))
    return RadialProfile(k=k, alpha=alpha(k), gamma=g, points=tuple(points))


def check_scaling(k: int, m: int, j: int) -> float:
    """``|(1 - z^(k^m))^gamma / ((1 - z)^gamma alpha^m) - 1|`` at ``z = 1 - 2^-j``."""
    if m not in (1, 2, 3):
        raise ValueError(f"m must be 1, 2 or 3, got {m}")
    if not 1 <= j <= 16:
        raise ValueError(f"j must lie in [1, 16], got {j}")
    log_z = math.log1p(-(2.0 ** (-j)))
    one_minus_zkm = -math.expm1(k**m * log_z)
    one_minus_z = 2.0 ** (-j)
    g = gamma(k)
    return abs((one_minus_zkm / one_minus_z) ** g / alpha(k) ** m - 1)
