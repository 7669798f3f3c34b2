"""The oscillation factor Omega on roots of unity of order k^m.

Near ``xi`` the series behaves like ``K(xi z) ~ Omega(xi) C(z) / (1 - z)^gamma``
with ``Omega(1) = 1`` and

    Omega(xi) = P(xi) Omega(xi^k) / alpha + Q(xi) Omega(xi^(k^2)) / alpha^2

where ``P = sum_{a<k} (a+1) z^a`` and ``Q = sum_{a<k^2} z^a``.  Multiplying by
``xi - 1`` gives the cleared form checked by :func:`check_omega_fe`.  Its first
weight is ``(z - 1) P(z) = k z^k - sum_{a<k} z^a``.  The variant
``(k+2) z^k + sum z^a`` does not satisfy that identity and is kept only so it
can be shown to fail.

Roots are addressed by exact index pairs ``(m, j)`` meaning
``exp(2 pi i j / k^m)``; powers are reduced on the indices, never on floats.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

import numpy as np

from ._limits import check_alloc
from .spectrum import KEvaluator, alpha, order_for, radius

MAX_DEPTH = 8

CORRECTED = "corrected"
PRINTED = "printed"


@dataclass(frozen=True)
class RootIndex:
    m: int
    j: int

    def __post_init__(self):
        if self.m < 0:
            raise ValueError("level must be >= 0")

    def normalized(self, k: int) -> "RootIndex":
        """The same root at the lowest level it lives on."""
        m, j = self.m, self.j % k**self.m
        while m > 0 and j % k == 0:
            m, j = m - 1, j // k
        return RootIndex(m, j)

    def power(self, k: int, e: int) -> "RootIndex":
        return RootIndex(self.m, (self.j * e) % k**self.m)

    def value(self, k: int) -> complex:
        period = k**self.m
        return complex(np.exp(2j * np.pi * (self.j % period) / period))


def _unit(residues: np.ndarray, period: int) -> np.ndarray:
    return np.exp(2j * np.pi * residues / period)


@dataclass(frozen=True)
class OmegaTable:
    k: int
    depth: int
    alpha: float
    levels: Tuple[np.ndarray, ...]

    def __getitem__(self, root) -> complex:
        if not isinstance(root, RootIndex):
            root = RootIndex(*root)
        if root.m > self.depth:
            r = root.normalized(self.k)
            if r.m > self.depth:
                raise KeyError(f"root {root} is beyond depth {self.depth}")
            root = r
        return complex(self.levels[root.m][root.j % self.k**root.m])

    def roots(self):
        for m in range(self.depth + 1):
            for j in range(self.k**m):
                yield RootIndex(m, j)

    def primitive_roots(self):
        for r in self.roots():
            if r.m == 0 or r.j % self.k:
                yield r


def build_omega(k: int, depth: int) -> OmegaTable:
    """Fill Omega on all roots of order dividing ``k^depth``, one level at a time."""
    if not isinstance(k, int) or k < 2:
        raise ValueError(f"base must be an integer >= 2, got {k!r}")
    if not 0 <= depth <= MAX_DEPTH:
        raise ValueError(f"depth must lie in [0, {MAX_DEPTH}], got {depth}")
    check_alloc(sum(k**m for m in range(depth + 1)), 16, "omega table")
    a = alpha(k)
    levels: List[np.ndarray] = [np.array([1.0 + 0.0j])]
    for m in range(1, depth + 1):
        period = k**m
        j = np.arange(period, dtype=np.int64)
        P = sum((e + 1) * _unit((e * j) % period, period) for e in range(k))
        Q = sum(_unit((e * j) % period, period) for e in range(k * k))
        om_k = levels[m - 1][j % k ** (m - 1)]
        om_k2 = levels[max(m - 2, 0)][j % k ** max(m - 2, 0)]
        vals = P * om_k / a + Q * om_k2 / a**2
        # roots already present at level m-1 keep their stored value
        vals[::k] = levels[m - 1]
        vals.setflags(write=False)
        levels.append(vals)
    return OmegaTable(k=k, depth=depth, alpha=a, levels=tuple(levels))


def first_weight(k: int, z: complex, variant: str = CORRECTED) -> complex:
    s = sum(z**a for a in range(k))
    if variant == CORRECTED:
        return k * z**k - s
    if variant == PRINTED:
        return (k + 2) * z**k + s
    raise ValueError(f"unknown variant {variant!r}")


def fe_residuals(table: OmegaTable, variant: str = CORRECTED) -> Dict[RootIndex, float]:
    """``|(xi - 1) Omega(xi) - RHS(xi)|`` for every root in the table."""
    k, a = table.k, table.alpha
    out = {}
    for r in table.roots():
        xi = r.value(k)
        xi_k = r.power(k, k)
        xi_k2 = r.power(k, k * k)
        lhs = (xi - 1) * table[r]
        rhs = first_weight(k, xi, variant) / a * table[xi_k] + (xi_k2.value(k) - 1) / a**2 * table[xi_k2]
        out[r] = abs(lhs - rhs)
    return out


def check_omega_fe(table: OmegaTable, variant: str = CORRECTED) -> float:
    """Largest residual of the cleared functional equation over the table."""
    return max(fe_residuals(table, variant).values())


def _expand_weight(k: int) -> List[int]:
    # (z - 1) * sum_{a<k} (a+1) z^a, lowest degree first
    P = [a + 1 for a in range(k)] + [0]
    return [(P[i - 1] if i else 0) - P[i] for i in range(k + 1)]


def check_weight_identity(k: int, variant: str = CORRECTED) -> bool:
    """Whether ``(z - 1) sum_{a<k} (a+1) z^a`` equals the chosen weight polynomial exactly."""
    if k < 2:
        raise ValueError(f"base must be >= 2, got {k}")
    if variant == CORRECTED:
        claimed = [-1] * k + [k]
    elif variant == PRINTED:
        claimed = [1] * k + [k + 2]
    else:
        raise ValueError(f"unknown variant {variant!r}")
    return _expand_weight(k) == claimed


def omega_quotient(table: OmegaTable, root: RootIndex) -> complex:
    """``alpha Omega(xi) / Omega(xi^k)``."""
    return table.alpha * table[root] / table[root.power(table.k, table.k)]


def check_quotient_fe(table: OmegaTable, tiny: float = 1e-300) -> float:
    """Residual of ``(z - 1) w(z) = weight(z) + (z^(k^2) - 1) / w(z^k)`` over the table.

    Roots whose quotient would divide by a (numerically) vanishing Omega are skipped.
    """
    k = table.k
    worst = 0.0
    for r in table.roots():
        rk = r.power(k, k)
        rk2 = r.power(k, k * k)
        if min(abs(table[rk]), abs(table[rk2])) < tiny:
            continue
        w = omega_quotient(table, r)
        w_k = omega_quotient(table, rk)
        xi = r.value(k)
        rhs = first_weight(k, xi) + (rk2.value(k) - 1) / w_k
        worst = max(worst, abs((xi - 1) * w - rhs))
    return worst


def omega_radial_estimate(
    k: int, root: RootIndex, j: int, N: Optional[int] = None, evaluator: Optional[KEvaluator] = None
) -> complex:
    """``K(xi z) / K(z)`` at ``z = 1 - 2^-j``; tends to ``Omega(xi)``."""
    z = radius(j)
    need = order_for(z)
    if N is not None and N < need:
        raise ValueError(f"order {N} is below the truncation rule's {need} at z = {z}")
    ev = evaluator or KEvaluator(k)
    N = N or need
    r = root.normalized(k)
    if r.m == 0:
        return 1.0 + 0.0j
    return ev.value_at_root(z, r.m, r.j, N) / ev.value(z, N)


def table_rows(table: OmegaTable) -> List[tuple]:
    res = fe_residuals(table)
    return [(r.m, r.j, table[r].real, table[r].imag, res[r]) for r in table.roots()]
