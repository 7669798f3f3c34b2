"""Exact truncated power series over the integers.

An :class:`IntSeries` of order ``N`` stands for a power series known modulo
``z^N``.  Combining two series keeps the smaller order, so no operation ever
claims a coefficient it does not know.  Coefficients are Python integers.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, List, Sequence, Tuple

from ._limits import check_alloc
from .kappa import kappa_range

# Kronecker substitution pays off once both factors have this many nonzeros.
_DENSE_CUTOFF = 64


@dataclass(frozen=True)
class IntSeries:
    order: int
    coeffs: Tuple[int, ...]

    def __post_init__(self):
        coeffs = tuple(int(c) for c in self.coeffs)
        if self.order < 0:
            raise ValueError(f"order must be >= 0, got {self.order}")
        if len(coeffs) != self.order:
            raise ValueError(f"expected {self.order} coefficients, got {len(coeffs)}")
        object.__setattr__(self, "coeffs", coeffs)

    @classmethod
    def from_poly(cls, coeffs: Sequence[int], order: int) -> "IntSeries":
        """A polynomial viewed as a series of the given order (truncating or zero-padding)."""
        c = [int(x) for x in coeffs[:order]]
        c.extend([0] * (order - len(c)))
        return cls(order, tuple(c))

    @classmethod
    def zero(cls, order: int) -> "IntSeries":
        return cls(order, (0,) * order)

    @classmethod
    def one(cls, order: int) -> "IntSeries":
        return cls.from_poly([1], order)

    def __getitem__(self, n: int) -> int:
        if not 0 <= n < self.order:
            raise IndexError(f"coefficient {n} is outside the known order {self.order}")
        return self.coeffs[n]

    def __len__(self) -> int:
        return self.order

    def truncate(self, order: int) -> "IntSeries":
        if order > self.order:
            raise ValueError(f"cannot extend a series of order {self.order} to {order}")
        return IntSeries(order, self.coeffs[:order])

    def __add__(self, other: "IntSeries") -> "IntSeries":
        n = min(self.order, other.order)
        return IntSeries(n, tuple(a + b for a, b in zip(self.coeffs[:n], other.coeffs[:n])))

    def __sub__(self, other: "IntSeries") -> "IntSeries":
        n = min(self.order, other.order)
        return IntSeries(n, tuple(a - b for a, b in zip(self.coeffs[:n], other.coeffs[:n])))

    def __neg__(self) -> "IntSeries":
        return IntSeries(self.order, tuple(-a for a in self.coeffs))

    def scale(self, c: int) -> "IntSeries":
        return IntSeries(self.order, tuple(c * a for a in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        return mul(self, other)

    __rmul__ = __mul__

    def shift(self, j: int) -> "IntSeries":
        """Multiply by ``z^j``; the order is preserved."""
        if j < 0:
            raise ValueError("shift must be nonnegative")
        j = min(j, self.order)
        return IntSeries(self.order, (0,) * j + self.coeffs[: self.order - j])

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def first_nonzero(self):
        for n, c in enumerate(self.coeffs):
            if c:
                return n
        return None

    def support(self) -> List[int]:
        return [n for n, c in enumerate(self.coeffs) if c]

    def to_json(self) -> str:
        return json.dumps({"order": self.order, "coeffs": [str(c) for c in self.coeffs]})

    @classmethod
    def from_json(cls, text: str) -> "IntSeries":
        data = json.loads(text)
        return cls(int(data["order"]), tuple(int(c) for c in data["coeffs"]))


def upsample(S: IntSeries, k: int) -> IntSeries:
    """``S(z^k)`` at the same order."""
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    out = [0] * S.order
    for n in range(0, (S.order - 1) // k + 1):
        out[k * n] = S.coeffs[n]
    return IntSeries(S.order, tuple(out))


def _mul_sparse(sparse: IntSeries, dense: IntSeries, n: int) -> List[int]:
    out = [0] * n
    dc = dense.coeffs
    for i in sparse.support():
        if i >= n:
            break
        c = sparse.coeffs[i]
        for j in range(n - i):
            out[i + j] += c * dc[j]
    return out


def _kronecker(a: Sequence[int], b: Sequence[int], n: int) -> List[int]:
    """Truncated product of two nonnegative coefficient lists via one big-integer multiply."""
    if not any(a) or not any(b):
        return [0] * n
    bound = max(a).bit_length() + max(b).bit_length() + min(len(a), len(b)).bit_length() + 1
    width = bound + (-bound % 8)
    nbytes = width // 8

    def pack(c):
        return int.from_bytes(b"".join(x.to_bytes(nbytes, "little") for x in c), "little")

    prod = (pack(a) * pack(b)).to_bytes(nbytes * (len(a) + len(b)), "little")
    return [int.from_bytes(prod[i * nbytes : (i + 1) * nbytes], "little") for i in range(n)]


def _mul_dense(A: IntSeries, B: IntSeries, n: int) -> List[int]:
    a, b = A.coeffs[:n], B.coeffs[:n]
    a_pos = [max(x, 0) for x in a]
    a_neg = [max(-x, 0) for x in a]
    b_pos = [max(x, 0) for x in b]
    b_neg = [max(-x, 0) for x in b]
    pp = _kronecker(a_pos, b_pos, n)
    nn = _kronecker(a_neg, b_neg, n)
    pn = _kronecker(a_pos, b_neg, n)
    np_ = _kronecker(a_neg, b_pos, n)
    return [w + x - y - z for w, x, y, z in zip(pp, nn, pn, np_)]


def mul(A: IntSeries, B: IntSeries) -> IntSeries:
    """Exact Cauchy product, truncated to the smaller order."""
    n = min(A.order, B.order)
    if n == 0:
        return IntSeries(0, ())
    na = sum(1 for c in A.coeffs[:n] if c)
    nb = sum(1 for c in B.coeffs[:n] if c)
    if min(na, nb) < _DENSE_CUTOFF:
        out = _mul_sparse(A, B, n) if na <= nb else _mul_sparse(B, A, n)
    else:
        out = _mul_dense(A, B, n)
    return IntSeries(n, tuple(out))


def mul_schoolbook(A: IntSeries, B: IntSeries) -> IntSeries:
    """Reference quadratic product (used to cross-check :func:`mul`)."""
    n = min(A.order, B.order)
    out = [0] * n
    for i in range(n):
        ai = A.coeffs[i]
        if ai:
            for j in range(n - i):
                out[i + j] += ai * B.coeffs[j]
    return IntSeries(n, tuple(out))


def power(S: IntSeries, e: int) -> IntSeries:
    result = IntSeries.one(S.order)
    for _ in range(e):
        result = mul(result, S)
    return result


# -- the generating function and its functional equations ---------------------


def kappa_series(k: int, N: int) -> IntSeries:
    """``K(z) = sum kappa(n) z^n`` modulo ``z^N``."""
    if N < 1:
        raise ValueError(f"order must be >= 1, got {N}")
    check_alloc(N, 32, "kappa series")
    return IntSeries(N, tuple(kappa_range(k, N).tolist()))


def weight_poly(k: int) -> List[int]:
    """``1 + 2z + ... + k z^(k-1)``."""
    return [a + 1 for a in range(k)]


def ones_poly(length: int) -> List[int]:
    return [1] * length


def q_poly(k: int) -> List[int]:
    """The inhomogeneous part ``q(z) = -(1 + z + ... + z^(k-1))``."""
    return [-1] * k


def _poly(coeffs: Sequence[int], N: int) -> IntSeries:
    return IntSeries.from_poly(coeffs, N)


def check_mfe(k: int, N: int) -> IntSeries:
    """Residual of ``K(z) - P(z) K(z^k) - Q(z) K(z^(k^2)) - q(z)`` modulo ``z^N``.

    ``P = sum (a+1) z^a`` over ``a < k`` and ``Q = sum z^a`` over ``a < k^2``.
    The residual is the zero series exactly when the equation holds to order N.
    Orders below ``k^2`` are allowed but only test the seed values.
    """
    return mfe_lhs(k, N) - _poly(q_poly(k), N)


def mfe_lhs(k: int, N: int) -> IntSeries:
    """``K(z) - P(z) K(z^k) - Q(z) K(z^(k^2))`` modulo ``z^N``; equals ``q(z)`` in theory."""
    K = kappa_series(k, N)
    return (
        K
        - mul(_poly(weight_poly(k), N), upsample(K, k))
        - mul(_poly(ones_poly(k * k), N), upsample(K, k * k))
    )


def _poly_mul(a: Sequence[int], b: Sequence[int]) -> List[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _poly_add(a: Sequence[int], b: Sequence[int], sign: int = 1) -> List[int]:
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return [x + sign * y for x, y in zip(a, b)]


def _poly_up(a: Sequence[int], k: int) -> List[int]:
    out = [0] * ((len(a) - 1) * k + 1)
    for i, x in enumerate(a):
        out[i * k] = x
    return out


def homogeneous_coefficients(k: int) -> List[List[int]]:
    """Polynomial coefficients ``[c0, c1, c2, c3]`` of the homogeneous equation

        c0 K(z) + c1 K(z^k) + c2 K(z^(k^2)) + c3 K(z^(k^3)) = 0

    obtained by cancelling ``q`` between the functional equation at ``z`` and at ``z^k``.
    """
    P, Q, q = weight_poly(k), ones_poly(k * k), q_poly(k)
    qk = _poly_up(q, k)
    c0 = qk
    c1 = [-x for x in _poly_add(_poly_mul(qk, P), q)]
    c2 = [-x for x in _poly_add(_poly_mul(qk, Q), _poly_mul(q, _poly_up(P, k)), sign=-1)]
    c3 = _poly_mul(q, _poly_up(Q, k))
    return [c0, c1, c2, c3]


def check_homogeneous(k: int, N: int) -> IntSeries:
    """Residual of the four-term homogeneous equation modulo ``z^N`` (zero when it holds)."""
    if N < k**3:
        raise ValueError(f"order must be >= k^3 = {k ** 3}, got {N}")
    K = kappa_series(k, N)
    total = IntSeries.zero(N)
    for i, c in enumerate(homogeneous_coefficients(k)):
        total = total + mul(_poly(c, N), upsample(K, k**i))
    return total


# -- relation probe -------------------------------------------------------------


def monomials(nvars: int, D: int, include_constant: bool = True) -> List[Tuple[int, ...]]:
    """Exponent tuples of total degree <= D in graded order (constant first if included)."""
    out = []
    lo = 0 if include_constant else 1

    def rec(prefix, left, remaining):
        if remaining == 1:
            out.append(prefix + (left,))
            return
        for e in range(left, -1, -1):
            rec(prefix + (e,), left - e, remaining - 1)

    for total in range(lo, D + 1):
        rec((), total, nvars)
    return out


@dataclass(frozen=True)
class RelationBasis:
    """Polynomial relations among truncated series.

    Each basis vector lists, per monomial in :attr:`monomials`, the ``d + 1``
    coefficients ``p(z) = c_0 + c_1 z + ... + c_d z^d``.
    """

    k: int
    D: int
    d: int
    N: int
    monomials: Tuple[Tuple[int, ...], ...]
    basis: Tuple[Tuple[int, ...], ...]

    def __len__(self) -> int:
        return len(self.basis)

    @property
    def is_empty(self) -> bool:
        return not self.basis

    def polynomials(self, i: int) -> dict:
        vec = self.basis[i]
        w = self.d + 1
        return {m: list(vec[j * w : (j + 1) * w]) for j, m in enumerate(self.monomials)}

    def to_json(self) -> str:
        return json.dumps(
            {
                "k": self.k,
                "D": self.D,
                "d": self.d,
                "N": self.N,
                "monomials": [list(m) for m in self.monomials],
                "basis": [[str(c) for c in v] for v in self.basis],
            },
            sort_keys=True,
        )


class UnderdeterminedProbe(ValueError):
    """More unknowns than coefficient equations: the kernel would be nonzero for free."""


def relation_matrix(series: Sequence[IntSeries], mons: Sequence[Tuple[int, ...]], d: int, N: int) -> List[List[int]]:
    """Rows ``z^0..z^(N-1)``, one column per (monomial, power of z) pair."""
    cache = {}

    def mono(e):
        if e not in cache:
            if sum(e) == 0:
                cache[e] = IntSeries.one(N)
            else:
                i = next(i for i, x in enumerate(e) if x)
                rest = e[:i] + (e[i] - 1,) + e[i + 1 :]
                cache[e] = mul(mono(rest), series[i].truncate(N))
        return cache[e]

    cols = []
    for e in mons:
        c = mono(e).coeffs
        for j in range(d + 1):
            cols.append((j, c))
    return [[c[n - j] if n >= j else 0 for (j, c) in cols] for n in range(N)]


def probe_series(
    series: Sequence[IntSeries],
    D: int,
    d: int,
    N: int,
    *,
    include_constant: bool = True,
    k: int = 0,
) -> RelationBasis:
    """All relations ``sum p_m(z) S^m = 0 mod z^N`` with ``|m| <= D`` and ``deg p_m <= d``."""
    from .linalg import nullspace

    if any(s.order < N for s in series):
        raise ValueError(f"all series need order >= {N}")
    mons = monomials(len(series), D, include_constant)
    unknowns = (d + 1) * len(mons)
    if unknowns > N:
        raise UnderdeterminedProbe(
            f"{unknowns} unknowns ((d+1)={d + 1} x {len(mons)} monomials) exceed the {N} equations; "
            f"raise N or lower D/d"
        )
    M = relation_matrix(series, mons, d, N)
    basis = nullspace(M, unknowns)
    return RelationBasis(k=k, D=D, d=d, N=N, monomials=tuple(mons), basis=tuple(tuple(v) for v in basis))


def relation_probe(k: int, D: int, d: int, N: int) -> RelationBasis:
    """Search for polynomial relations between ``K(z)`` and ``K(z^k)`` modulo ``z^N``."""
    K = kappa_series(k, N)
    return probe_series([K, upsample(K, k)], D, d, N, k=k)


def mfe_control(k: int, d: int, N: int) -> RelationBasis:
    """Linear relations among ``1, K(z), K(z^k), K(z^(k^2))`` (should recover the functional equation)."""
    K = kappa_series(k, N)
    return probe_series([K, upsample(K, k), upsample(K, k * k)], 1, d, N, k=k)


def mfe_vector(k: int, d: int) -> List[int]:
    """The functional equation as a coefficient vector in the layout of :func:`mfe_control`."""
    mons = monomials(3, 1, True)
    polys = {
        (0, 0, 0): [-c for c in q_poly(k)],
        (1, 0, 0): [1],
        (0, 1, 0): [-c for c in weight_poly(k)],
        (0, 0, 1): [-1] * (k * k),
    }
    vec = []
    for m in mons:
        p = polys[m]
        if len(p) > d + 1:
            raise ValueError(f"the functional equation needs d >= {len(p) - 1}")
        vec.extend(p + [0] * (d + 1 - len(p)))
    return vec


def evaluate_relation(series: Sequence[IntSeries], basis: RelationBasis, i: int) -> IntSeries:
    """Expand relation ``i`` against the series; the result is zero modulo ``z^N`` for a true relation."""
    N = basis.N
    total = IntSeries.zero(N)
    for m, p in basis.polynomials(i).items():
        term = _poly(p, N)
        for s, e in zip(series, m):
            for _ in range(e):
                term = mul(term, s.truncate(N))
        total = total + term
    return total


def shift_vector(vec: Iterable[int], d: int, by: int = 1) -> List[int]:
    """Multiply every polynomial block of a relation vector by ``z^by`` (degree must stay <= d)."""
    vec = list(vec)
    w = d + 1
    out = []
    for j in range(0, len(vec), w):
        block = vec[j : j + w]
        if any(block[w - by :]):
            raise ValueError("shift overflows the degree bound")
        out.extend([0] * by + block[: w - by])
    return out
