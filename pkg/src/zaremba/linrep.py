"""Base-k digit words and exact evaluation of linear representations.

A k-regular sequence is given by a row vector ``w``, a column vector ``v`` and
one square integer matrix per digit.  The value at ``n`` is

    w . A[i_0] . A[i_1] ... A[i_s] . v

where ``i_0`` is the least significant base-k digit of ``n``.  Products are
carried out on Python integers, so there is no overflow.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Tuple

Matrix = Tuple[Tuple[int, ...], ...]
Vector = Tuple[int, ...]


def _check_base(k: int) -> None:
    if not isinstance(k, int) or k < 2:
        raise ValueError(f"base must be an integer >= 2, got {k!r}")


@dataclass(frozen=True)
class DigitWord:
    """Least-significant-first base-k digits of a natural number."""

    k: int
    digits: Tuple[int, ...]

    def __post_init__(self):
        _check_base(self.k)
        digits = tuple(self.digits)
        object.__setattr__(self, "digits", digits)
        if not digits:
            raise ValueError("a digit word has at least one digit")
        for d in digits:
            if not 0 <= d < self.k:
                raise ValueError(f"digit {d} out of range for base {self.k}")
        if len(digits) > 1 and digits[-1] == 0:
            raise ValueError("most significant digit is zero")

    @property
    def value(self) -> int:
        n = 0
        for d in reversed(self.digits):
            n = n * self.k + d
        return n

    def __len__(self) -> int:
        return len(self.digits)

    def __iter__(self):
        return iter(self.digits)


def to_digits(n: int, k: int) -> DigitWord:
    """Base-k digits of ``n``, least significant first; ``0`` maps to ``[0]``."""
    _check_base(k)
    if n < 0:
        raise ValueError(f"n must be nonnegative, got {n}")
    if n == 0:
        return DigitWord(k, (0,))
    digits = []
    while n:
        n, d = divmod(n, k)
        digits.append(d)
    return DigitWord(k, tuple(digits))


@dataclass(frozen=True)
class LinearRep:
    k: int
    d: int
    A: Tuple[Matrix, ...]
    w: Vector
    v: Vector

    def __post_init__(self):
        _check_base(self.k)
        A = tuple(tuple(tuple(int(x) for x in row) for row in M) for M in self.A)
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "w", tuple(int(x) for x in self.w))
        object.__setattr__(self, "v", tuple(int(x) for x in self.v))
        if len(A) != self.k:
            raise ValueError(f"expected {self.k} matrices, got {len(A)}")
        for i, M in enumerate(A):
            if len(M) != self.d or any(len(row) != self.d for row in M):
                raise ValueError(f"matrix {i} is not {self.d}x{self.d}")
        if len(self.w) != self.d or len(self.v) != self.d:
            raise ValueError(f"w and v must have length {self.d}")

    def product(self, word: Sequence[int]) -> Matrix:
        """The matrix product A[word[0]] A[word[1]] ... (identity for an empty word)."""
        d = self.d
        P = [[int(i == j) for j in range(d)] for i in range(d)]
        for digit in word:
            M = self.A[digit]
            P = [[sum(P[i][t] * M[t][j] for t in range(d)) for j in range(d)] for i in range(d)]
        return tuple(tuple(row) for row in P)


def kappa_rep(k: int) -> LinearRep:
    """Representation of the continuant sequence: ``A_i = [[i+1, 1], [1, 0]]``, ``w = v = (1, 0)``."""
    _check_base(k)
    A = tuple(((i + 1, 1), (1, 0)) for i in range(k))
    return LinearRep(k=k, d=2, A=A, w=(1, 0), v=(1, 0))


def eval_word(rep: LinearRep, word: Sequence[int]) -> int:
    # row vector sweep: w.A[i0] first, so the least significant digit sits leftmost
    row = list(rep.w)
    d = rep.d
    if d == 2:
        r0, r1 = row
        for digit in word:
            (a, b), (c, e) = rep.A[digit]
            r0, r1 = r0 * a + r1 * c, r0 * b + r1 * e
        row = [r0, r1]
    else:
        for digit in word:
            M = rep.A[digit]
            row = [sum(row[t] * M[t][j] for t in range(d)) for j in range(d)]
    return sum(x * y for x, y in zip(row, rep.v))


def eval_rep(rep: LinearRep, n: int) -> int:
    """Value of the sequence defined by ``rep`` at ``n``, exactly."""
    return eval_word(rep, to_digits(n, rep.k).digits)


def det2(M: Matrix) -> int:
    return M[0][0] * M[1][1] - M[0][1] * M[1][0]
