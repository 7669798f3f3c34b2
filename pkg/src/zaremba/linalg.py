"""Exact kernels of integer matrices."""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import List, Sequence


def _primitive(vec: Sequence[Fraction]) -> List[int]:
    den = 1
    for x in vec:
        den = den * x.denominator // gcd(den, x.denominator)
    ints = [int(x * den) for x in vec]
    g = 0
    for x in ints:
        g = gcd(g, x)
    ints = [x // g for x in ints] if g else ints
    lead = next((x for x in ints if x), 0)
    return [-x for x in ints] if lead < 0 else ints


def rref(rows: Sequence[Sequence[int]], ncols: int):
    """Reduced row echelon form over Q; returns ``(matrix, pivot_columns)``."""
    A = [[Fraction(x) for x in r] for r in rows if any(r)]
    pivots = []
    r = 0
    for c in range(ncols):
        if r == len(A):
            break
        p = next((i for i in range(r, len(A)) if A[i][c] != 0), None)
        if p is None:
            continue
        A[r], A[p] = A[p], A[r]
        inv = 1 / A[r][c]
        A[r] = [x * inv for x in A[r]]
        for i in range(len(A)):
            if i != r and A[i][c] != 0:
                f = A[i][c]
                Ai, Ar = A[i], A[r]
                A[i] = [x - f * y for x, y in zip(Ai, Ar)]
        pivots.append(c)
        r += 1
    return A[:r], pivots


def nullspace(rows: Sequence[Sequence[int]], ncols: int) -> List[List[int]]:
    """A basis of ``{x : rows . x = 0}`` as primitive integer vectors, one per free column."""
    R, pivots = rref(rows, ncols)
    pivot_set = set(pivots)
    basis = []
    for f in range(ncols):
        if f in pivot_set:
            continue
        vec = [Fraction(0)] * ncols
        vec[f] = Fraction(1)
        for row, p in zip(R, pivots):
            vec[p] = -row[f]
        basis.append(_primitive(vec))
    return basis


def rank(rows: Sequence[Sequence[int]], ncols: int) -> int:
    return len(rref(rows, ncols)[1])
