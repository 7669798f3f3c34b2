import json
import random

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from zaremba.linalg import nullspace, rank
from zaremba.series import (
    IntSeries,
    UnderdeterminedProbe,
    check_homogeneous,
    check_mfe,
    evaluate_relation,
    homogeneous_coefficients,
    kappa_series,
    mfe_control,
    mfe_lhs,
    mfe_vector,
    monomials,
    mul,
    mul_schoolbook,
    probe_series,
    relation_probe,
    shift_vector,
    upsample,
)

coeff_lists = st.lists(st.integers(-(10**30), 10**30), min_size=1, max_size=150)


def S(*c, order=None):
    return IntSeries.from_poly(list(c), order or len(c))


def test_kappa_series_examples():
    assert kappa_series(2, 4).coeffs == (1, 2, 3, 5)
    assert kappa_series(3, 3).coeffs == (1, 2, 3)
    for k in (2, 5):
        assert kappa_series(k, 1).coeffs == (1,)


def test_upsample_examples():
    assert upsample(S(1, 2, order=4), 2).coeffs == (1, 0, 2, 0)
    assert upsample(S(1), 7).coeffs == (1,)
    assert upsample(S(1, 1, 1, order=7), 3).coeffs == (1, 0, 0, 1, 0, 0, 1)


@given(coeff_lists, st.integers(2, 6))
def test_upsample_index_bijection(c, k):
    s = IntSeries(len(c), tuple(c))
    u = upsample(s, k)
    assert u.order == s.order
    for n in range(u.order):
        assert u[n] == (s[n // k] if n % k == 0 else 0)


def test_mul_examples():
    assert mul(S(1, 1, order=3), S(1, -1, order=3)).coeffs == (1, 0, -1)
    s = S(4, -2, 9, 0, 1)
    assert mul(s, IntSeries.one(5)) == s
    assert mul(S(1, 2), S(1, 3)).coeffs == (1, 5)


def test_mul_truncates_to_common_order():
    assert mul(S(1, 1, 1), S(1, 1)).order == 2


@settings(max_examples=60)
@given(coeff_lists, coeff_lists)
def test_mul_matches_schoolbook(a, b):
    A, B = IntSeries(len(a), tuple(a)), IntSeries(len(b), tuple(b))
    assert mul(A, B) == mul_schoolbook(A, B)


def test_dense_path_matches_schoolbook():
    rng = random.Random(7)
    for _ in range(5):
        a = [rng.randint(-(10**12), 10**12) for _ in range(400)]
        b = [rng.randint(-(10**40), 10**40) for _ in range(300)]
        A, B = IntSeries(400, tuple(a)), IntSeries(300, tuple(b))
        assert mul(A, B) == mul_schoolbook(A, B)


def test_series_reads_never_exceed_order():
    s = S(1, 2, 3)
    with pytest.raises(IndexError):
        s[3]
    with pytest.raises(ValueError):
        s.truncate(4)
    assert (s + S(1, 1)).order == 2


def test_json_round_trip():
    s = IntSeries(3, (10**40, -3, 0))
    text = s.to_json()
    assert json.loads(text)["coeffs"] == [str(10**40), "-3", "0"]
    assert IntSeries.from_json(text) == s


def test_mfe_constant_term_before_rhs():
    # K(0) - 1*K(0) - 1*K(0) = 1 - 1 - 1
    assert mfe_lhs(2, 3)[0] == -1
    # and the right side is -(1 + z)
    assert mfe_lhs(2, 3).coeffs[:2] == (-1, -1)


@pytest.mark.parametrize("k, N", [(2, 10_000), (5, 1000), (3, 2000)])
def test_mfe_residual_is_zero(k, N):
    r = check_mfe(k, N)
    assert r.order == N and r.is_zero()


def test_mfe_detects_a_corrupted_coefficient(monkeypatch):
    import zaremba.series as sm

    real = sm.kappa_range

    class Fake:
        def __init__(self, t):
            self._v = t.tolist()
            self._v[37] += 1

        def tolist(self):
            return self._v

    monkeypatch.setattr(sm, "kappa_range", lambda k, N: Fake(real(k, N)))
    r = sm.check_mfe(2, 200)
    assert r.first_nonzero() == 37


def test_homogeneous_by_hand_order_8():
    # first 8 values and explicit polynomials, independent of homogeneous_coefficients
    K = [1, 2, 3, 5, 5, 8, 7, 12]

    def up(c, k):
        return [c[n // k] if n % k == 0 else 0 for n in range(8)]

    def conv(p, s):
        return [sum(p[i] * s[n - i] for i in range(len(p)) if 0 <= n - i) for n in range(8)]

    # q(z) = -(1+z); q(z^2) = -(1+z^2)
    c0 = [-1, 0, -1]
    c1 = [2, 3, 1, 2]  # -(q(z^2)(1+2z) + q(z))
    c2 = [0, 0, 0, 0, 1, 1]  # -(q(z^2)(1+z+z^2+z^3) - q(z)(1+2z^2))
    c3 = [-1] * 8  # q(z)(1+z^2+z^4+z^6)
    total = [0] * 8
    for c, s in ((c0, K), (c1, up(K, 2)), (c2, up(K, 4)), (c3, up(K, 8))):
        for n, x in enumerate(conv(c, s)):
            total[n] += x
    assert total == [0] * 8
    assert check_homogeneous(2, 8).is_zero()
    assert homogeneous_coefficients(2)[:2] == [[-1, 0, -1], [2, 3, 1, 2]]


@pytest.mark.parametrize("k, N", [(2, 1000), (3, 500)])
def test_homogeneous_residual_is_zero(k, N):
    assert check_homogeneous(k, N).is_zero()


def test_homogeneous_order_precondition():
    with pytest.raises(ValueError):
        check_homogeneous(2, 7)


def test_monomials():
    assert monomials(2, 2) == [(0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2)]
    assert monomials(2, 1, include_constant=False) == [(1, 0), (0, 1)]
    assert len(monomials(3, 1)) == 4


def test_nullspace_matches_sympy():
    rng = random.Random(3)
    for _ in range(25):
        rows, cols = rng.randint(1, 7), rng.randint(1, 8)
        M = [[rng.randint(-3, 3) for _ in range(cols)] for _ in range(rows)]
        ours = nullspace(M, cols)
        ref = sympy.Matrix(M).nullspace()
        assert len(ours) == len(ref)
        for v in ours:
            assert all(sum(r[i] * v[i] for i in range(cols)) == 0 for r in M)
        if ours:
            assert rank(ours, cols) == len(ours)


def test_planted_relation_is_found():
    rng = random.Random(11)
    s = IntSeries(60, tuple(rng.randint(-50, 50) for _ in range(60)))
    t = mul(S(3, 1, order=60), s)  # t = (3 + z) s
    basis = probe_series([s, t], D=1, d=1, N=60, include_constant=False)
    assert len(basis) == 1
    assert basis.polynomials(0) == {(1, 0): [3, 1], (0, 1): [-1, 0]}
    assert evaluate_relation([s, t], basis, 0).is_zero()


@pytest.mark.slow
def test_probe_pair_k2_is_empty():
    b = relation_probe(2, 2, 8, 200)
    assert b.is_empty and b.N == 200 and len(b.monomials) == 6


def test_probe_small_is_empty():
    assert relation_probe(2, 1, 2, 50).is_empty


def test_probe_rejects_underdetermined():
    with pytest.raises(UnderdeterminedProbe):
        relation_probe(2, 2, 40, 200)


def test_positive_control_recovers_mfe():
    exact = mfe_control(2, 3, 100)
    assert [list(v) for v in exact.basis] == [mfe_vector(2, 3)]
    b = mfe_control(2, 4, 100)
    v = mfe_vector(2, 4)
    # the kernel is spanned by the equation and z times the equation
    assert len(b) == 2
    span = [v, shift_vector(v, 4)]
    assert rank(span + [list(x) for x in b.basis], len(v)) == 2
    K = kappa_series(2, 100)
    for i in range(len(b)):
        assert evaluate_relation([K, upsample(K, 2), upsample(K, 4)], b, i).is_zero()


def test_relation_basis_json():
    b = mfe_control(2, 3, 60)
    data = json.loads(b.to_json())
    assert data["basis"][0][0] == "1" and data["N"] == 60
