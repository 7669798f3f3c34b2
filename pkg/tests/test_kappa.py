import math

import pytest

from conftest import base_digits, cf_denominator
from zaremba._limits import ResourceLimitError
from zaremba.kappa import (
    EXPONENT_K2,
    LIMSUP_K2,
    continuant,
    continuant_fraction,
    growth_report,
    kappa_range,
)
from zaremba.linrep import eval_rep, kappa_rep, to_digits


def test_kappa_range_k2_first_values():
    # oracle: matrix products; kappa(4) = [1,1,2] -> 5
    expected = [eval_rep(kappa_rep(2), n) for n in range(8)]
    assert expected == [1, 2, 3, 5, 5, 8, 7, 12]
    assert kappa_range(2, 8).tolist() == expected


def test_kappa_range_examples():
    assert kappa_range(3, 3).tolist() == [1, 2, 3]
    assert kappa_range(2, 4).tolist()[-1] == 5
    assert kappa_range(5, 1).tolist() == [1]


@pytest.mark.parametrize("k", [2, 3, 4, 5, 6])
def test_table_matches_matrix_and_fraction_oracles(k):
    table = kappa_range(k, 3000).tolist()
    rep = kappa_rep(k)
    for n in range(3000):
        assert table[n] == eval_rep(rep, n) == cf_denominator(base_digits(n, k))


@pytest.mark.parametrize("k", [2, 3, 7])
def test_table_invariants(k):
    v = kappa_range(k, k**5).tolist()
    for n in range(k):
        assert v[n] == n + 1
    for a in range(1, k):
        for b in range(k):
            assert v[a * k + b] == (a + 1) * (b + 1) + 1
    for n in range(1, k**3):
        for a in range(k):
            for b in range(k):
                assert v[k * k * n + k * b + a] == (a + 1) * v[k * n + b] + v[n]


@pytest.mark.parametrize("k", [2, 3, 5])
def test_fixed_width_equals_bigint(k):
    a = kappa_range(k, 50_000)
    b = kappa_range(k, 50_000, bigint=True)
    assert a.is_fixed_width and not b.is_fixed_width
    assert a.tolist() == b.tolist()


def test_promotion_happens_before_overflow(monkeypatch):
    import zaremba.kappa as km

    # pretend the fixed-width range is tiny so the promotion branch runs
    monkeypatch.setattr(km, "_U64_MAX", 1000)
    t = km.kappa_range(2, 4096)
    assert not t.is_fixed_width
    assert t.tolist() == kappa_range(2, 4096, bigint=True).tolist()


def test_repunits_strictly_increase():
    for k in range(2, 7):
        vals = [eval_rep(kappa_rep(k), k**m - 1) for m in range(1, 12)]
        assert all(x < y for x, y in zip(vals, vals[1:]))


def test_bad_arguments():
    with pytest.raises(ValueError):
        kappa_range(1, 10)
    with pytest.raises(ValueError):
        kappa_range(2, 0)


def test_allocation_cap(monkeypatch):
    monkeypatch.setenv("ZAREMBA_MAX_MEM", "1k")
    with pytest.raises(ResourceLimitError):
        kappa_range(2, 1 << 12)


@pytest.mark.parametrize(
    "digits, q",
    [((1, 0, 1), 8), ((0,), 1), ((1, 1, 1), 12)],
)
def test_continuant_examples(digits, q):
    assert continuant(digits) == q
    assert continuant_fraction(digits).denominator == q


def test_continuant_convergents():
    from fractions import Fraction

    assert continuant_fraction((1, 0, 1)) == Fraction(3, 8)
    assert continuant_fraction((1, 1, 1)) == Fraction(5, 12)


def test_continuant_equals_eval_rep():
    for k in (2, 3, 4):
        rep = kappa_rep(k)
        for n in range(2000):
            w = to_digits(n, k)
            assert continuant(w) == eval_rep(rep, n)


def test_growth_report_small_blocks():
    rep = growth_report(20)
    r3, r4 = rep.record(3), rep.record(4)
    assert (r3.argmax, r3.max_value) == (7, 12)
    assert (r4.argmax, r4.max_value) == (15, 29)
    assert abs(rep.record(20).ratio - 0.8535533905932737) < 1e-3
    for r in rep.records:
        assert r.exhaustive and r.ratio > 0
        assert 1 << (r.m - 1) <= r.argmax < 1 << r.m


def test_growth_report_brute_force_scan():
    v = kappa_range(2, 1 << 12).tolist()
    for r in growth_report(12).records:
        block = v[1 << (r.m - 1) : 1 << r.m]
        assert r.max_value == max(block)
        assert r.argmax == (1 << r.m) - 1


def test_growth_report_repunit_branch():
    rep = growth_report(30, exhaustive_max=10)
    r = rep.record(30)
    assert not r.exhaustive and r.argmax == (1 << 30) - 1
    assert r.max_value == eval_rep(kappa_rep(2), (1 << 30) - 1)
    assert abs(r.ratio - LIMSUP_K2) < 1e-6


def test_growth_report_bounds():
    for bad in (1, 41):
        with pytest.raises(ValueError):
            growth_report(bad)


def test_constants():
    assert LIMSUP_K2 == pytest.approx(0.8535533905932737, abs=1e-15)
    assert EXPONENT_K2 == pytest.approx(math.log(1 + math.sqrt(2)) / math.log(2))
