import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from zaremba.linrep import DigitWord, LinearRep, det2, eval_rep, eval_word, kappa_rep, to_digits


@pytest.mark.parametrize(
    "n, k, digits",
    [(6, 2, (0, 1, 1)), (0, 5, (0,)), (11, 3, (2, 0, 1)), (1, 2, (1,)), (35, 6, (5, 5))],
)
def test_to_digits_examples(n, k, digits):
    w = to_digits(n, k)
    assert w.digits == digits
    assert w.value == n


@given(st.integers(0, (1 << 20) - 1), st.integers(2, 8))
def test_round_trip(n, k):
    w = to_digits(n, k)
    assert sum(d * k**j for j, d in enumerate(w.digits)) == n
    assert all(0 <= d < k for d in w.digits)
    assert len(w) == 1 or w.digits[-1] != 0


@pytest.mark.parametrize("k", [0, 1, -3])
def test_to_digits_rejects_small_base(k):
    with pytest.raises(ValueError):
        to_digits(5, k)


def test_to_digits_rejects_negative():
    with pytest.raises(ValueError):
        to_digits(-1, 2)


@pytest.mark.parametrize("digits", [(), (0, 0), (1, 2), (3,)])
def test_digitword_invariants(digits):
    with pytest.raises(ValueError):
        DigitWord(3 if digits == (3,) else 2, digits)


def test_kappa_rep_shape():
    rep = kappa_rep(2)
    assert rep.A == (((1, 1), (1, 0)), ((2, 1), (1, 0)))
    assert kappa_rep(3).A[2] == ((3, 1), (1, 0))
    for k in range(2, 9):
        rep = kappa_rep(k)
        assert len(rep.A) == k and rep.d == 2
        # empty product
        assert eval_word(rep, ()) == 1
    with pytest.raises(ValueError):
        kappa_rep(1)


def test_eval_rep_examples():
    rep = kappa_rep(2)
    # 5 = 101b; A_1 A_0 A_1 = [[8,3],[3,1]]
    assert rep.product((1, 0, 1)) == ((8, 3), (3, 1))
    assert eval_rep(rep, 5) == 8
    assert eval_rep(rep, 0) == 1
    assert eval_rep(rep, 3) == 5


def test_closed_forms():
    for k in range(2, 8):
        rep = kappa_rep(k)
        for n in range(k):
            assert eval_rep(rep, n) == n + 1
        for a in range(1, k):
            for b in range(k):
                assert eval_rep(rep, a * k + b) == (a + 1) * (b + 1) + 1


def test_determinant_of_random_words():
    rng = random.Random(1)
    for k in range(2, 7):
        rep = kappa_rep(k)
        assert all(det2(A) == -1 for A in rep.A)
        for _ in range(50):
            word = [rng.randrange(k) for _ in range(rng.randint(1, 64))]
            assert det2(rep.product(word)) == (-1) ** len(word)


def test_big_values_do_not_overflow():
    rep = kappa_rep(2)
    n = (1 << 200) - 1
    v = eval_rep(rep, n)
    assert v.bit_length() > 250
    # Pell numbers: P_{m+1} for the all-ones word of length m
    p0, p1 = 0, 1
    for _ in range(200):
        p0, p1 = p1, 2 * p1 + p0
    assert v == p1


def test_generic_dimension():
    # 3x3 rep counting digits: w . A^len . v
    I3 = ((1, 0, 0), (0, 1, 0), (0, 0, 1))
    shift = ((1, 1, 0), (0, 1, 0), (0, 0, 1))
    rep = LinearRep(k=2, d=3, A=(shift, shift), w=(1, 0, 0), v=(0, 1, 0))
    assert eval_rep(rep, 0b1011) == 4
    with pytest.raises(ValueError):
        LinearRep(k=2, d=3, A=(I3,), w=(1, 0, 0), v=(0, 1, 0))
    with pytest.raises(ValueError):
        LinearRep(k=2, d=2, A=(I3, I3), w=(1, 0), v=(0, 1))
