from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from fibpow2.bigmath import CompareResult, certify_compare
from fibpow2.quadfield import (
    ALPHA,
    BETA,
    ONE,
    SQRT5,
    QuadRat,
    Relation,
    alpha_pow,
    decompose_two_alpha,
    embed,
    fibonacci,
    height_quadrat,
    log_alpha,
    lucas,
    qr_conjugate,
    qr_pow,
)

from oracles import ln2_interval, ln5_interval, ln_alpha_interval, sqrt5_interval


def frac(p, q=1):
    return Fraction(p, q)


rationals = st.fractions(
    min_value=Fraction(-20), max_value=Fraction(20), max_denominator=40
)


def quadrats(draw_min=-20):
    return st.builds(QuadRat, rationals, rationals)


def test_pow_basics():
    assert qr_pow(ALPHA, 0) == ONE
    assert qr_pow(ALPHA, 2) == QuadRat(frac(3, 2), frac(1, 2))
    assert qr_pow(ALPHA, 2) == ALPHA + 1


def test_alpha18_identity():
    lhs = (qr_pow(ALPHA, 18) + 1) / (17 * SQRT5)
    assert lhs == 2 * qr_pow(ALPHA, 9)


def test_alpha_pow_matches_binary_pow():
    for r in range(-25, 26):
        assert alpha_pow(r) == qr_pow(ALPHA, r)


def test_negative_pow_of_zero_raises():
    with pytest.raises(ZeroDivisionError):
        qr_pow(QuadRat(frac(0), frac(0)), -1)


def test_conjugate_examples():
    assert qr_conjugate(SQRT5) == -SQRT5
    assert qr_conjugate(ALPHA) == BETA


@given(quadrats(), quadrats())
def test_conjugate_is_multiplicative(x, y):
    assert qr_conjugate(x * y) == qr_conjugate(x) * qr_conjugate(y)


@given(quadrats(), quadrats())
def test_norm_is_multiplicative(x, y):
    assert (x * y).norm() == x.norm() * y.norm()


def test_fibonacci_base_and_known_values():
    assert fibonacci(0) == 0
    assert fibonacci(1) == 1
    a, b = 0, 1
    for _ in range(10):
        a, b = b, a + b
    assert fibonacci(10) == a == 55
    assert fibonacci(18) == 2584
    assert fibonacci(18) + fibonacci(6) == 2592


def test_binet_identity_up_to_400():
    for k in range(401):
        binet = (qr_pow(ALPHA, k) - qr_pow(BETA, k)) / SQRT5
        assert binet == QuadRat(frac(fibonacci(k)), frac(0))


def test_growth_sandwich_certified_up_to_400():
    for k in range(1, 401):
        f = fibonacci(k)
        low = embed(alpha_pow(k - 2), 256)
        high = embed(alpha_pow(k - 1), 256)
        assert certify_compare(low, f) is not CompareResult.PROVEN_GREATER
        assert certify_compare(high, f) is not CompareResult.PROVEN_LESS


def test_decompose_examples():
    x = (qr_pow(ALPHA, 2) + 1) / (2 * SQRT5)
    assert decompose_two_alpha(x) == Relation(1, -1, 1)
    assert decompose_two_alpha(ONE) == Relation(1, 0, 0)
    y = (qr_pow(ALPHA, 3) + 1) / (2 * SQRT5)
    assert decompose_two_alpha(y) is None


def test_decompose_none_matches_exhaustive_check():
    y = (qr_pow(ALPHA, 3) + 1) / (2 * SQRT5)
    hits = []
    for s in range(0, 401):
        for cand in (y * alpha_pow(-s), y * alpha_pow(s)):
            if not cand.is_rational() or cand.a == 0:
                continue
            num, den = abs(cand.a.numerator), cand.a.denominator
            if num & (num - 1) == 0 and den & (den - 1) == 0:
                e = num.bit_length() - den.bit_length()
                if abs(e) <= 64:
                    hits.append((s, e))
    assert hits == []


def test_known_degenerate_inner_values():
    cases = [
        ((qr_pow(ALPHA, 2) + 1) / (2 * SQRT5), Relation(1, -1, 1)),
        ((qr_pow(ALPHA, 6) + 1) / (2 * SQRT5), Relation(1, 0, 3)),
        ((qr_pow(ALPHA, 10) + 1) / (5 * SQRT5), Relation(1, 0, 5)),
        ((qr_pow(ALPHA, 18) + 1) / (17 * SQRT5), Relation(1, 1, 9)),
    ]
    for x, expected in cases:
        assert decompose_two_alpha(x) == expected


@given(
    sign=st.sampled_from([1, -1]),
    e=st.integers(-20, 20),
    s=st.integers(-60, 60),
)
def test_decompose_roundtrip(sign, e, s):
    x = Relation(sign, e, s).value()
    rel = decompose_two_alpha(x)
    assert rel == Relation(sign, e, s)
    assert rel.value() == x


def test_embed_values():
    s5_lo, s5_hi = sqrt5_interval(300)
    a = embed(ALPHA, 256)
    assert a.lower() <= (1 + s5_lo) / 2 and (1 + s5_hi) / 2 <= a.upper()
    b = embed(BETA, 256)
    assert b.lower() <= (1 - s5_hi) / 2 and (1 - s5_lo) / 2 <= b.upper()
    prod = a * b
    assert prod.contains(-1)


def test_height_of_rational():
    lo, hi = ln2_interval(300)
    h = height_quadrat(QuadRat(frac(2), frac(0)), 256)
    assert h.lower() <= lo and hi <= h.upper()
    # h(2/3) = log 3
    from oracles import ln_interval

    h23 = height_quadrat(QuadRat(frac(2, 3), frac(0)), 256)
    lo3, hi3 = ln_interval(Fraction(3), 300)
    assert h23.lower() <= lo3 and hi3 <= h23.upper()


def test_height_of_sqrt5():
    lo, hi = ln5_interval(300)
    h = height_quadrat(SQRT5, 256)
    assert h.lower() <= lo / 2 and hi / 2 <= h.upper()


def test_height_of_alpha():
    lo, hi = ln_alpha_interval(300)
    h = height_quadrat(ALPHA, 256)
    assert h.lower() <= lo / 2 and hi / 2 <= h.upper()
    assert abs(float(h) - 0.2406059) < 1e-6


def test_log_alpha_against_oracle():
    ball = log_alpha(512)
    lo, hi = ln_alpha_interval(600)
    assert ball.lower() <= lo and hi <= ball.upper()


def test_exact_sign():
    assert (ALPHA - 1).sign() == 1
    assert BETA.sign() == -1
    assert (ALPHA * BETA + 1).sign() == 0
    assert QuadRat(frac(-9, 4), frac(1)).sign() == -1  # -2.25 + 2.236...
    assert QuadRat(frac(9, 4), frac(-1)).sign() == 1
