from fractions import Fraction

import pytest

from fibpow2.bigmath import CompareResult, RealBall, certify_compare
from fibpow2.contfrac import (
    CFExpansion,
    ExpansionExhausted,
    cf_expand,
    first_denominator_exceeding,
    gamma_ball,
    gamma_cf,
    legendre_gap,
    load_expansion,
    max_partial_quotient,
    save_expansion,
)
from fibpow2.golden import load_reference
from fibpow2.quadfield import ALPHA, embed

from oracles import cf_digits_of_interval, gamma_interval

REF = load_reference()["cf"]
M1 = 41 * 10 ** 61
M2 = 42 * 10 ** 61


@pytest.fixture(scope="module")
def gamma():
    return gamma_cf(min_terms=140)


def test_first_thirteen_quotients(gamma):
    assert list(gamma.quotients[:13]) == REF["prefix_13"]


def test_quotients_match_independent_oracle(gamma):
    lo, hi = gamma_interval(1100)
    oracle_digits = cf_digits_of_interval(lo, hi, 140)
    assert len(oracle_digits) >= 120
    n = len(oracle_digits)
    assert list(gamma.quotients[:n]) == oracle_digits


def test_landmark_convergents(gamma):
    assert gamma.denominators[125] == int(REF["q125"])
    assert gamma.numerators[125] == int(REF["p125"])
    assert gamma.denominators[128] == int(REF["q128"])
    assert gamma.denominators[124] < 42 * 10 ** 61


def test_first_denominator_exceeding(gamma):
    j, q = first_denominator_exceeding(gamma, 6 * M1)
    assert (j, q) == (125, int(REF["q125"]))
    j, q = first_denominator_exceeding(gamma, 6 * M2)
    assert j == 125
    assert first_denominator_exceeding(gamma, 0) == (125 * 0, 1)
    j, _ = first_denominator_exceeding(gamma, gamma.denominators[127])
    assert j == 128
    with pytest.raises(ExpansionExhausted):
        first_denominator_exceeding(gamma, gamma.denominators[-1])


def test_max_partial_quotient(gamma):
    assert max_partial_quotient(gamma, 124) == REF["max_partial_quotient_j_le_124"] == 134
    assert max_partial_quotient(gamma, 11) == 11


def test_golden_ratio_expansion():
    cf = cf_expand(lambda prec: embed(ALPHA, prec), 60, start_prec=256)
    assert set(cf.quotients) == {1}
    assert max_partial_quotient(cf, 40) == 1


def test_rational_expansion_terminates():
    cf = cf_expand(Fraction(22, 7), 10)
    assert list(cf.quotients) == [3, 7]
    assert cf.exact
    assert cf.convergent(1) == Fraction(22, 7)


def test_determinant_identity(gamma):
    p, q = gamma.numerators, gamma.denominators
    for j in range(1, len(gamma)):
        assert p[j] * q[j - 1] - p[j - 1] * q[j] == (-1) ** (j - 1)


def test_denominators_strictly_increase(gamma):
    q = gamma.denominators
    for j in range(2, len(gamma)):
        assert q[j] > q[j - 1]


def test_best_approximation_sandwich(gamma):
    ball = gamma_ball(1024)
    for j in range(131):
        p, q = gamma.numerators[j], gamma.denominators[j]
        gap = abs(ball - Fraction(p, q))
        q_next = gamma.denominators[j + 1]
        below = Fraction(1, q * (q_next + q))
        above = Fraction(1, q * q_next)
        assert certify_compare(gap, below) is CompareResult.PROVEN_GREATER
        assert certify_compare(gap, above) is CompareResult.PROVEN_LESS


def test_reexpansion_at_doubled_precision_is_identical(gamma):
    again = cf_expand(gamma_ball, len(gamma), start_prec=2 * gamma.prec)
    assert again.quotients == gamma.quotients


def test_legendre_gap_on_gamma(gamma):
    ball = gamma_ball(1024)
    for j in range(21):
        gap = legendre_gap(gamma, j, ball)
        s_next = gamma.quotients[j + 1]
        q = gamma.denominators[j]
        assert gap.lower() > Fraction(1, (s_next + 2) * q * q)


def test_legendre_gap_on_golden_ratio():
    cf = cf_expand(lambda prec: embed(ALPHA, prec), 30, start_prec=256)
    j = cf.denominators.index(5)
    assert cf.convergent(j) == Fraction(8, 5)
    gap = legendre_gap(cf, j, embed(ALPHA, 512))
    assert gap.lower() > Fraction(1, (1 + 2) * 25)


def test_legendre_gap_exact_terminal():
    cf = cf_expand(Fraction(22, 7), 10)
    gap = legendre_gap(cf, 1, RealBall.from_fraction(Fraction(22, 7), 128))
    assert gap.contains(0)


def test_save_load_roundtrip(tmp_path, gamma):
    path = tmp_path / "cf.json"
    save_expansion(gamma, path)
    again = load_expansion(path)
    assert again == gamma


def test_gamma_cf_disk_cache(tmp_path):
    first = gamma_cf(min_terms=140, cache_dir=tmp_path)
    assert (tmp_path / "gamma_cf.json").exists()
    again = load_expansion(tmp_path / "gamma_cf.json")
    assert again.quotients == first.quotients
