from __future__ import annotations

import random
from fractions import Fraction as Q

import mpmath
import pytest

import oracles
from orthomod import exactnum as en
from orthomod.errors import IndeterminatePrecision


# --------------------------------------------------------------------------
# Bernoulli numbers

def test_bernoulli_basic_values():
    assert en.bernoulli(0) == 1
    assert en.bernoulli(1) == Q(-1, 2)
    assert en.bernoulli(2) == Q(1, 6)
    assert en.bernoulli(13) == 0
    # frozen from the Akiyama-Tanigawa oracle plus the denominator check below
    assert en.bernoulli(28) == Q(-23749461029, 870)


def test_bernoulli_matches_akiyama_tanigawa_up_to_60():
    for n in range(0, 61):
        expected = oracles.bernoulli_at(n)
        if n == 1:
            # the oracle uses the +1/2 convention
            assert expected == Q(1, 2) and en.bernoulli(1) == Q(-1, 2)
        else:
            assert en.bernoulli(n) == expected, n


def test_von_staudt_clausen_denominators():
    for n in range(2, 61, 2):
        assert en.bernoulli(n).denominator == oracles.von_staudt_clausen_denominator(n)


def test_bernoulli_sign_alternation():
    for n in range(1, 31):
        assert (1 if en.bernoulli(2 * n) > 0 else -1) == (-1) ** (n + 1)


def test_bernoulli_rejects_negative():
    with pytest.raises(ValueError):
        en.bernoulli(-1)


# --------------------------------------------------------------------------
# Bernoulli polynomials

def test_bernoulli_poly_examples():
    assert en.bernoulli_poly(1, 0) == Q(-1, 2)
    assert en.bernoulli_poly(2, Q(1, 2)) == Q(-1, 12)  # x^2 - x + 1/6 at 1/2
    assert en.bernoulli_poly(0, Q(7, 3)) == 1


def test_bernoulli_poly_difference_identity():
    # B_n(x+1) - B_n(x) = n x^{n-1}
    rng = random.Random(11)
    for _ in range(25):
        n = rng.randint(1, 12)
        x = Q(rng.randint(-20, 20), rng.randint(1, 9))
        lhs = en.bernoulli_poly(n, x + 1) - en.bernoulli_poly(n, x)
        assert lhs == n * x ** (n - 1)


# --------------------------------------------------------------------------
# characters and generalized Bernoulli numbers

def test_gen_bernoulli_principal_mod1_is_plain():
    assert en.gen_bernoulli(2, en.CharacterSpec.principal(1)) == Q(1, 6)


def test_gen_bernoulli_chi_minus4():
    assert en.gen_bernoulli(1, en.CharacterSpec.quadratic(-4)) == Q(-1, 2)


def test_gen_bernoulli_chi8_weight2():
    # Four-term sum over the units mod 8 for the (8/.) character.  The value
    # is 2; it was cross-checked against L(2, chi_8) through the functional
    # equation and against partial sums of the series itself.
    assert en.gen_bernoulli(2, en.CharacterSpec.kronecker_of_4d(2)) == 2


def test_gen_bernoulli_chi12_weight2():
    assert en.gen_bernoulli(2, en.CharacterSpec.quadratic(12)) == 4


def test_gen_bernoulli_matches_l_series_numerically():
    # L(2, chi_8) = (2 pi / 8)^2 * sqrt(8)/2 * B_{2,chi}/2 by the functional
    # equation; compare with a long partial sum of sum chi(k)/k^2.
    b = en.gen_bernoulli(2, en.CharacterSpec.quadratic(8))
    with mpmath.workdps(30):
        formula = (2 * mpmath.pi / 8) ** 2 * mpmath.sqrt(8) / 2 * mpmath.mpf(int(b)) / 2
        partial = mpmath.mpf(0)
        for k in range(1, 200001):
            c = en.kronecker(8, k)
            if c:
                partial += mpmath.mpf(c) / (mpmath.mpf(k) ** 2)
        assert abs(partial - formula) < mpmath.mpf("1e-5")


def test_character_spec_validation():
    with pytest.raises(ValueError):
        en.CharacterSpec.quadratic(3)  # 3 mod 4: not a character discriminant
    with pytest.raises(ValueError):
        en.CharacterSpec("kronecker", 0, 4)


# --------------------------------------------------------------------------
# Kronecker symbol

def test_kronecker_examples():
    for n in (1, 2, 3, 10, 97):
        assert en.kronecker(1, n) == 1
    assert en.kronecker(2, 7) == 1
    assert en.kronecker(3, 5) == -1


def test_kronecker_against_residue_tables():
    for p in oracles.primes_up_to(199):
        if p == 2:
            continue
        for a in range(-2 * p, 2 * p + 1):
            assert en.kronecker(a, p) == oracles.legendre_by_table(a, p), (a, p)


def test_kronecker_multiplicativity():
    rng = random.Random(3)
    for _ in range(200):
        a, b = rng.randint(-50, 50), rng.randint(-50, 50)
        n, m = rng.randint(1, 50), rng.randint(1, 50)
        assert en.kronecker(a * b, n) == en.kronecker(a, n) * en.kronecker(b, n)
        assert en.kronecker(a, n * m) == en.kronecker(a, n) * en.kronecker(a, m)


def test_kronecker_agrees_with_gmpy2():
    gmpy2 = pytest.importorskip("gmpy2")
    rng = random.Random(5)
    for _ in range(500):
        a = rng.randint(-300, 300)
        n = rng.randint(-300, 300)
        if a == 0 and n == 0:
            continue
        assert en.kronecker(a, n) == int(gmpy2.kronecker(a, n)), (a, n)


def test_kronecker_discriminant_periodicity():
    # (D/.) is |D|-periodic when D = 0 or 1 mod 4
    for disc in (-4, 8, 12, 5, -3, 28, -20):
        if disc % 4 not in (0, 1):
            continue
        for n in range(1, 80):
            assert en.kronecker(disc, n) == en.kronecker(disc, n + abs(disc))


# --------------------------------------------------------------------------
# arithmetic functions

def test_rho_sigma0_squarefree_examples():
    assert en.rho(12) == 2
    assert en.sigma0(12) == 6
    assert en.squarefree_part(12) == 3
    assert en.rho(1) == 0 and en.sigma0(1) == 1 and en.squarefree_part(1) == 1


def test_squarefree_split_consistency():
    rng = random.Random(1)
    for _ in range(300):
        d = rng.randint(1, 10**6)
        k, s = en.squarefree_split(d)
        assert k * k * s == d
        for p in range(2, 40):
            assert s % (p * p) != 0


# --------------------------------------------------------------------------
# quadratic surds

def test_quadsurd_normalization():
    x = en.QuadSurd(Q(1), Q(1), 8)
    assert (x.a, x.b, x.s) == (Q(1), Q(2), 2)
    assert en.QuadSurd.sqrt_int(9) == en.QuadSurd.from_rational(3)
    assert en.QuadSurd(Q(2), Q(0), 7).s == 1


def test_quadsurd_arithmetic():
    r2 = en.QuadSurd.sqrt_int(2)
    assert r2 * r2 == en.QuadSurd.from_rational(2)
    x = 1 + r2  # int coercion on the left
    y = x * (en.QuadSurd.from_rational(1) - r2)
    assert y == en.QuadSurd.from_rational(-1)  # (1+s)(1-s) = 1-2
    assert (x / x) == en.QuadSurd.from_rational(1)
    assert x**3 == en.QuadSurd(Q(7), Q(5), 2)  # (1+sqrt2)^3 = 7+5 sqrt2
    with pytest.raises(ValueError):
        _ = r2 + en.QuadSurd.sqrt_int(3)


def test_quadsurd_division_by_surd():
    x = en.QuadSurd(Q(3), Q(1), 5)
    y = en.QuadSurd(Q(1), Q(-2), 5)
    assert (x / y) * y == x


def test_quadsurd_order_examples():
    assert en.QuadSurd(Q(1), Q(1), 2) > 2       # 1 + 1.414...
    assert en.QuadSurd(Q(3), Q(-1), 2) > 1      # 3 - 1.414...
    assert en.QuadSurd(Q(0), Q(1), 2) < Q(3, 2)
    assert en.QuadSurd(Q(0), Q(5), 2) == en.QuadSurd(Q(0), Q(1), 50)


def test_quadsurd_value_equality_and_hash():
    assert en.QuadSurd.sqrt_int(4) == 2
    assert en.QuadSurd.from_rational(Q(3, 2)) == Q(3, 2)
    assert en.QuadSurd(Q(1), Q(1), 2) != 2
    assert hash(en.QuadSurd.from_rational(Q(3, 2))) == hash(Q(3, 2))
    assert hash(en.QuadSurd.sqrt_int(4)) == hash(2)


def test_quadsurd_order_against_intervals_bulk():
    rng = random.Random(7)
    iv = mpmath.iv
    old = iv.prec
    iv.prec = 664  # about 200 digits
    try:
        for _ in range(10000):
            s = rng.choice([1, 2, 3, 5, 6, 7, 10, 11, 13, 15])
            x = en.QuadSurd(
                Q(rng.randint(-10**6, 10**6), rng.randint(1, 10**6)),
                Q(rng.randint(-10**6, 10**6), rng.randint(1, 10**6)), s,
            )
            y = en.QuadSurd(
                Q(rng.randint(-10**6, 10**6), rng.randint(1, 10**6)),
                Q(rng.randint(-10**6, 10**6), rng.randint(1, 10**6)), s,
            )
            xi, yi = x.interval(iv), y.interval(iv)
            if xi.b < yi.a:
                assert x < y
            elif xi.a > yi.b:
                assert x > y
            else:
                assert x == y
    finally:
        iv.prec = old


def test_quadsurd_json_roundtrip():
    x = en.QuadSurd(Q(-3, 7), Q(5, 2), 12)
    blob = x.to_json_dict()
    assert blob == {"a": "-3/7", "b": "5/1", "s": 3}  # sqrt(12) = 2 sqrt(3)
    assert en.QuadSurd.from_json_dict(blob) == x


def test_rational_serialization():
    assert en.format_rational(Q(-23749461029, 870)) == "-23749461029/870"
    assert en.format_rational(5) == "5/1"
    assert en.parse_rational("-23749461029/870") == Q(-23749461029, 870)


# --------------------------------------------------------------------------
# Stirling-range check

def test_stirling_bounds_hold_midrange():
    # frozen from direct outward-rounded evaluation
    assert en.stirling_bounds_hold(14) is True   # checks B_28
    assert en.stirling_bounds_hold(21) is True   # checks B_42
    assert all(en.stirling_bounds_hold(n) for n in range(2, 41))


def test_stirling_bounds_fail_at_n1():
    # 5 sqrt(pi) (1/(pi e))^2 = 0.12152... < |B_2| = 1/6: the printed upper
    # bound is genuinely violated at n = 1 (the asymptotic needs n >= 2).
    assert en.stirling_bounds_hold(1) is False


def test_stirling_indeterminate_at_tiny_cap():
    with pytest.raises(IndeterminatePrecision):
        en.stirling_bounds_hold(20, cap_bits=2)


def test_certified_comparison_never_separates_equal_sides():
    with pytest.raises(IndeterminatePrecision):
        en.certified_all_greater(lambda ctx: [(ctx.sqrt(2), ctx.sqrt(2))], cap_bits=256)
