"""Genus-1 theta series, products, characteristic algebra, Dedekind eta."""

import cmath
import math
import random
from fractions import Fraction

import pytest

from thetalab import (
    CharPair,
    DomainError,
    PrecisionError,
    TauPoint,
    Tolerance,
    dedekind_eta,
    reduce_characteristic,
    shift_characteristic,
    theta_char_g1,
    theta_const,
    theta_const_nome,
    theta_j,
    theta_j_product,
)
from thetalab.genus1 import suggested_factor_count
from thetalab.types import MAX_TERMS_ENV

from _oracles import eta_product, theta_j_sum, theta_sum

HALF = Fraction(1, 2)


class TestThetaSeries:
    def test_theta3_at_i_frozen(self):
        # oracle: direct summation |n| <= 10, terms decay like exp(-pi n^2)
        assert theta_char_g1(CharPair(0, 0), 0, 1j) == pytest.approx(
            1.086434811213308, abs=1e-14)

    def test_theta1_constant_vanishes(self):
        # summand is odd under n -> -n-1
        for tau in (1j, 0.7j, 0.3 + 1.4j):
            assert abs(theta_char_g1(CharPair(HALF, HALF), 0, tau)) < 1e-14

    def test_third_characteristic_vs_oracle(self):
        got = theta_char_g1(CharPair(0, Fraction(1, 3)), 0, 1.1j)
        want = theta_sum(0.0, 1.0 / 3.0, 0.0, 1.1j, n_max=25)
        assert abs(got - want) < 1e-13
        assert got == pytest.approx(0.9684354452785313, abs=1e-13)

    def test_q_to_zero_limits(self):
        assert theta_j(3, 0, 50j) == pytest.approx(1.0, abs=1e-15)
        lead = 2 * math.exp(-12.5 * math.pi)
        assert theta_j(2, 0, 50j) == pytest.approx(lead, rel=1e-12)

    def test_theta4_equals_char_path(self):
        u, tau = 0.3, 0.2 + 1.0j
        assert theta_j(4, u, tau) == theta_char_g1(CharPair(0, HALF), u, tau)

    @pytest.mark.parametrize("j", [0, 5, "x"])
    def test_bad_index(self, j):
        with pytest.raises(ValueError):
            theta_j(j, 0, 1j)

    def test_domain_error(self):
        with pytest.raises(DomainError):
            theta_char_g1(CharPair(0, 0), 0, -1j)
        with pytest.raises(DomainError):
            TauPoint(0.5)

    def test_precision_cap(self, monkeypatch):
        monkeypatch.setenv(MAX_TERMS_ENV, "5")
        with pytest.raises(PrecisionError):
            theta_char_g1(CharPair(0, 0), 0, 0.4j, Tolerance(1e-14))

    def test_bad_cap_value(self, monkeypatch):
        monkeypatch.setenv(MAX_TERMS_ENV, "many")
        with pytest.raises(DomainError):
            theta_char_g1(CharPair(0, 0), 0, 1j)

    def test_tail_doubling(self):
        # doubling the truncation index moves nothing beyond the tolerance
        rng = random.Random(7)
        tol = Tolerance(1e-12)
        for _ in range(12):
            tau = complex(rng.uniform(-0.5, 0.5), rng.uniform(0.5, 2.0))
            u = complex(rng.uniform(-1, 1), rng.uniform(-0.5, 0.5))
            ch = CharPair(Fraction(rng.randrange(6), 6), Fraction(rng.randrange(6), 6))
            base = theta_char_g1(ch, u, tau, tol)
            from thetalab.genus1 import _series_cutoff
            n = _series_cutoff(abs(TauPoint(tau).nome), abs(u.imag), tol.eps)
            doubled = theta_char_g1(ch, u, tau, tol, terms=2 * n)
            assert abs(base - doubled) < tol.eps


class TestProperties:
    def test_quasi_periodicity(self):
        for alpha, beta in ((Fraction(1, 3), Fraction(1, 5)), (HALF, 0), (0, HALF)):
            ch = CharPair(alpha, beta)
            u, tau = 0.21 + 0.07j, 1.1j
            lhs = theta_char_g1(ch, u + 1, tau)
            rhs = cmath.exp(2j * math.pi * float(alpha)) * theta_char_g1(ch, u, tau)
            assert abs(lhs - rhs) < 1e-13

    def test_half_shift(self):
        for u, tau in ((0.0, 1j), (0.17, 0.9j), (0.1 + 0.2j, 0.3 + 1.2j)):
            assert abs(theta_j(3, u + 0.5, tau) - theta_j(4, u, tau)) < 1e-13

    def test_evenness_in_beta(self):
        # symmetric truncation makes [0;beta] and [0;1-beta] term-for-term equal
        for beta in (Fraction(1, 3), Fraction(1, 5), Fraction(2, 7)):
            a = theta_const(CharPair(0, beta), 1.2j)
            b = theta_const(CharPair(0, 1 - beta), 1.2j)
            assert abs(a - b) < 1e-14

    def test_jacobi_quartic(self):
        for tau in (1j, 1.5j, 0.3 + 1.2j):
            r = theta_j(3, 0, tau) ** 4 - theta_j(4, 0, tau) ** 4 - theta_j(2, 0, tau) ** 4
            assert abs(r) < 1e-11


class TestProductBackend:
    def test_theta4_product_matches_series(self):
        assert abs(theta_j_product(4, 0, 1j, 40) - theta_j(4, 0, 1j)) < 1e-14

    def test_theta2_product_matches_series(self):
        assert abs(theta_j_product(2, 0, 1.3j, 40) - theta_j(2, 0, 1.3j)) < 1e-13

    def test_theta3_product_q_to_zero(self):
        assert theta_j_product(3, 0.3, 60j, 5) == pytest.approx(1.0, abs=1e-15)

    def test_backend_equivalence_sweep(self):
        rng = random.Random(11)
        tol = Tolerance(1e-12)
        for _ in range(50):
            tau = complex(rng.uniform(-0.5, 0.5), rng.uniform(0.6, 2.0))
            u = complex(rng.uniform(-1, 1), rng.uniform(-0.3, 0.3))
            j = rng.choice((2, 3, 4))
            n = suggested_factor_count(u, tau, tol)
            assert abs(theta_j_product(j, u, tau, n) - theta_j(j, u, tau, tol)) < 10 * tol.eps

    def test_theta1_product_unsupported(self):
        with pytest.raises(ValueError):
            theta_j_product(1, 0, 1j, 10)


class TestCharacteristicAlgebra:
    def test_shift_identity(self):
        phase, ch = shift_characteristic(CharPair(0, HALF), 0, 0, 0.1, 1j)
        assert phase == 1
        assert ch == CharPair(0, HALF)

    @pytest.mark.parametrize("a", [Fraction(1, 5), Fraction(3, 5)])
    def test_shift_two_sided(self, a):
        ch = CharPair(0, HALF)
        b = HALF
        tau = 1.2j
        for u in (0.0, 0.11 + 0.04j):
            phase, new_ch = shift_characteristic(ch, a, b, u, tau)
            lhs = theta_char_g1(ch, u + float(a) * tau + float(b), tau)
            rhs = phase * theta_char_g1(new_ch, u, tau)
            assert abs(lhs - rhs) < 1e-12

    def test_reduce_examples(self):
        phase, canon = reduce_characteristic(CharPair(0, Fraction(5, 6)))
        assert phase == 1 and canon == CharPair(0, Fraction(1, 6))
        phase, canon = reduce_characteristic(CharPair(0, 0))
        assert phase == 1 and canon == CharPair(0, 0)
        phase, canon = reduce_characteristic(CharPair(HALF, 1))
        assert phase == -1 and canon == CharPair(HALF, 0)

    def test_reduce_is_equality_of_constants(self):
        rng = random.Random(3)
        tau = 0.9j
        for _ in range(40):
            num = rng.randrange(-12, 13)
            den = rng.choice((1, 2, 3, 5, 6, 7, 10, 14))
            ch = CharPair(Fraction(rng.randrange(-6, 7), rng.choice((1, 2, 3, 5))),
                          Fraction(num, den))
            phase, canon = reduce_characteristic(ch)
            assert 0 <= canon.alpha < 1 and 0 <= canon.beta < 1
            lhs = theta_const(ch, tau)
            rhs = phase * theta_const(canon, tau)
            assert abs(lhs - rhs) < 1e-12


class TestDedekindEta:
    def test_eta_at_i_frozen(self):
        # oracle: 40-factor direct product
        want = eta_product(1j, 40)
        assert abs(dedekind_eta(1j) - want) < 1e-15
        assert dedekind_eta(1j) == pytest.approx(0.768225422326057, abs=1e-14)

    def test_eta_far_in_upper_half_plane(self):
        assert dedekind_eta(10j) == pytest.approx(math.exp(-2 * math.pi * 10 / 24), rel=1e-15)

    def test_eta_complex_vs_longer_product(self):
        tau = 0.5 + 1.5j
        assert abs(dedekind_eta(tau) - eta_product(tau, 60)) < 1e-14


class TestNomeInterface:
    def test_const_nome_matches_modulus_path(self):
        q = cmath.exp(1j * math.pi * 1.1j)
        ch = CharPair(0, Fraction(1, 3))
        assert abs(theta_const_nome(ch, q) - theta_const(ch, 1.1j)) < 1e-14

    def test_bad_nome(self):
        with pytest.raises(DomainError):
            theta_const_nome(CharPair(0, 0), 1.2)


def test_theta_oracle_cross_check():
    # one broad sweep of the library against the plain oracle
    rng = random.Random(2024)
    for _ in range(20):
        tau = complex(rng.uniform(-0.4, 0.4), rng.uniform(0.6, 1.8))
        u = complex(rng.uniform(-0.8, 0.8), rng.uniform(-0.4, 0.4))
        j = rng.choice((1, 2, 3, 4))
        assert abs(theta_j(j, u, tau) - theta_j_sum(j, u, tau, 40)) < 1e-12
