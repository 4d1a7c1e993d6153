"""Genus-2 theta sums: factorization, windows, the symmetric subset."""

import cmath
import math
import random
from fractions import Fraction

import pytest

from thetalab import (
    CharPair,
    CharQuad,
    DomainError,
    PeriodMatrix2,
    SymmetricTau,
    Tolerance,
    cubic_period,
    symmetric_tau_from_w,
    theta_char_g1,
    theta_char_g2,
    theta_j,
)

from _oracles import theta_g2_sum

HALF = Fraction(1, 2)
ZERO2 = (0.0, 0.0)


class TestDomain:
    def test_positive_definiteness_enforced(self):
        with pytest.raises(DomainError):
            PeriodMatrix2(1j, 1.2j, 1j)
        with pytest.raises(DomainError):
            PeriodMatrix2(-1j, 0, 1j)

    def test_lambda_min_closed_form(self):
        pm = PeriodMatrix2(1.2j, 0.3j, 1.5j)
        # eigenvalues of [[1.2, .3], [.3, 1.5]]: 1.35 -+ sqrt(0.0225 + 0.09)
        lo = 1.35 - math.sqrt(0.1125)
        assert pm.lambda_min == pytest.approx(lo, rel=1e-14)


class TestSymmetricTau:
    def test_equal_moduli(self):
        st = symmetric_tau_from_w(1j, 1j)
        assert st.tau0 == 2j and st.tau1 == 0 or (st.tau0 == 2j and abs(st.tau1) == 0)

    def test_cubic_choice(self):
        w = 0.7j
        st = symmetric_tau_from_w(3 * w, w)
        assert st.tau0 == 4 * w and st.tau1 == 2 * w

    def test_round_trip_exact(self):
        st = symmetric_tau_from_w(1.2j, 0.7j)
        assert st.tau0 == 1.9j and st.tau1 == 0.5j
        assert st.w1 == 1.2j and st.w2 == 0.7j
        st.to_matrix()  # positive-definiteness check passes

    def test_from_nomes_branch_coherence(self):
        st = SymmetricTau.from_nomes(0.15, 0.35)
        assert abs(st.q - 0.15) < 1e-15
        assert abs(st.r - 0.35) < 1e-15
        assert abs(cmath.exp(2j * math.pi * (st.tau0 + st.tau1)) - (0.15 * 0.35) ** 2) < 1e-15

    def test_from_nomes_domain(self):
        with pytest.raises(DomainError):
            SymmetricTau.from_nomes(0.5, 3.0)


class TestCubicPeriod:
    def test_entries(self):
        pm = cubic_period(1j)
        assert (pm.t11, pm.t12, pm.t22) == (4j, 2j, 4j)
        pm = cubic_period(0.5 + 0.8j)
        assert pm.t11 == 4 * (0.5 + 0.8j) and pm.t12 == 2 * (0.5 + 0.8j)

    def test_lambda_min_is_twice_im_w(self):
        for w in (1j, 0.25 + 0.9j, 2j):
            assert cubic_period(w).lambda_min == pytest.approx(2 * complex(w).imag, rel=1e-13)


class TestEvaluation:
    def test_diagonal_factorizes_to_theta3_squared(self):
        pm = PeriodMatrix2(2j, 0, 2j)
        got = theta_char_g2(CharQuad((0, 0), (0, 0)), ZERO2, pm)
        assert abs(got - theta_j(3, 0, 2j) ** 2) < 1e-12

    def test_half_char_on_cubic_matrix_vs_oracle(self):
        pm = cubic_period(1.1j)
        got = theta_char_g2(CharQuad((HALF, HALF), (0, 0)), ZERO2, pm)
        want = theta_g2_sum(0.5, 0.5, 0, 0, 0, 0, pm.t11, pm.t12, pm.t22, n_max=20)
        assert abs(got - want) < 1e-12

    def test_half_char_diagonal_factorization(self):
        w = 1.0j
        pm = PeriodMatrix2(w, 0, w)
        got = theta_char_g2(CharQuad((HALF, HALF), (0, 0)), ZERO2, pm)
        want = theta_char_g1(CharPair(HALF, 0), 0, w) ** 2
        assert abs(got - want) < 1e-12

    def test_factorization_random_characteristics(self):
        rng = random.Random(5)
        tol = Tolerance(1e-12)
        for _ in range(15):
            d1, d2 = rng.choice((1, 2, 3, 4, 5, 6)), rng.choice((1, 2, 3, 4, 5, 6))
            ch = CharQuad(
                (Fraction(rng.randrange(d1), d1), Fraction(rng.randrange(d2), d2)),
                (Fraction(rng.randrange(d1), d1), Fraction(rng.randrange(d2), d2)),
            )
            w1 = complex(rng.uniform(-0.3, 0.3), rng.uniform(0.8, 1.6))
            w2 = complex(rng.uniform(-0.3, 0.3), rng.uniform(0.8, 1.6))
            z = (complex(rng.uniform(-0.3, 0.3), rng.uniform(-0.2, 0.2)),
                 complex(rng.uniform(-0.3, 0.3), rng.uniform(-0.2, 0.2)))
            pm = PeriodMatrix2(w1, 0, w2)
            got = theta_char_g2(ch, z, pm, tol)
            want = theta_char_g1(CharPair(ch.alpha[0], ch.beta[0]), z[0], w1, tol) \
                * theta_char_g1(CharPair(ch.alpha[1], ch.beta[1]), z[1], w2, tol)
            assert abs(got - want) < 10 * tol.eps

    def test_window_stability(self):
        pm = PeriodMatrix2(1.2j, 0.3j, 1.5j)
        ch = CharQuad((Fraction(1, 3), Fraction(1, 6)), (Fraction(1, 2), Fraction(2, 3)))
        z = (0.1 + 0.05j, -0.2 + 0.02j)
        tol = Tolerance(1e-12)
        from thetalab.genus2 import _window_radius
        base_r = _window_radius(pm.lambda_min, 2 * math.pi * (abs(z[0].imag) + abs(z[1].imag)), tol.eps)
        a = theta_char_g2(ch, z, pm, tol)
        b = theta_char_g2(ch, z, pm, tol, window=base_r + 2)
        assert abs(a - b) < tol.eps

    def test_quasi_periodicity_zeta1(self):
        pm = PeriodMatrix2(1.1j, 0.2j, 1.3j)
        for a1 in (Fraction(0), HALF, Fraction(1, 3)):
            ch = CharQuad((a1, Fraction(1, 6)), (0, 0))
            z = (0.13 + 0.02j, -0.07)
            lhs = theta_char_g2(ch, (z[0] + 1, z[1]), pm)
            rhs = cmath.exp(2j * math.pi * float(a1)) * theta_char_g2(ch, z, pm)
            assert abs(lhs - rhs) < 1e-12

    def test_parity_sign_under_shift(self):
        # [hh;00] flips sign under zeta1 -> zeta1 + 1, [00;00] does not
        pm = symmetric_tau_from_w(1.1j, 0.8j).to_matrix()
        z = (0.21, 0.1)
        even = theta_char_g2(CharQuad((0, 0), (0, 0)), z, pm)
        even_shift = theta_char_g2(CharQuad((0, 0), (0, 0)), (z[0] + 1, z[1]), pm)
        odd = theta_char_g2(CharQuad((HALF, HALF), (0, 0)), z, pm)
        odd_shift = theta_char_g2(CharQuad((HALF, HALF), (0, 0)), (z[0] + 1, z[1]), pm)
        assert abs(even - even_shift) < 1e-12
        assert abs(odd + odd_shift) < 1e-12

    def test_not_a_matrix(self):
        with pytest.raises(DomainError):
            theta_char_g2(CharQuad((0, 0), (0, 0)), ZERO2, 1.2j)
