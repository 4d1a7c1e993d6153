"""Genus-1 theta functions with rational characteristics, and Dedekind eta.

The defining sum, with e[x] = exp(2*pi*i*x) and q = exp(pi*i*tau), is

    theta[alpha; beta](u, tau) = sum_n e[ (n+alpha)^2 * tau / 2 + (n+alpha)(u+beta) ]
                               = sum_n q^((n+alpha)^2) e[(n+alpha) u] e[(n+alpha) beta].

The classical labels are thin wrappers over that single code path:

    theta1 = -theta[1/2; 1/2]     theta2 = theta[1/2; 0]
    theta3 = theta[0;   0]        theta4 = theta[0;   1/2]

The sign of theta1 is a convention choice; the minus makes
theta1(u, tau) = 2 q^(1/4) sin(pi*u) * (1 + O(q^2)) real-positive for small
real u and purely imaginary tau.  Identities in this package only ever use
theta1 squared or in pairs, so the choice never leaks into a residual.

Rational phase factors e[(n+alpha) beta] are evaluated from the exactly
reduced fraction (n+alpha)*beta mod 1, so characteristic symmetries such as
[0; beta] = [0; 1-beta] hold to machine rounding rather than to the series
tolerance, and repeated runs are bit-for-bit reproducible.

Dedekind eta is the one operation here on the other nome convention,
qbar = exp(2*pi*i*tau).
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Union

from .types import (
    PI,
    CharPair,
    CompensatedSum,
    DomainError,
    PrecisionError,
    TauPoint,
    Tolerance,
    as_fraction,
    as_tau,
    as_tolerance,
    max_terms,
    tau_from_nome,
)

__all__ = [
    "theta_char_g1",
    "theta_const",
    "theta_const_nome",
    "theta_j",
    "theta_j_product",
    "suggested_factor_count",
    "shift_characteristic",
    "reduce_characteristic",
    "dedekind_eta",
    "BOUNDARY_IM",
    "BOUNDARY_EPS",
]

# Near the real axis the Gaussian decay of the series degrades; instead of
# switching precision we loosen the effective tolerance below this Im(tau).
BOUNDARY_IM = 0.3
BOUNDARY_EPS = 1e-9

_J_CHARS = {
    1: (CharPair(Fraction(1, 2), Fraction(1, 2)), -1.0),
    2: (CharPair(Fraction(1, 2), 0), 1.0),
    3: (CharPair(0, 0), 1.0),
    4: (CharPair(0, Fraction(1, 2)), 1.0),
}


_QUARTER_ROOTS = {(0, 1): 1.0 + 0.0j, (1, 2): -1.0 + 0.0j,
                  (1, 4): 1.0j, (3, 4): -1.0j}


@lru_cache(maxsize=4096)
def _root_of_unity(num: int, den: int) -> complex:
    # exact values on the quarter lattice keep half-integer phases sign-exact
    try:
        return _QUARTER_ROOTS[(num, den)]
    except KeyError:
        return cmath.exp(2j * PI * (num / den))


def _e_rat(fr: Fraction) -> complex:
    """e[fr] for exact rational fr, reduced mod 1 before exponentiating."""
    fr = fr % 1
    return _root_of_unity(fr.numerator, fr.denominator)


def _effective_eps(tau: TauPoint, tol: Tolerance) -> float:
    if tau.tau.imag < BOUNDARY_IM:
        return max(tol.eps, BOUNDARY_EPS)
    return tol.eps


def _series_cutoff(q_abs: float, im_u: float, eps: float) -> int:
    """Minimal N with |q|^((N-1)^2) e^(2 pi (N+1) |Im u|) / (1-|q|) < eps/4.

    The tail of the theta sum beyond |n+alpha| <= N is dominated by a
    geometric series under that bound; the factor 4 is the safety margin.
    """
    if q_abs >= 1.0:
        raise DomainError("Im(tau) must be positive")
    cap = max_terms()
    growth = 2.0 * PI * abs(im_u)
    target = math.log(eps / 4.0) + math.log1p(-q_abs)
    log_q = math.log(q_abs)
    n = 1
    while (n - 1) ** 2 * log_q + (n + 1) * growth >= target:
        n += 1
        if n > cap:
            raise PrecisionError(
                f"theta series needs more than {cap} terms for eps={eps:g}"
                " (raise THETA_LAB_MAX_TERMS or loosen the tolerance)"
            )
    return n


def theta_char_g1(ch: CharPair, u: complex, tau: Union[TauPoint, complex],
                  tol: Optional[Tolerance] = None, *, terms: Optional[int] = None) -> complex:
    """theta[alpha; beta](u, tau) by the defining sum, tail below tol.eps.

    ``terms`` overrides the automatic cutoff index (used by the tail-doubling
    checks); the hard cap still applies.
    """
    tau = as_tau(tau)
    tol = as_tolerance(tol)
    u = complex(u)
    alpha, beta = ch.alpha, ch.beta
    eps = _effective_eps(tau, tol)
    q_abs = abs(tau.nome)
    if terms is None:
        n_max = _series_cutoff(q_abs, u.imag, eps)
    else:
        n_max = int(terms)
        if n_max > max_terms():
            raise PrecisionError(f"requested {n_max} terms exceeds the cap {max_terms()}")
    # include every integer n with |n + alpha| <= n_max
    lo = math.ceil(-alpha - n_max)
    hi = math.floor(-alpha + n_max)
    ipt = 1j * PI * tau.tau
    two_pi_i_u = 2j * PI * u
    acc = CompensatedSum()
    for n in range(lo, hi + 1):
        m = n + alpha
        mf = float(m)
        term = cmath.exp(ipt * mf * mf + two_pi_i_u * mf) * _e_rat(m * beta)
        acc.add(term)
    return acc.value


def theta_const(ch: CharPair, tau: Union[TauPoint, complex],
                tol: Optional[Tolerance] = None) -> complex:
    """Theta constant [alpha; beta](tau) = theta[alpha; beta](0, tau)."""
    return theta_char_g1(ch, 0.0, tau, tol)


def theta_const_nome(ch: CharPair, q: complex, tol: Optional[Tolerance] = None) -> complex:
    """Theta constant as a function of the nome q = exp(pi*i*tau).

    The modulus is recovered through the principal logarithm, so fractional
    powers of q implied by fractional characteristics are all on the same
    branch (for real q in (0,1): the positive real roots).
    """
    return theta_char_g1(ch, 0.0, tau_from_nome(q), tol)


def theta_j(j: int, u: complex, tau: Union[TauPoint, complex],
            tol: Optional[Tolerance] = None) -> complex:
    """Classical theta_j, j in 1..4, as a wrapper over theta_char_g1."""
    try:
        ch, sign = _J_CHARS[j]
    except (KeyError, TypeError):
        raise ValueError(f"theta index must be 1, 2, 3 or 4, got {j!r}") from None
    return sign * theta_char_g1(ch, u, tau, tol)


def suggested_factor_count(u: complex, tau: Union[TauPoint, complex],
                           tol: Optional[Tolerance] = None) -> int:
    """Number of triple-product factors for a tail below tol.eps."""
    tau = as_tau(tau)
    tol = as_tolerance(tol)
    eps = _effective_eps(tau, tol)
    q_abs = abs(tau.nome)
    z2 = abs(cmath.exp(2j * PI * complex(u)))
    scale = 2.0 + z2 + 1.0 / z2
    cap = max_terms()
    n = 1
    while scale * q_abs ** (2 * n - 1) / (1.0 - q_abs * q_abs) >= eps / 4.0:
        n += 1
        if n > cap:
            raise PrecisionError(f"product needs more than {cap} factors for eps={eps:g}")
    return n


def theta_j_product(j: int, u: complex, tau: Union[TauPoint, complex],
                    n_factors: int) -> complex:
    """Partial triple product for theta_j, j in 2..4.

    theta4 = prod (1-q^2n)(1-q^(2n-1) z^2)(1-q^(2n-1) z^-2)
    theta3 = prod (1-q^2n)(1+q^(2n-1) z^2)(1+q^(2n-1) z^-2)
    theta2 = 2 q^(1/4) cos(pi u) prod (1-q^2n)(1+q^2n z^2)(1+q^2n z^-2)

    with z = exp(pi*i*u).  theta1 is excluded: its zero factor bookkeeping
    differs and nothing downstream needs it.
    """
    if j not in (2, 3, 4):
        raise ValueError(f"product form supports j in 2..4 only, got {j!r}")
    if n_factors < 1:
        raise ValueError("n_factors must be at least 1")
    tau = as_tau(tau)
    u = complex(u)
    q = tau.nome
    z2 = cmath.exp(2j * PI * u)
    z2_inv = 1.0 / z2
    prod = 1.0 + 0.0j
    if j == 4:
        for n in range(1, n_factors + 1):
            qe = q ** (2 * n - 1)
            prod *= (1.0 - qe * q) * (1.0 - qe * z2) * (1.0 - qe * z2_inv)
    elif j == 3:
        for n in range(1, n_factors + 1):
            qe = q ** (2 * n - 1)
            prod *= (1.0 - qe * q) * (1.0 + qe * z2) * (1.0 + qe * z2_inv)
    else:
        for n in range(1, n_factors + 1):
            qe = q ** (2 * n)
            prod *= (1.0 - qe) * (1.0 + qe * z2) * (1.0 + qe * z2_inv)
        prod *= 2.0 * cmath.exp(1j * PI * tau.tau / 4.0) * cmath.cos(PI * u)
    return prod


def shift_characteristic(ch: CharPair, a, b, u: complex,
                         tau: Union[TauPoint, complex]) -> tuple[complex, CharPair]:
    """Phase and characteristic for the argument shift u -> u + a*tau + b.

    Returns (phase, new_ch) with

        theta[r; s](u + a*tau + b, tau) = phase * theta[r+a; s+b](u, tau),
        phase = e[-a^2 tau / 2 - a (u + s + b)].
    """
    tau = as_tau(tau)
    a = as_fraction(a)
    b = as_fraction(b)
    u = complex(u)
    af = float(a)
    phase = cmath.exp(2j * PI * (-0.5 * af * af * tau.tau - af * u)) \
        * _e_rat(-a * (ch.beta + b))
    return phase, CharPair(ch.alpha + a, ch.beta + b)


def reduce_characteristic(ch: CharPair) -> tuple[complex, CharPair]:
    """Canonical form of a characteristic for theta constants (u = 0).

    Returns (sign_phase, canonical) with

        [alpha; beta](tau) = sign_phase * [canonical](tau)   for every tau,

    where canonical has alpha, beta in [0, 1).  Uses, in order: alpha
    translation (free), beta translation ([a; b+1] = e[a] [a; b]), and the
    n -> -n flip ([a; b] = [-a; -b], constants only) whenever the flip
    strictly lowers beta.
    """
    alpha = ch.alpha % 1
    beta = ch.beta
    phase_exp = Fraction(0)
    k = math.floor(beta)
    beta -= k
    phase_exp += k * alpha
    # flip candidate: [alpha; beta] = [-alpha; -beta], then renormalize
    alpha_f = (-alpha) % 1
    if beta != 0:
        beta_f = 1 - beta
        extra = -alpha_f
    else:
        beta_f = Fraction(0)
        extra = Fraction(0)
    if beta_f < beta:
        alpha, beta = alpha_f, beta_f
        phase_exp += extra
    return _e_rat(phase_exp), CharPair(alpha, beta)


def dedekind_eta(tau: Union[TauPoint, complex], tol: Optional[Tolerance] = None) -> complex:
    """eta(tau) = qbar^(1/24) prod (1 - qbar^n) with qbar = exp(2*pi*i*tau).

    Note the nome convention: this is the single operation on qbar rather
    than q.  The fractional prefactor is exp(pi*i*tau/12), which needs no
    branch choice.
    """
    tau = as_tau(tau)
    tol = as_tolerance(tol)
    eps = _effective_eps(tau, tol)
    qb = tau.nome_eta
    qb_abs = abs(qb)
    cap = max_terms()
    # factors are cheap and the CLI prints 15 decimals: leave a wide margin
    eps = eps * 1e-3
    n_factors = 1
    while qb_abs ** (n_factors + 1) / (1.0 - qb_abs) >= eps / 4.0:
        n_factors += 1
        if n_factors > cap:
            raise PrecisionError(f"eta product needs more than {cap} factors for eps={eps:g}")
    prod = cmath.exp(1j * PI * tau.tau / 12.0)
    qn = 1.0 + 0.0j
    for _ in range(n_factors):
        qn *= qb
        prod *= (1.0 - qn)
    return prod
