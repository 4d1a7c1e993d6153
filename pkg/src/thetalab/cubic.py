"""Borwein a, b, c series, their theta-constant faces, and cube-sum identities.

One-parameter series (omega = exp(2*pi*i/3)):

    a(q) = sum q^(m^2+mn+n^2)
    b(q) = sum omega^(m-n) q^(m^2+mn+n^2)
    c(q) = sum q^((m+1/3)^2 + (m+1/3)(n+1/3) + (n+1/3)^2)

Two-parameter variants replace the exponent by m^2+n^2 on q and 2mn on r;
r^2 = q recovers the one-parameter case with the identical summand.  omega
is kept as an exact root of unity in the summand so the heavy cancellation
in b stays accurate.

The cube-sum identities pair each characteristic cube with the phase
exp(+2*pi*i * 3 a'.a'').  The conjugate pairing (minus sign in the
exponent) fails numerically at O(1); its residual is computed too and
reported in the details as ``conjugate_pairing_residual``.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction
from typing import Optional, Union

from .types import (
    PI,
    CharPair,
    CharQuad,
    CompensatedSum,
    DomainError,
    IdentityReport,
    PeriodMatrix2,
    TauPoint,
    Tolerance,
    as_tau,
    as_tolerance,
    tau_from_nome,
)
from .genus1 import _e_rat, theta_char_g1, theta_j
from .genus2 import cubic_period, theta_char_g2

__all__ = [
    "abc_series",
    "abc_theta_links",
    "bba_check",
    "bbc_check",
    "cubic_identity",
    "cube_sum_identity",
]

_THIRD = Fraction(1, 3)
_OMEGA_EXP = Fraction(1, 3)  # omega = e[1/3]


def _default_window(tol_eps: float, *scales: float) -> int:
    s = max(scales)
    if not (0.0 < s < 1.0):
        raise DomainError(f"nome magnitude {s} is outside (0, 1)")
    eps = min(tol_eps, 1e-13)
    return max(20, math.ceil(math.sqrt(2.0 * (-math.log(eps)) / (-math.log(s)))))


def abc_series(which: str, q_nome: complex, r_nome: Optional[complex] = None,
               window: Optional[int] = None,
               tol: Optional[Tolerance] = None) -> complex:
    """Brute-force lattice sum for a, b or c over |m|, |n| <= window.

    This double sum is deliberately plain: it is the module's own oracle,
    against which the theta-constant representations are checked.  Without
    ``r_nome`` the one-parameter series is summed (the r^2 = q case);
    fractional powers of complex nomes take the principal branch.
    """
    if which not in ("a", "b", "c"):
        raise DomainError(f"series must be one of a, b, c, got {which!r}")
    q = complex(q_nome)
    tol = as_tolerance(tol)
    if q == 0 or abs(q) >= 1.0:
        raise DomainError(f"need 0 < |q| < 1, got |q| = {abs(q)}")
    log_q = cmath.log(q)
    if r_nome is None:
        log_r = None
        if window is None:
            window = _default_window(tol.eps, abs(q))
    else:
        r = complex(r_nome)
        if r == 0:
            raise DomainError("r nome must be nonzero")
        if abs(q * r) >= 1.0 or abs(q / r) >= 1.0:
            raise DomainError("need |q*r| < 1 and |q/r| < 1 for convergence")
        log_r = cmath.log(r)
        if window is None:
            window = _default_window(tol.eps, abs(q * r), abs(q / r))
    shift = _THIRD if which == "c" else Fraction(0)
    sf = float(shift)
    acc = CompensatedSum()
    for mm in range(-window, window + 1):
        m = mm + sf
        for nn in range(-window, window + 1):
            n = nn + sf
            if log_r is None:
                expo = (m * m + m * n + n * n) * log_q
            else:
                expo = (m * m + n * n) * log_q + 2.0 * m * n * log_r
            term = cmath.exp(expo)
            if which == "b":
                term *= _e_rat(_OMEGA_EXP * (mm - nn))
            acc.add(term)
    return acc.value


def abc_theta_links(q_nome: complex, tol: Optional[Tolerance] = None) -> IdentityReport:
    """a(q^4), b(q^4), c(q^4) against genus-2 constants on the cubic matrix.

    With q = exp(pi*i*w) and tau = [[4w,2w],[2w,4w]]:

        a(q^4) = [00;00],  b(q^4) = [00;1/3 2/3],  c(q^4) = [1/3 1/3;00].
    """
    tol = as_tolerance(tol)
    w = tau_from_nome(complex(q_nome))
    pm = cubic_period(w)
    zeta = (0.0, 0.0)
    q4 = complex(q_nome) ** 4
    pairs = {
        "a": (abc_series("a", q4, tol=tol),
              theta_char_g2(CharQuad((0, 0), (0, 0)), zeta, pm, tol)),
        "b": (abc_series("b", q4, tol=tol),
              theta_char_g2(CharQuad((0, 0), (_THIRD, 2 * _THIRD)), zeta, pm, tol)),
        "c": (abc_series("c", q4, tol=tol),
              theta_char_g2(CharQuad((_THIRD, _THIRD), (0, 0)), zeta, pm, tol)),
    }
    residuals = {k: abs(lhs - rhs) for k, (lhs, rhs) in pairs.items()}
    worst = max(residuals, key=residuals.get)
    details = {f"{k}_residual": v for k, v in residuals.items()}
    return IdentityReport.build(
        "cubic.links", {"q": complex(q_nome)},
        pairs[worst][0], pairs[worst][1], residuals[worst], tol.eps * 1000,
        details=details,
    )


def bba_check(q_nome: complex, tol: Optional[Tolerance] = None) -> IdentityReport:
    """a(q^4) = (theta3(q^3) theta3(q) + theta4(q^3) theta4(q)) / 2,

    theta constants written as functions of the nome."""
    tol = as_tolerance(tol)
    q = complex(q_nome)
    w = tau_from_nome(q)
    w3 = w.scaled(3)
    lhs = abc_series("a", q ** 4, tol=tol)
    rhs = 0.5 * (theta_j(3, 0.0, w3, tol) * theta_j(3, 0.0, w, tol)
                 + theta_j(4, 0.0, w3, tol) * theta_j(4, 0.0, w, tol))
    return IdentityReport.build(
        "cubic.bba", {"q": q}, lhs, rhs, abs(lhs - rhs), tol.eps * 1000,
    )


def bbc_check(q_nome, tol: Optional[Tolerance] = None) -> IdentityReport:
    """b(q) = 3/2 a(q^3) - 1/2 a(q) and c(q) = 1/2 a(q^(1/3)) - 1/2 a(q).

    Restricted to real q in (0, 1): the q^(1/3) is the principal real cube
    root, and guessing a branch for complex q is worse than refusing.
    """
    tol = as_tolerance(tol)
    if isinstance(q_nome, complex) and q_nome.imag != 0.0:
        raise DomainError("bbc_check needs real q in (0, 1) for the q^(1/3) branch")
    q = float(q_nome.real if isinstance(q_nome, complex) else q_nome)
    if not (0.0 < q < 1.0):
        raise DomainError(f"need real q in (0, 1), got {q}")
    a_q = abc_series("a", q, tol=tol)
    b_res = abs(abc_series("b", q, tol=tol) - (1.5 * abc_series("a", q ** 3, tol=tol) - 0.5 * a_q))
    c_res = abs(abc_series("c", q, tol=tol) - (0.5 * abc_series("a", q ** (1.0 / 3.0), tol=tol) - 0.5 * a_q))
    residual = max(b_res, c_res)
    return IdentityReport.build(
        "cubic.bbc", {"q": q}, None, None, residual, tol.eps * 1000,
        details={"b_residual": b_res, "c_residual": c_res},
    )


def cubic_identity(q_nome: complex, r_nome: Optional[complex] = None,
                   tol: Optional[Tolerance] = None) -> IdentityReport:
    """Residual of a^3 = b^3 + c^3.

    Holds on the one-parameter diagonal (r^2 = q).  Off the diagonal the sum
    rule genuinely breaks; the report is flagged expected-fail there and the
    nonzero residual is the data.
    """
    tol = as_tolerance(tol)
    a = abc_series("a", q_nome, r_nome, tol=tol)
    b = abc_series("b", q_nome, r_nome, tol=tol)
    c = abc_series("c", q_nome, r_nome, tol=tol)
    lhs = a ** 3
    rhs = b ** 3 + c ** 3
    on_diagonal = r_nome is None or abs(complex(r_nome) ** 2 - complex(q_nome)) < 1e-12
    expected = "pass" if on_diagonal else "expected_fail"
    ident = "cubic.identity" if on_diagonal else "cubic.identity.offdiag"
    params = {"q": complex(q_nome)}
    if r_nome is not None:
        params["r"] = complex(r_nome)
    return IdentityReport.build(
        ident, params, lhs, rhs, abs(lhs - rhs), tol.eps * 1000, expected=expected,
    )


_THIRDS = (Fraction(0), Fraction(1, 3), Fraction(2, 3))


def cube_sum_identity(genus: int, tau_or_matrix, tol: Optional[Tolerance] = None) -> IdentityReport:
    """Cube-sum identity over third-integer characteristics.

    genus 1:  3 [0;0]^3 = sum over a', a'' in {0,1/3,2/3} of
              e[3 a' a''] [a';a'']^3                     (9 terms)
    genus 2:  9 [00;00]^3 = sum over a', a'' in {0,1/3,2/3}^2 of
              e[3 a'.a''] [a';a'']^3                     (81 terms)

    The genus-2 matrix may be any valid period matrix, not only the cubic
    subset.  Terms are collected in lexicographic characteristic order and
    combined with compensated sums.
    """
    tol = as_tolerance(tol)
    if genus == 1:
        tau = as_tau(tau_or_matrix)
        base = theta_char_g1(CharPair(0, 0), 0.0, tau, tol)
        lhs = 3.0 * base ** 3
        acc = CompensatedSum()
        acc_conj = CompensatedSum()
        for ap in _THIRDS:
            for app in _THIRDS:
                cube = theta_char_g1(CharPair(ap, app), 0.0, tau, tol) ** 3
                pairing = 3 * ap * app
                acc.add(_e_rat(pairing) * cube)
                acc_conj.add(_e_rat(-pairing) * cube)
        params = {"tau": tau.tau}
        ident = "thetaR3.g1"
    elif genus == 2:
        pm = tau_or_matrix
        if not isinstance(pm, PeriodMatrix2):
            raise DomainError("genus-2 input must be a PeriodMatrix2")
        zeta = (0.0, 0.0)
        base = theta_char_g2(CharQuad((0, 0), (0, 0)), zeta, pm, tol)
        lhs = 9.0 * base ** 3
        acc = CompensatedSum()
        acc_conj = CompensatedSum()
        for a1 in _THIRDS:
            for a2 in _THIRDS:
                for b1 in _THIRDS:
                    for b2 in _THIRDS:
                        cube = theta_char_g2(CharQuad((a1, a2), (b1, b2)), zeta, pm, tol) ** 3
                        pairing = 3 * (a1 * b1 + a2 * b2)
                        acc.add(_e_rat(pairing) * cube)
                        acc_conj.add(_e_rat(-pairing) * cube)
        params = {"t11": pm.t11, "t12": pm.t12, "t22": pm.t22}
        ident = "thetaR3.g2"
    else:
        raise DomainError(f"genus must be 1 or 2, got {genus!r}")
    rhs = acc.value
    tolerance = tol.eps * (100 if genus == 1 else 10000)
    return IdentityReport.build(
        ident, params, lhs, rhs, abs(lhs - rhs), tolerance,
        details={
            "pairing": "e[+3 a'.a'']",
            "conjugate_pairing_residual": abs(lhs - acc_conj.value),
            "terms": 9 if genus == 1 else 81,
        },
    )
