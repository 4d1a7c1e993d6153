"""Products of two genus-1 thetas as sums of two genus-2 values, and back.

With moduli w1, w2 and the symmetric period data tau0 = w1 + w2,
tau1 = w1 - w2, every product theta_i(x, w1) theta_j(y, w2) splits over the
two parity classes of the index change (m, n) -> (m+n, m-n), landing on the
genus-2 constants at zeta = (x+y, x-y):

    theta3 theta3 = [00;00] + [hh;00]      theta4 theta4 = [00;00] - [hh;00]
    theta2 theta2 = [0h;00] + [h0;00]      theta1 theta1 = [0h;00] - [h0;00]

(h = 1/2).  Setting w1 = w2 = w collapses the genus-2 side onto products of
genus-1 thetas at 2w, giving the classical duplication formulas; the same
split in nome form gives the general characteristic decomposition over
q1 = (q r)^2, q2 = (q/r)^2.

Half-integer (and other rational) characteristics are summed over the
shifted lattice m - alpha in Z^2 directly rather than re-indexed, so the
even/odd parity split needs no off-by-one bookkeeping.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Optional, Union

from .types import (
    CharPair,
    CharQuad,
    DomainError,
    IdentityReport,
    SymmetricTau,
    TauPoint,
    Tolerance,
    as_fraction,
    as_tau,
    as_tolerance,
)
from .genus1 import theta_char_g1, theta_j
from .genus2 import cubic_period, symmetric_tau_from_w, theta_char_g2

__all__ = [
    "double_product_split",
    "inverse_combine",
    "duplication",
    "landen_from_double",
    "general_char_split",
    "cubic_char_equality",
]

_HALF = Fraction(1, 2)

_G2_CHARS = {
    "g2_00": CharQuad((0, 0), (0, 0)),
    "g2_halfhalf": CharQuad((_HALF, _HALF), (0, 0)),
    "g2_0half": CharQuad((0, _HALF), (0, 0)),
    "g2_half0": CharQuad((_HALF, 0), (0, 0)),
}

_SPLIT_RULES = {
    # kind -> (j, plus_char, minus_char)
    "33": (3, "g2_00", "g2_halfhalf", +1),
    "44": (4, "g2_00", "g2_halfhalf", -1),
    "22": (2, "g2_0half", "g2_half0", +1),
    "11": (1, "g2_0half", "g2_half0", -1),
}


def double_product_split(kind: str, x: complex, y: complex,
                         w1: Union[TauPoint, complex], w2: Union[TauPoint, complex],
                         tol: Optional[Tolerance] = None) -> tuple[complex, complex]:
    """Both sides of the split for kind in {"33", "44", "22", "11"}.

    Returns (lhs, rhs); |lhs - rhs| is the caller's residual.
    """
    try:
        j, plus_key, minus_key, sign = _SPLIT_RULES[str(kind)]
    except KeyError:
        raise DomainError(f"kind must be one of 33, 44, 22, 11, got {kind!r}") from None
    tol = as_tolerance(tol)
    x = complex(x)
    y = complex(y)
    st = symmetric_tau_from_w(w1, w2)
    pm = st.to_matrix()
    zeta = (x + y, x - y)
    lhs = theta_j(j, x, as_tau(w1), tol) * theta_j(j, y, as_tau(w2), tol)
    rhs = theta_char_g2(_G2_CHARS[plus_key], zeta, pm, tol) \
        + sign * theta_char_g2(_G2_CHARS[minus_key], zeta, pm, tol)
    return lhs, rhs


_INVERSE_RULES = {
    # which -> (j_a, j_b, sign): value = (theta_ja theta_ja' + sign theta_jb theta_jb')/2
    "g2_00": (3, 4, +1),
    "g2_halfhalf": (3, 4, -1),
    "g2_0half": (2, 1, +1),
    "g2_half0": (2, 1, -1),
}


def inverse_combine(which: str, x: complex, y: complex,
                    w1: Union[TauPoint, complex], w2: Union[TauPoint, complex],
                    tol: Optional[Tolerance] = None) -> tuple[complex, complex]:
    """Genus-2 value at zeta = (x+y, x-y) against its half-sum of products.

    E.g. [00;00] = (theta3(x,w1) theta3(y,w2) + theta4(x,w1) theta4(y,w2))/2.
    """
    try:
        j_a, j_b, sign = _INVERSE_RULES[str(which)]
    except KeyError:
        raise DomainError(
            f"which must be one of g2_00, g2_halfhalf, g2_0half, g2_half0, got {which!r}"
        ) from None
    tol = as_tolerance(tol)
    x = complex(x)
    y = complex(y)
    st = symmetric_tau_from_w(w1, w2)
    lhs = theta_char_g2(_G2_CHARS[which], (x + y, x - y), st.to_matrix(), tol)
    ta1, ta2 = as_tau(w1), as_tau(w2)
    rhs = 0.5 * (theta_j(j_a, x, ta1, tol) * theta_j(j_a, y, ta2, tol)
                 + sign * theta_j(j_b, x, ta1, tol) * theta_j(j_b, y, ta2, tol))
    return lhs, rhs


_DUP_RULES = {
    # kind -> (j, (jp, jq), (jr, js), sign):
    #   theta_j(x,w) theta_j(y,w) =
    #     theta_jp(x+y,2w) theta_jq(x-y,2w) + sign theta_jr(x+y,2w) theta_js(x-y,2w)
    "33": (3, (3, 3), (2, 2), +1),
    "44": (4, (3, 3), (2, 2), -1),
    "22": (2, (3, 2), (2, 3), +1),
    "11": (1, (3, 2), (2, 3), -1),
}


def duplication(kind: str, x: complex, y: complex, w: Union[TauPoint, complex],
                tol: Optional[Tolerance] = None) -> tuple[complex, complex]:
    """Both sides of the tau -> 2 tau duplication formulas (w1 = w2 = w)."""
    try:
        j, (jp, jq), (jr, js), sign = _DUP_RULES[str(kind)]
    except KeyError:
        raise DomainError(f"kind must be one of 33, 44, 22, 11, got {kind!r}") from None
    tol = as_tolerance(tol)
    x = complex(x)
    y = complex(y)
    w = as_tau(w)
    w2 = w.scaled(2)
    lhs = theta_j(j, x, w, tol) * theta_j(j, y, w, tol)
    rhs = theta_j(jp, x + y, w2, tol) * theta_j(jq, x - y, w2, tol) \
        + sign * theta_j(jr, x + y, w2, tol) * theta_j(js, x - y, w2, tol)
    return lhs, rhs


def landen_from_double(u: complex, tau: Union[TauPoint, complex],
                       tol: Optional[Tolerance] = None) -> IdentityReport:
    """theta4(u,tau) theta3(u,tau) = theta4(2u,2tau) theta4(0,2tau).

    The order-2 ratio identity, rederived from the 44-split at
    x = u + 1/2, y = u.
    """
    tau = as_tau(tau)
    tol = as_tolerance(tol)
    u = complex(u)
    t2 = tau.scaled(2)
    lhs = theta_j(4, u, tau, tol) * theta_j(3, u, tau, tol)
    rhs = theta_j(4, 2 * u, t2, tol) * theta_j(4, 0.0, t2, tol)
    return IdentityReport.build(
        "dp.landen", {"u": u, "tau": tau.tau}, lhs, rhs, abs(lhs - rhs), tol.eps * 100,
    )


def general_char_split(alpha, beta, q_nome: complex, r_nome: complex,
                       tol: Optional[Tolerance] = None) -> tuple[complex, complex]:
    """Genus-2 constant in nome form against its two genus-1 products.

    lhs = [a1 a2; b1 b2](q, r)
        = sum q^((m+a1)^2 + (n+a2)^2) r^(2(m+a1)(n+a2)) e[(m+a1) b1 + (n+a2) b2]

    rhs = [(a1+a2)/2      ; b1+b2](q1) * [(a1-a2)/2      ; b1-b2](q2)
        + [(a1+a2)/2 + 1/2; b1+b2](q1) * [(a1-a2)/2 + 1/2; b1-b2](q2)

    with q1 = (q r)^2 and q2 = (q/r)^2.  All nome-to-modulus conversion goes
    through SymmetricTau.from_nomes, so both sides sit on one branch.
    """
    a1, a2 = (as_fraction(a) for a in alpha)
    b1, b2 = (as_fraction(b) for b in beta)
    tol = as_tolerance(tol)
    st = SymmetricTau.from_nomes(q_nome, r_nome)
    lhs = theta_char_g2(CharQuad((a1, a2), (b1, b2)), (0.0, 0.0), st.to_matrix(), tol)
    tau1 = TauPoint(st.tau_q1)
    tau2 = TauPoint(st.tau_q2)
    half_sum = (a1 + a2) / 2
    half_diff = (a1 - a2) / 2
    rhs = theta_char_g1(CharPair(half_sum, b1 + b2), 0.0, tau1, tol) \
        * theta_char_g1(CharPair(half_diff, b1 - b2), 0.0, tau2, tol) \
        + theta_char_g1(CharPair(half_sum + _HALF, b1 + b2), 0.0, tau1, tol) \
        * theta_char_g1(CharPair(half_diff + _HALF, b1 - b2), 0.0, tau2, tol)
    return lhs, rhs


def cubic_char_equality(w: Union[TauPoint, complex],
                        tol: Optional[Tolerance] = None) -> IdentityReport:
    """[hh;00] = [h0;00] = [0h;00] on the cubic matrix [[4w,2w],[2w,4w]].

    Besides the numeric pairwise residuals, the underlying index bijections
    are checked exactly: with Q(s, t) = s^2 + s t + t^2,

        Q(j+1/2, k)   = Q(m+1/2, n+1/2)  under  m = j+k, n = -j-1,
        Q(m, n+1/2)   = Q(n+1/2, m)      (coordinate swap),

    term-by-term in exact rational arithmetic on the |j|, |k| <= 12 window.
    """
    w = as_tau(w)
    tol = as_tolerance(tol)
    pm = cubic_period(w)
    zeta = (0.0, 0.0)
    v_hh = theta_char_g2(CharQuad((_HALF, _HALF), (0, 0)), zeta, pm, tol)
    v_h0 = theta_char_g2(CharQuad((_HALF, 0), (0, 0)), zeta, pm, tol)
    v_0h = theta_char_g2(CharQuad((0, _HALF), (0, 0)), zeta, pm, tol)
    r12 = abs(v_hh - v_h0)
    r23 = abs(v_h0 - v_0h)
    r13 = abs(v_hh - v_0h)

    def q_form(s: Fraction, t: Fraction) -> Fraction:
        return s * s + s * t + t * t

    window = 12
    bijection_ok = True
    seen: set[tuple[int, int]] = set()
    for j in range(-window, window + 1):
        for k in range(-window, window + 1):
            m, n = j + k, -j - 1
            if q_form(Fraction(j) + _HALF, Fraction(k)) != q_form(Fraction(m) + _HALF, Fraction(n) + _HALF):
                bijection_ok = False
            if q_form(Fraction(j), Fraction(k) + _HALF) != q_form(Fraction(k) + _HALF, Fraction(j)):
                bijection_ok = False
            # invertibility of (j, k) -> (m, n) on the window
            jj, kk = -n - 1, m + n + 1
            if (jj, kk) != (j, k):
                bijection_ok = False
            seen.add((m, n))
    if len(seen) != (2 * window + 1) ** 2:
        bijection_ok = False

    residual = max(r12, r23, r13)
    details = {
        "hh_vs_h0": r12,
        "h0_vs_0h": r23,
        "hh_vs_0h": r13,
        "exact_bijection_window": window,
        "exact_bijection_ok": bijection_ok,
    }
    report = IdentityReport.build(
        "dp.cubic_chars", {"w": w.tau}, v_hh, v_h0, residual, tol.eps * 100,
        details=details,
    )
    if not bijection_ok:
        report.passed = False
    return report
