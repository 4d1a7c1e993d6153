"""Genus-2 theta functions over symmetric 2x2 period matrices.

The double sum, with m = (n1 + alpha1, n2 + alpha2) running over the shifted
integer lattice and e[x] = exp(2*pi*i*x), is

    theta[alpha; beta](zeta, tau) = sum_m e[ m.tau.m / 2 + m.(zeta + beta) ].

No normalization prefactor is applied: the bare double sum is the value.
Truncation uses the smallest eigenvalue of Im(tau): a lattice point at
sup-norm radius rho contributes at most exp(-pi lambda_min (rho-1)^2) times
the growth from Im(zeta), and rings decay fast enough to sum geometrically.

Terms are accumulated in lexicographic (n1, n2) order through a compensated
sum, so results are deterministic across runs and platforms.
"""

from __future__ import annotations

import cmath
import math
from typing import Optional, Union

from .types import (
    PI,
    CharQuad,
    CompensatedSum,
    DomainError,
    PeriodMatrix2,
    PrecisionError,
    SymmetricTau,
    TauPoint,
    Tolerance,
    as_tau,
    as_tolerance,
    max_terms,
)
from .genus1 import _e_rat

__all__ = ["theta_char_g2", "symmetric_tau_from_w", "cubic_period"]


def _window_radius(lam: float, growth: float, eps: float) -> int:
    """Smallest sup-norm radius whose boundary-ring tail sums below eps/4."""
    cap = max_terms()

    def ring_bound(rho: int) -> float:
        # at most 8*rho lattice points on the ring; |m| >= rho - 1 after
        # reducing characteristic offsets into [0, 1)
        d = max(rho - 1, 0)
        expo = -PI * lam * d * d + growth * (rho + 1)
        if expo > 700.0:
            return math.inf
        return 8.0 * (rho + 1) * math.exp(expo)

    radius = 1
    while True:
        tail = 0.0
        rho = radius
        while True:
            b = ring_bound(rho)
            tail += b
            if b < 1e-320 or tail == math.inf:
                break
            rho += 1
            if rho - radius > 4 * cap:
                tail = math.inf
                break
        if tail < eps / 4.0:
            return radius
        radius += 1
        if radius > cap:
            raise PrecisionError(
                f"genus-2 window exceeds the cap {cap} for eps={eps:g}"
                " (raise THETA_LAB_MAX_TERMS or loosen the tolerance)"
            )


def theta_char_g2(ch: CharQuad, zeta, tau: PeriodMatrix2,
                  tol: Optional[Tolerance] = None, *, window: Optional[int] = None) -> complex:
    """Genus-2 theta value at zeta = (zeta1, zeta2).

    ``window`` overrides the automatic sup-norm summation radius (used by
    the window-stability checks).
    """
    if not isinstance(tau, PeriodMatrix2):
        raise DomainError("tau must be a PeriodMatrix2")
    tol = as_tolerance(tol)
    z1, z2 = (complex(zeta[0]), complex(zeta[1]))
    a1, a2 = ch.alpha
    b1, b2 = ch.beta
    # integer parts of alpha shift the summation lattice with no phase
    a1 %= 1
    a2 %= 1
    lam = tau.lambda_min
    growth = 2.0 * PI * (abs(z1.imag) + abs(z2.imag))
    if window is None:
        radius = _window_radius(lam, growth, tol.eps)
    else:
        radius = int(window)
        if radius > max_terms():
            raise PrecisionError(f"window {radius} exceeds the cap {max_terms()}")

    t11, t12, t22 = tau.t11, tau.t12, tau.t22
    n_range = range(-radius - 1, radius + 1)
    m1s = [float(n + a1) for n in n_range]
    m2s = [float(n + a2) for n in n_range]
    ph1 = [_e_rat((n + a1) * b1) for n in n_range]
    ph2 = [_e_rat((n + a2) * b2) for n in n_range]
    acc = CompensatedSum()
    half_t11 = 0.5 * t11
    half_t22 = 0.5 * t22
    for i1, m1 in enumerate(m1s):
        row = half_t11 * m1 * m1 + m1 * z1
        row_cross = t12 * m1
        p1 = ph1[i1]
        for i2, m2 in enumerate(m2s):
            expo = row + row_cross * m2 + half_t22 * m2 * m2 + m2 * z2
            acc.add(cmath.exp(2j * PI * expo) * p1 * ph2[i2])
    return acc.value


def symmetric_tau_from_w(w1: Union[TauPoint, complex],
                         w2: Union[TauPoint, complex]) -> SymmetricTau:
    """Symmetric period data (tau0, tau1) = (w1 + w2, w1 - w2)."""
    return SymmetricTau.from_moduli(as_tau(w1), as_tau(w2))


def cubic_period(w: Union[TauPoint, complex]) -> PeriodMatrix2:
    """The period matrix [[4w, 2w], [2w, 4w]] (moduli w1 = 3w, w2 = w).

    Its Im part has eigenvalues 2 Im(w) and 6 Im(w), so it is positive
    definite for every valid w.
    """
    w = as_tau(w).tau
    return PeriodMatrix2(4.0 * w, 2.0 * w, 4.0 * w)
