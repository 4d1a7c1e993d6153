"""Deliberately plain brute-force oracles, independent of the library paths.

Everything here is a direct lattice sum or partial product over an explicit
window, with float phases and naive accumulation.  Keep it dumb: these are
the reference values the clever code is checked against.
"""

import cmath
import math

PI = math.pi


def theta_sum(alpha: float, beta: float, u: complex, tau: complex, n_max: int = 60) -> complex:
    total = 0j
    for n in range(-n_max, n_max + 1):
        m = n + alpha
        total += cmath.exp(1j * PI * m * m * tau + 2j * PI * m * (u + beta))
    return total


def theta_j_sum(j: int, u: complex, tau: complex, n_max: int = 60) -> complex:
    alpha, beta, sign = {
        1: (0.5, 0.5, -1.0),
        2: (0.5, 0.0, 1.0),
        3: (0.0, 0.0, 1.0),
        4: (0.0, 0.5, 1.0),
    }[j]
    return sign * theta_sum(alpha, beta, u, tau, n_max)


def theta_g2_sum(a1, a2, b1, b2, z1, z2, t11, t12, t22, n_max: int = 25) -> complex:
    total = 0j
    for n1 in range(-n_max, n_max + 1):
        for n2 in range(-n_max, n_max + 1):
            m1, m2 = n1 + a1, n2 + a2
            quad = 0.5 * (t11 * m1 * m1 + 2 * t12 * m1 * m2 + t22 * m2 * m2)
            total += cmath.exp(2j * PI * (quad + m1 * (z1 + b1) + m2 * (z2 + b2)))
    return total


def eta_product(tau: complex, n_factors: int = 60) -> complex:
    qb = cmath.exp(2j * PI * tau)
    value = cmath.exp(1j * PI * tau / 12.0)
    for n in range(1, n_factors + 1):
        value *= 1.0 - qb ** n
    return value


def landen_product(p: int, tau: complex, n_factors: int = 200) -> complex:
    q = cmath.exp(1j * PI * tau)
    value = 1.0 + 0j
    for n in range(1, n_factors + 1):
        value *= (1.0 - q ** (2 * p * n)) / (1.0 - q ** (2 * n)) ** p
    return value


def theta_g2_nome_sum(a1, a2, b1, b2, log_q, log_r, n_max: int = 35) -> complex:
    """sum q^((m+a1)^2+(n+a2)^2) r^(2(m+a1)(n+a2)) e[(m+a1)b1+(n+a2)b2]."""
    total = 0j
    for mm in range(-n_max, n_max + 1):
        for nn in range(-n_max, n_max + 1):
            m, n = mm + a1, nn + a2
            total += cmath.exp((m * m + n * n) * log_q + 2 * m * n * log_r
                               + 2j * PI * (m * b1 + n * b2))
    return total


def borwein_sum(which: str, log_q, n_max: int = 45) -> complex:
    omega = cmath.exp(2j * PI / 3)
    shift = 1.0 / 3.0 if which == "c" else 0.0
    total = 0j
    for mm in range(-n_max, n_max + 1):
        for nn in range(-n_max, n_max + 1):
            m, n = mm + shift, nn + shift
            term = cmath.exp((m * m + m * n + n * n) * log_q)
            if which == "b":
                term *= omega ** (mm - nn)
            total += term
    return total


def poly_mul(a: dict, b: dict, order: int) -> dict:
    out = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = ea + eb
            if e < order:
                out[e] = out.get(e, 0) + ca * cb
    return {e: c for e, c in out.items() if c}
