"""Shared domain types: moduli, characteristics, tolerances, reports.

A modulus tau always lives in the upper half plane.  Two nome conventions
are in play and are easy to mix up:

* theta functions use ``q = exp(pi*i*tau)``,
* Dedekind eta uses ``qbar = exp(2*pi*i*tau)``.

Every conversion between the two happens explicitly at call sites; nothing
in this package guesses which convention a bare complex number is in.
"""

from __future__ import annotations

import cmath
import math
import os
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Optional, Union

PI = math.pi
DEFAULT_EPS = 1e-12

#: Environment variable overriding the truncation hard cap (max summation index).
MAX_TERMS_ENV = "THETA_LAB_MAX_TERMS"
DEFAULT_MAX_TERMS = 10_000

EXPECT_PASS = "pass"
EXPECT_FAIL = "expected_fail"

RationalLike = Union[int, str, Fraction, float]


class DomainError(ValueError):
    """Input lies outside the mathematical domain of an operation."""


class PrecisionError(RuntimeError):
    """The requested tolerance would need more terms than the configured cap."""


class NearZeroError(ArithmeticError):
    """A denominator factor is too close to zero to divide through safely."""

    def __init__(self, message: str, factor_index: Optional[int] = None):
        super().__init__(message)
        self.factor_index = factor_index


def max_terms() -> int:
    """Truncation hard cap, overridable through THETA_LAB_MAX_TERMS."""
    raw = os.environ.get(MAX_TERMS_ENV)
    if raw is None:
        return DEFAULT_MAX_TERMS
    try:
        value = int(raw)
    except ValueError:
        raise DomainError(f"{MAX_TERMS_ENV} must be an integer, got {raw!r}") from None
    if value < 1:
        raise DomainError(f"{MAX_TERMS_ENV} must be positive, got {value}")
    return value


def as_fraction(x: RationalLike) -> Fraction:
    """Coerce a characteristic entry to an exact Fraction.

    Floats are accepted only for exact dyadic values (halves up to
    sixteenths); anything like 1/3 must be passed as a Fraction or string
    so no silent rounding sneaks in.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    if isinstance(x, float):
        fr = Fraction(x)
        if fr.denominator <= 16:
            return fr
        raise TypeError(
            f"float {x!r} is not an exact small dyadic; pass a Fraction or a string like '1/3'"
        )
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


@dataclass(frozen=True)
class Tolerance:
    """Absolute error target for series tails."""

    eps: float = DEFAULT_EPS

    def __post_init__(self):
        if not (0.0 < self.eps < 1.0):
            raise DomainError(f"tolerance eps must lie in (0, 1), got {self.eps}")


DEFAULT_TOL = Tolerance()


def as_tolerance(tol: Union[Tolerance, float, None]) -> Tolerance:
    if tol is None:
        return DEFAULT_TOL
    if isinstance(tol, Tolerance):
        return tol
    return Tolerance(float(tol))


@dataclass(frozen=True)
class TauPoint:
    """Genus-1 modulus with strictly positive imaginary part."""

    tau: complex

    def __post_init__(self):
        t = complex(self.tau)
        object.__setattr__(self, "tau", t)
        if not (t.imag > 0.0):
            raise DomainError("Im(tau) must be positive")

    @property
    def nome(self) -> complex:
        """q = exp(pi*i*tau), the theta-function nome."""
        return cmath.exp(1j * PI * self.tau)

    @property
    def nome_eta(self) -> complex:
        """qbar = exp(2*pi*i*tau), the eta-function nome."""
        return cmath.exp(2j * PI * self.tau)

    def scaled(self, k: complex) -> "TauPoint":
        return TauPoint(k * self.tau)


def as_tau(x: Union[TauPoint, complex, float]) -> TauPoint:
    if isinstance(x, TauPoint):
        return x
    return TauPoint(complex(x))


def tau_from_nome(q: complex) -> TauPoint:
    """Modulus for a given theta nome via the principal logarithm.

    For real q in (0, 1) this gives the purely imaginary tau the nome came
    from.  For complex q the principal branch is a documented choice.
    """
    q = complex(q)
    if q == 0 or abs(q) >= 1.0:
        raise DomainError(f"nome must satisfy 0 < |q| < 1, got |q| = {abs(q)}")
    return TauPoint(cmath.log(q) / (1j * PI))


@dataclass(frozen=True)
class CharPair:
    """Rational genus-1 theta characteristic (alpha; beta)."""

    alpha: Fraction
    beta: Fraction

    def __init__(self, alpha: RationalLike, beta: RationalLike):
        object.__setattr__(self, "alpha", as_fraction(alpha))
        object.__setattr__(self, "beta", as_fraction(beta))

    def __iter__(self):
        return iter((self.alpha, self.beta))

    def __str__(self):
        return f"[{self.alpha};{self.beta}]"


@dataclass(frozen=True)
class CharQuad:
    """Rational genus-2 theta characteristic (alpha1 alpha2; beta1 beta2)."""

    alpha: tuple[Fraction, Fraction]
    beta: tuple[Fraction, Fraction]

    def __init__(self, alpha, beta):
        a1, a2 = alpha
        b1, b2 = beta
        object.__setattr__(self, "alpha", (as_fraction(a1), as_fraction(a2)))
        object.__setattr__(self, "beta", (as_fraction(b1), as_fraction(b2)))

    def __str__(self):
        a1, a2 = self.alpha
        b1, b2 = self.beta
        return f"[{a1},{a2};{b1},{b2}]"


@dataclass(frozen=True)
class PeriodMatrix2:
    """Symmetric 2x2 period matrix with positive definite imaginary part."""

    t11: complex
    t12: complex
    t22: complex

    def __post_init__(self):
        for name in ("t11", "t12", "t22"):
            object.__setattr__(self, name, complex(getattr(self, name)))
        y11, y12, y22 = self.t11.imag, self.t12.imag, self.t22.imag
        if not (y11 > 0.0 and y11 * y22 - y12 * y12 > 0.0):
            raise DomainError("Im(tau) must be positive definite")

    @property
    def lambda_min(self) -> float:
        """Smallest eigenvalue of Im(tau), in closed form."""
        y11, y12, y22 = self.t11.imag, self.t12.imag, self.t22.imag
        half_tr = 0.5 * (y11 + y22)
        rad = math.hypot(0.5 * (y11 - y22), y12)
        return half_tr - rad


@dataclass(frozen=True)
class SymmetricTau:
    """The tau11 = tau22 subset of period matrices, as the pair (tau0, tau1).

    The matrix is [[tau0, tau1], [tau1, tau0]]; positive definiteness of the
    imaginary part is exactly Im(tau0 + tau1) > 0 and Im(tau0 - tau1) > 0.
    The genus-1 moduli behind it are w1 = (tau0 + tau1)/2, w2 = (tau0 - tau1)/2.
    """

    tau0: complex
    tau1: complex

    def __post_init__(self):
        object.__setattr__(self, "tau0", complex(self.tau0))
        object.__setattr__(self, "tau1", complex(self.tau1))
        if not ((self.tau0 + self.tau1).imag > 0.0 and (self.tau0 - self.tau1).imag > 0.0):
            raise DomainError("Im(tau0 +/- tau1) must both be positive")

    @classmethod
    def from_moduli(cls, w1: Union[TauPoint, complex], w2: Union[TauPoint, complex]) -> "SymmetricTau":
        w1 = as_tau(w1).tau
        w2 = as_tau(w2).tau
        return cls(w1 + w2, w1 - w2)

    @classmethod
    def from_nomes(cls, q: complex, r: complex) -> "SymmetricTau":
        """Build from the nome pair q = exp(pi*i*tau0), r = exp(pi*i*tau1).

        Principal logarithms; this is the single place nomes are converted,
        so every quantity derived later (q1, q2, fractional powers) uses one
        coherent branch.
        """
        q = complex(q)
        r = complex(r)
        if q == 0 or r == 0:
            raise DomainError("nomes must be nonzero")
        tau0 = cmath.log(q) / (1j * PI)
        tau1 = cmath.log(r) / (1j * PI)
        if not ((tau0 + tau1).imag > 0.0 and (tau0 - tau1).imag > 0.0):
            raise DomainError("nome pair must satisfy |q*r| < 1 and |q/r| < 1")
        return cls(tau0, tau1)

    @property
    def w1(self) -> complex:
        return 0.5 * (self.tau0 + self.tau1)

    @property
    def w2(self) -> complex:
        return 0.5 * (self.tau0 - self.tau1)

    @property
    def q(self) -> complex:
        return cmath.exp(1j * PI * self.tau0)

    @property
    def r(self) -> complex:
        return cmath.exp(1j * PI * self.tau1)

    @property
    def tau_q1(self) -> complex:
        """Genus-1 modulus whose nome is q1 = (q*r)^2 = exp(2*pi*i*(tau0+tau1))."""
        return 2.0 * (self.tau0 + self.tau1)

    @property
    def tau_q2(self) -> complex:
        """Genus-1 modulus whose nome is q2 = (q/r)^2."""
        return 2.0 * (self.tau0 - self.tau1)

    def to_matrix(self) -> PeriodMatrix2:
        return PeriodMatrix2(self.tau0, self.tau1, self.tau0)


@dataclass
class IdentityReport:
    """Outcome of checking one identity at one parameter binding."""

    identity_id: str
    params: dict[str, Any]
    lhs: Any
    rhs: Any
    residual: float
    tolerance: float
    passed: bool
    expected: str = EXPECT_PASS
    details: dict[str, Any] = field(default_factory=dict)

    @classmethod
    def build(cls, identity_id, params, lhs, rhs, residual, tolerance,
              expected=EXPECT_PASS, details=None):
        residual = float(residual)
        passed = math.isfinite(residual) and residual < tolerance
        return cls(identity_id=identity_id, params=dict(params), lhs=lhs, rhs=rhs,
                   residual=residual, tolerance=float(tolerance), passed=passed,
                   expected=expected, details=dict(details or {}))

    @property
    def verdict(self) -> str:
        if self.passed:
            return "PASS" if self.expected == EXPECT_PASS else "XPASS"
        return "FAIL" if self.expected == EXPECT_PASS else "XFAIL"

    @property
    def ok(self) -> bool:
        """True when the outcome matches the expectation."""
        return self.verdict in ("PASS", "XFAIL")


class CompensatedSum:
    """Neumaier-compensated accumulator for complex terms.

    Used wherever a fixed, platform-stable summation order matters (lattice
    sums, the 9- and 81-term cube sums).
    """

    __slots__ = ("_sr", "_cr", "_si", "_ci")

    def __init__(self):
        self._sr = self._cr = 0.0
        self._si = self._ci = 0.0

    def add(self, z: complex) -> None:
        x = z.real
        t = self._sr + x
        if abs(self._sr) >= abs(x):
            self._cr += (self._sr - t) + x
        else:
            self._cr += (x - t) + self._sr
        self._sr = t
        y = z.imag
        t = self._si + y
        if abs(self._si) >= abs(y):
            self._ci += (self._si - t) + y
        else:
            self._ci += (y - t) + self._si
        self._si = t

    @property
    def value(self) -> complex:
        return complex(self._sr + self._cr, self._si + self._ci)
