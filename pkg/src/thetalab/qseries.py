"""Exact truncated Laurent series over the integers, for proofs-to-order.

A TruncatedSeries stores integer coefficients on the exponent lattice
(1/D) Z for q, optionally times integer powers of a second variable z.
Exponents at or beyond the truncation order are unknown, never silently
zero, and arithmetic propagates the order pessimistically:

    order(a * b) = min(order_a + minexp_b, order_b + minexp_a).

Coefficients are exact big integers throughout; a verification pass at
order N is a proof of the identity below exponent N, not a numeric check.

Root-of-unity coefficients are avoided by construction: the order-p
denominator collapse behind the Landen ratios is verified in the grouped
integer form, multiplying each (1 - y) against the cyclotomic-free
companion 1 + y + ... + y^(p-1) with y = q^(2n-1) z^2.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from typing import Iterable, Optional, Union

__all__ = [
    "TruncatedSeries",
    "series_arith",
    "expand_product",
    "formal_verify",
    "UnsupportedIdentityError",
    "FORMAL_IDENTITIES",
]


class UnsupportedIdentityError(ValueError):
    """The identity needs non-integer coefficients at this layer."""


Key = tuple[int, int]  # (q exponent numerator, z exponent)


class TruncatedSeries:
    """Integer Laurent polynomial in q^(1/D) (and optionally z), truncated.

    Instances are immutable by convention: every operation returns a new
    series, so values are safe to share and cache.
    """

    __slots__ = ("denom", "order", "coeffs")

    def __init__(self, coeffs: dict[Key, int], order: int, denom: int = 1):
        if denom < 1:
            raise ValueError("denominator must be a positive integer")
        self.denom = denom
        self.order = order
        clean = {}
        for (qe, ze), c in coeffs.items():
            if c == 0:
                continue
            if qe >= order:
                raise ValueError(f"stored exponent {qe}/{denom} is not below the order")
            clean[(qe, ze)] = c
        self.coeffs = clean

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, order: int, denom: int = 1) -> "TruncatedSeries":
        return cls({}, order, denom)

    @classmethod
    def one(cls, order: int, denom: int = 1) -> "TruncatedSeries":
        return cls({(0, 0): 1}, order, denom)

    @classmethod
    def monomial(cls, coeff: int, q_num: int, denom: int = 1, z_exp: int = 0,
                 order: Optional[int] = None) -> "TruncatedSeries":
        if order is None:
            raise ValueError("monomial needs an explicit order")
        return cls({(q_num, z_exp): coeff}, order, denom)

    # -- basic queries -----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_univariate(self) -> bool:
        return all(ze == 0 for (_, ze) in self.coeffs)

    def min_q_exponent(self) -> int:
        """Smallest stored exponent numerator; the order itself if zero."""
        if not self.coeffs:
            return self.order
        return min(qe for (qe, _) in self.coeffs)

    def coeff(self, q_exp: Union[int, Fraction], z_exp: int = 0) -> int:
        fr = Fraction(q_exp) * self.denom
        if fr.denominator != 1:
            return 0
        num = fr.numerator
        if num >= self.order:
            raise ValueError(f"exponent {q_exp} is at or beyond the truncation order")
        return self.coeffs.get((num, z_exp), 0)

    def terms(self) -> list[tuple[Fraction, int, int]]:
        """Sorted (q_exponent, z_exponent, coefficient) triples."""
        return sorted(
            (Fraction(qe, self.denom), ze, c) for (qe, ze), c in self.coeffs.items()
        )

    # -- denominator alignment ---------------------------------------------

    def rescaled(self, denom: int) -> "TruncatedSeries":
        if denom == self.denom:
            return self
        if denom % self.denom != 0:
            raise ValueError(f"cannot rescale denominator {self.denom} to {denom}")
        f = denom // self.denom
        return TruncatedSeries(
            {(qe * f, ze): c for (qe, ze), c in self.coeffs.items()},
            self.order * f, denom,
        )

    @staticmethod
    def _aligned(a: "TruncatedSeries", b: "TruncatedSeries"):
        d = math.lcm(a.denom, b.denom)
        return a.rescaled(d), b.rescaled(d)

    # -- ring operations ----------------------------------------------------

    def __neg__(self) -> "TruncatedSeries":
        return TruncatedSeries({k: -c for k, c in self.coeffs.items()}, self.order, self.denom)

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        a, b = self._aligned(self, other)
        order = min(a.order, b.order)
        out = {k: c for k, c in a.coeffs.items() if k[0] < order}
        for k, c in b.coeffs.items():
            if k[0] < order:
                out[k] = out.get(k, 0) + c
        return TruncatedSeries(out, order, a.denom)

    def __sub__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        return self + (-other)

    def __mul__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        a, b = self._aligned(self, other)
        order = min(a.order + b.min_q_exponent(), b.order + a.min_q_exponent())
        out: dict[Key, int] = {}
        if len(b.coeffs) < len(a.coeffs):
            a, b = b, a
        for (qa, za), ca in a.coeffs.items():
            for (qb, zb), cb in b.coeffs.items():
                qe = qa + qb
                if qe >= order:
                    continue
                k = (qe, za + zb)
                v = out.get(k, 0) + ca * cb
                if v:
                    out[k] = v
                elif k in out:
                    del out[k]
        return TruncatedSeries(out, order, a.denom)

    def __pow__(self, exponent: int) -> "TruncatedSeries":
        if not isinstance(exponent, int):
            raise TypeError("series exponent must be an integer")
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = TruncatedSeries.one(self.order, self.denom)
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def truncated_to(self, order: int) -> "TruncatedSeries":
        """Forget everything at or beyond the given order (same units)."""
        if order > self.order:
            raise ValueError("cannot extend a truncated series beyond its order")
        if order == self.order:
            return self
        return TruncatedSeries(
            {k: c for k, c in self.coeffs.items() if k[0] < order}, order, self.denom
        )

    def inverse(self) -> "TruncatedSeries":
        """Multiplicative inverse; needs a unit constant term.

        Every non-constant term must carry a positive q exponent so the
        geometric expansion terminates at the truncation order.
        """
        c0 = self.coeffs.get((0, 0), 0)
        if c0 not in (1, -1):
            raise ValueError("series inversion needs constant term +1 or -1")
        if any(k != (0, 0) and k[0] <= 0 for k in self.coeffs):
            raise ValueError("series inversion needs all other exponents positive")
        # self = c0 (1 + h), h with positive q order:
        # inverse = c0 (1 - h + h^2 - ...)
        h = TruncatedSeries(
            {k: c0 * c for k, c in self.coeffs.items() if k != (0, 0)},
            self.order, self.denom,
        )
        acc = TruncatedSeries.one(self.order, self.denom)
        term = TruncatedSeries.one(self.order, self.denom)
        while True:
            term = (term * (-h)).truncated_to(self.order)
            if term.is_zero():
                break
            acc = acc + term
        if c0 == -1:
            acc = -acc
        return acc

    def __truediv__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        return self * other.inverse()

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        a, b = self._aligned(self, other)
        return a.coeffs == b.coeffs and a.order == b.order

    def __hash__(self):
        return hash((self.denom, self.order, frozenset(self.coeffs.items())))

    # -- evaluation and output ----------------------------------------------

    def eval_at(self, q: complex, z: complex = 1.0) -> complex:
        """Numeric value of the stored truncation at (q, z), principal powers."""
        import cmath

        log_q = cmath.log(q)
        total = 0.0 + 0.0j
        for (qe, ze), c in sorted(self.coeffs.items()):
            term = c * cmath.exp(log_q * qe / self.denom)
            if ze:
                term *= z ** ze
            total += term
        return total

    def dump(self) -> str:
        """Text table 'exponent_numerator/D<TAB>coefficient', sorted.

        Defined for univariate series (z-free); the table is the diff-stable
        test format.
        """
        if not self.is_univariate():
            raise ValueError("dump is defined for univariate series")
        lines = [f"{qe}/{self.denom}\t{c}" for (qe, _), c in sorted(self.coeffs.items())]
        return "\n".join(lines)

    def __repr__(self):
        kind = "bivariate" if not self.is_univariate() else "univariate"
        return (f"TruncatedSeries({kind}, D={self.denom}, order={self.order}/{self.denom}, "
                f"{len(self.coeffs)} terms)")


def series_arith(op: str, a: TruncatedSeries, b_or_exp) -> TruncatedSeries:
    """Dispatch layer: op in {add, sub, mul, pow}."""
    if op == "add":
        return a + b_or_exp
    if op == "sub":
        return a - b_or_exp
    if op == "mul":
        return a * b_or_exp
    if op == "pow":
        return a ** b_or_exp
    raise ValueError(f"unknown series operation {op!r}")


# -- product expansion -------------------------------------------------------


def _multiply_factors(order: int, denom: int,
                      factors: Iterable[list[tuple[int, int, int]]],
                      start: Optional[dict[Key, int]] = None) -> TruncatedSeries:
    """Incrementally multiply sparse factors given as (q_num, z_exp, coeff).

    Every factor must have constant term (0, 0, 1) plus positive-exponent
    terms, so the truncation order is preserved throughout.
    """
    cur: dict[Key, int] = dict(start) if start else {(0, 0): 1}
    for factor in factors:
        nxt: dict[Key, int] = {}
        for (qa, za), ca in cur.items():
            for (dq, dz, dc) in factor:
                qe = qa + dq
                if qe >= order:
                    continue
                k = (qe, za + dz)
                v = nxt.get(k, 0) + ca * dc
                if v:
                    nxt[k] = v
                elif k in nxt:
                    del nxt[k]
        cur = nxt
    return TruncatedSeries(cur, order, denom)


def _euler_factors(order: int, step: int, offset: int, sign: int,
                   z_exp: int = 0, denom: int = 1):
    """Factors (1 + sign q^(step*n - offset) z^z_exp) with exponent < order."""
    n = 1
    while True:
        e = (step * n - offset) * denom
        if e >= order * denom:
            return
        yield [(0, 0, 1), (e, z_exp, sign)]
        n += 1


def expand_product(family: str, order: int, with_z: bool = False) -> TruncatedSeries:
    """Exact expansion of a named product family up to q^order.

    Families: theta3, theta4, theta2 (with_z keeps z = exp(pi*i*u) powers;
    otherwise the theta-constant specialization), eta_term, and
    landen_rhs(p).  Factor n of a triple product only contributes beyond
    its leading 1 at exponent >= 2n-1, so finitely many factors suffice.
    """
    if order < 1:
        raise ValueError("order must be at least 1")
    m = re.fullmatch(r"landen_rhs\((\d+)\)", family)
    if m:
        p = int(m.group(1))
        if p < 1:
            raise ValueError("landen_rhs needs p >= 1")
        num = _multiply_factors(order, 1, _euler_factors(order, 2 * p, 0, -1))
        den = _multiply_factors(order, 1, _euler_factors(order, 2, 0, -1))
        return num * den.inverse() ** p

    if family == "theta4" or family == "theta3":
        sign = -1 if family == "theta4" else 1
        factors = list(_euler_factors(order, 2, 0, -1))
        if with_z:
            factors += list(_euler_factors(order, 2, 1, sign, z_exp=2))
            factors += list(_euler_factors(order, 2, 1, sign, z_exp=-2))
            return _multiply_factors(order, 1, factors)
        # at z = 1 the two off-diagonal families merge into squared factors
        factors += list(_euler_factors(order, 2, 1, sign))
        factors += list(_euler_factors(order, 2, 1, sign))
        return _multiply_factors(order, 1, factors)

    if family == "theta2":
        denom = 4
        order4 = order * denom
        # q^(1/4) (z + 1/z) prod (1-q^2n)(1+q^2n z^2)(1+q^2n z^-2)
        fs = []
        n = 1
        while 2 * n * denom < order4:
            e = 2 * n * denom
            fs.append([(0, 0, 1), (e, 0, -1)])
            if with_z:
                fs.append([(0, 0, 1), (e, 2, 1)])
                fs.append([(0, 0, 1), (e, -2, 1)])
            else:
                fs.append([(0, 0, 1), (e, 0, 1)])
                fs.append([(0, 0, 1), (e, 0, 1)])
            n += 1
        if with_z:
            lead = {(1, 1): 1, (1, -1): 1}
        else:
            lead = {(1, 0): 2}
        body = _multiply_factors(order4, denom, fs, start=lead)
        return body

    if family == "eta_term":
        denom = 24
        order24 = order * denom
        fs = []
        n = 1
        while n * denom < order24:
            fs.append([(0, 0, 1), (n * denom, 0, -1)])
            n += 1
        return _multiply_factors(order24, denom, fs, start={(1, 0): 1})

    raise ValueError(f"unknown product family {family!r}")


# -- formal identity verification --------------------------------------------


def _theta4_core(order: int, scale: int = 1) -> TruncatedSeries:
    """prod (1 - q^(scale(2n-1)) z^(2 scale)) (1 - q^(scale(2n-1)) z^(-2 scale))."""
    factors = []
    n = 1
    while scale * (2 * n - 1) < order:
        e = scale * (2 * n - 1)
        factors.append([(0, 0, 1), (e, 2 * scale, -1)])
        factors.append([(0, 0, 1), (e, -2 * scale, -1)])
        n += 1
    return _multiply_factors(order, 1, factors)


def _landen_collapse_lhs(order: int, p: int) -> TruncatedSeries:
    """prod (1 - y) (1 + y + ... + y^(p-1)) and the z^-2 twin, y = q^(2n-1) z^2."""
    factors = []
    n = 1
    while 2 * n - 1 < order:
        e = 2 * n - 1
        for z_sign in (1, -1):
            factors.append([(0, 0, 1), (e, 2 * z_sign, -1)])
            factors.append([(j * e, 2 * j * z_sign, 1) for j in range(p)])
        n += 1
    return _multiply_factors(order, 1, factors)


def _diff_agm2(order: int) -> TruncatedSeries:
    lhs = _multiply_factors(order, 1, list(_euler_factors(order, 4, 0, -1)) * 2
                            + list(_euler_factors(order, 4, 2, -1)) * 2)
    rhs = _multiply_factors(order, 1, list(_euler_factors(order, 2, 0, -1)) * 2)
    return lhs - rhs


def _diff_theta13(order: int) -> TruncatedSeries:
    plus = _multiply_factors(order, 1, list(_euler_factors(order, 2, 1, 1)) * 2
                             + list(_euler_factors(order, 6, 3, 1)) * 2)
    minus = _multiply_factors(order, 1, list(_euler_factors(order, 2, 1, -1)) * 2
                              + list(_euler_factors(order, 6, 3, -1)) * 2)
    even = _multiply_factors(order, 1, list(_euler_factors(order, 2, 0, 1)) * 2
                             + list(_euler_factors(order, 6, 0, 1)) * 2)
    four_q = TruncatedSeries.monomial(4, 1, order=order)
    return plus - minus - four_q * even


def _diff_quartic(order: int) -> TruncatedSeries:
    plus = _multiply_factors(order, 1, list(_euler_factors(order, 2, 1, 1)) * 8)
    minus = _multiply_factors(order, 1, list(_euler_factors(order, 2, 1, -1)) * 8)
    even = _multiply_factors(order, 1, list(_euler_factors(order, 2, 0, 1)) * 8)
    sixteen_q = TruncatedSeries.monomial(16, 1, order=order)
    return plus - minus - sixteen_q * even


def _diff_landen_nd(order: int, p: int) -> TruncatedSeries:
    return _landen_collapse_lhs(order, p) - _theta4_core(order, scale=p)


#: Formal identities provable over plain integer coefficients.
FORMAL_IDENTITIES = ("AGM2_cancel", "theta_13", "quartic", "landen_ND(p)")

_NUMERIC_ONLY = {"modularity", "ratio_5", "ratio_7", "fk", "landens3_theta2"}

_DEFAULT_ORDER_CAP = 400


def formal_verify(identity_id: str, order: int) -> tuple[bool, Optional[Fraction]]:
    """Exact coefficient check of LHS - RHS below q^order.

    Returns (passed, first_mismatch): passed means every coefficient is
    exactly zero; first_mismatch is the lowest differing exponent otherwise.
    """
    if order < 1 or order > _DEFAULT_ORDER_CAP:
        raise ValueError(f"order must be in 1..{_DEFAULT_ORDER_CAP}")
    if identity_id in _NUMERIC_ONLY:
        raise UnsupportedIdentityError(
            f"{identity_id} needs non-integer coefficients at this layer;"
            " use the numeric identity modules"
        )
    if identity_id == "AGM2_cancel":
        diff = _diff_agm2(order)
    elif identity_id == "theta_13":
        diff = _diff_theta13(order)
    elif identity_id == "quartic":
        diff = _diff_quartic(order)
    else:
        m = re.fullmatch(r"landen_ND\((\d+)\)", identity_id)
        if not m:
            raise ValueError(f"unknown formal identity {identity_id!r}")
        p = int(m.group(1))
        if p < 2:
            raise ValueError("landen_ND needs p >= 2")
        diff = _diff_landen_nd(order, p)
    if diff.is_zero():
        return True, None
    return False, Fraction(diff.min_q_exponent(), diff.denom)
