"""
Closed-form approximations of the zeros of y_n.

The k-th zero z_k = x_k + i y_k of y_n is approximated by

    x~(k, n) = a2(n) k^2 + a1(n) k + a0(n),
    y~(k, n) = b3(n) k^3 + b2(n) k^2 + b1(n) k + b0(n),

whose coefficients are rational functions of n fixed by conditions on the end and middle points
of the index range:

    x~(0, n) = 0,  x~(n/2, n) = -3/(2n),  x~(n+1, n) = 0,
    y~(1, n) = -1/n,  y~((n+1)/2, n) = 0,  dy~/dk(n/2, n) = 4/n^2,  y~(n, n) = 1/n.

k = 1 is the zero with the most negative imaginary part.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import List, Optional, Sequence, Tuple

import numpy as np
from numpy.polynomial import polynomial as npp

from bessel_zeros.bessel_poly import check_degree
from bessel_zeros.exceptions import (
    IndexOutOfRangeError,
    SingularDegreeError,
    UnsupportedOrderError,
    VanishingDenominatorError,
)
from bessel_zeros.typing import ComplexArray
from bessel_zeros.utils import Provenance, ZeroSet

L = logging.getLogger(__name__)

FIT_CONDITIONS = (
    "x(0)=0",
    "x(n/2)=-3/(2n)",
    "x(n+1)=0",
    "y(1)=-1/n",
    "y((n+1)/2)=0",
    "dy/dk(n/2)=4/n^2",
    "y(n)=1/n",
)
FIT_CONDITION_THRESHOLD = 1e-12
RATIONAL_AUDIT_RTOL = 1e-9

# Leading 1/n coefficient of the reference real-zero formula -2 / (1.32549 n + 0.662743).
REFERENCE_SLOPE = 1.32549
REFERENCE_OFFSET = 0.662743

# Printed numerators of the sums of squares and cubes, highest power first.
P2_COEFFICIENTS = (55, 15, -800, -612, 4064, 1740, -1696, -2832, -3312)
P3_COEFFICIENTS = (-1, 28, -217, 468, 1002, -3804, -1076, 5936, -3848, 12816, 19584)


@dataclass(frozen=True)
class ApproxCoefficients:
    """The seven fit coefficients of the closed-form zeros of y_n."""

    n: int
    a2: float
    a1: float
    a0: float
    b3: float
    b2: float
    b1: float
    b0: float

    def real_part(self, k):
        """
        x~(k, n) in the factored form a2 k (k - (n + 1)) + a0.

        The factored form equals the fitted quadratic (a1 = -(n + 1) a2) and is exactly
        symmetric under k -> n + 1 - k for integer k: the integer product k (k - (n + 1)) is
        exact, so a single rounding remains.
        """
        k = np.asarray(k, dtype=float)
        return self.a2 * (k * (k - (self.n + 1))) + self.a0

    def printed_real_part(self, k):
        """x~(k, n) evaluated term by term from a2, a1 and a0."""
        return npp.polyval(k, [self.a0, self.a1, self.a2])

    def imag_part(self, k):
        """y~(k, n)"""
        return npp.polyval(k, [self.b0, self.b1, self.b2, self.b3])

    def imag_slope(self, k):
        """dy~/dk (k, n)"""
        return npp.polyval(k, [self.b1, 2.0 * self.b2, 3.0 * self.b3])


@dataclass(frozen=True)
class PowerSumReport:
    """
    Power sum of order 1, 2 or 3 of the approximate zeros next to the exact one.

    Attributes:
        rational_form: the closed rational expression, None for order 1.
    """

    n: int
    order: int
    direct_sum: complex
    rational_form: Optional[complex]
    exact_value: complex


@dataclass(frozen=True)
class PowerSumAudit:
    """Comparison between the closed rational power sum and the direct summation."""

    n: int
    order: int
    direct: complex
    rational: complex
    discrepancy: float
    tolerance: float

    @property
    def agrees(self) -> bool:
        """True if the two values agree within `tolerance`."""
        return self.discrepancy <= self.tolerance


@dataclass(frozen=True)
class FitConditionFinding:
    """One of the seven fit conditions checked at one degree."""

    n: int
    condition: str
    residual: float
    threshold: float = FIT_CONDITION_THRESHOLD

    @property
    def ok(self) -> bool:
        """True if the condition holds to `threshold`."""
        return abs(self.residual) <= self.threshold


def fit_coefficients(n: int) -> ApproxCoefficients:
    """
    Fit coefficients a2, a1, a0, b3, b2, b1, b0 for the degree n.

    Each coefficient is a ratio of exact integers, hence correctly rounded.

    Raises:
        SingularDegreeError if n < 2, where the denominators vanish.
    """
    n = check_degree(n)
    if n < 2:
        raise SingularDegreeError(
            f"The closed-form coefficients are undefined for n={n} (singular degrees: 0, 1); "
            "the zero of y_1 is -1."
        )
    cubic = n**3 - 3 * n**2 + 2
    quadratic = n**2 - 2 * n - 2
    if cubic == 0 or quadratic == 0:
        raise SingularDegreeError(f"A denominator of the fit coefficients vanishes at n={n}.")

    return ApproxCoefficients(
        n=n,
        a2=6 / (n**2 * (n + 2)),
        a1=-6 * (n + 1) / (n**2 * (n + 2)),
        a0=0.0,
        b3=-8 * (n - 2) / (n**2 * cubic),
        b2=12 * (n - 2) * (n + 1) / ((n - 1) * n**2 * quadratic),
        b1=-2 * (n**3 + 6 * n**2 - 12 * n - 4) / ((n - 1) * n**2 * quadratic),
        b0=-(n**3 - 5 * n**2 + 6) / (n * cubic),
    )


def _check_index(k: int, n: int) -> int:
    if isinstance(k, bool) or int(k) != k or not 1 <= k <= n:
        raise IndexOutOfRangeError(f"The zero index must lie in 1..{n}. Got {k}.")

    return int(k)


def _approx_array(n: int) -> ComplexArray:
    coefficients = fit_coefficients(n)
    k = np.arange(1, n + 1)

    return coefficients.real_part(k) + 1j * coefficients.imag_part(k)


def approx_zero(k: int, n: int) -> complex:
    """
    The closed-form approximation z~_k = x~(k, n) + i y~(k, n) of the k-th zero of y_n.

    Raises:
        SingularDegreeError if n < 2.
        IndexOutOfRangeError if k is not in 1..n.
    """
    coefficients = fit_coefficients(n)
    k = _check_index(k, coefficients.n)

    return complex(coefficients.real_part(k), coefficients.imag_part(k))


def approx_zeros(n: int) -> ZeroSet:
    """
    All the closed-form approximate zeros of y_n.

    n = 1 is not covered by the closed form; the exact zero -1 is returned instead.
    """
    n = check_degree(n)
    if n == 1:
        zeros = np.array([-1.0 + 0.0j])
    else:
        zeros = _approx_array(n)

    return ZeroSet(n=n, zeros=zeros, provenance=Provenance.APPROX)


def verify_fit_conditions(n: int) -> List[float]:
    """
    Left-minus-right residuals of the seven fit conditions.

    The quadratic and the cubic are evaluated term by term from the printed coefficients, the
    slope condition analytically. See `FIT_CONDITIONS` for the order.
    """
    c = fit_coefficients(n)
    n = c.n

    return [
        float(c.printed_real_part(0.0)),
        float(c.printed_real_part(n / 2) + 3 / (2 * n)),
        float(c.printed_real_part(n + 1.0)),
        float(c.imag_part(1.0) + 1 / n),
        float(c.imag_part((n + 1) / 2)),
        float(c.imag_slope(n / 2) - 4 / n**2),
        float(c.imag_part(float(n)) - 1 / n),
    ]


def fit_condition_findings(
    n: int, threshold: float = FIT_CONDITION_THRESHOLD
) -> List[FitConditionFinding]:
    """
    Named fit-condition residuals for the degree n.

    A WARNING is logged for each condition whose residual exceeds `threshold`.
    """
    findings = [
        FitConditionFinding(n, name, residual, threshold)
        for name, residual in zip(FIT_CONDITIONS, verify_fit_conditions(n))
    ]
    for finding in findings:
        if not finding.ok:
            L.warning(
                "Fit condition %s fails at n=%d: residual %.3e > %.1e",
                finding.condition,
                n,
                finding.residual,
                threshold,
            )

    return findings


def real_zero_approx(n: int) -> float:
    """
    Closed-form estimate -3 (n + 1)^2 / (2 n^2 (n + 2)) of the real zero of y_n.

    For odd n it is x~((n + 1)/2, n). Its leading term is -3/(2n).
    """
    n = check_degree(n)
    if n < 1:
        raise SingularDegreeError("y_0 has no zero.")

    return -3 * (n + 1) ** 2 / (2 * n**2 * (n + 2))


def real_zero_reference(n: int) -> float:
    """Reference estimate -2 / (1.32549 n + 0.662743) of the real zero of y_n."""
    n = check_degree(n)
    if n < 1:
        raise SingularDegreeError("y_0 has no zero.")

    return -2.0 / (REFERENCE_SLOPE * n + REFERENCE_OFFSET)


def real_zero_leading_terms() -> Tuple[float, float]:
    """Coefficients c of the c/n leading terms of `real_zero_approx` and `real_zero_reference`."""
    return -1.5, -2.0 / REFERENCE_SLOPE


def _check_order(order: int, supported: Sequence[int] = (1, 2, 3)) -> int:
    if order not in supported:
        raise UnsupportedOrderError(
            f"Supported power-sum orders are {tuple(supported)}. Got {order}."
        )

    return int(order)


def power_sum_direct(n: int, order: int) -> complex:
    """Sum of the approximate zeros raised to `order`, by direct summation over k = 1..n."""
    order = _check_order(order)

    return complex(np.sum(_approx_array(n) ** order))


def _horner(coefficients: Sequence[int], n: int) -> int:
    value = 0
    for coefficient in coefficients:
        value = value * n + coefficient

    return value


def _rational_terms(n: int, order: int) -> Tuple[int, int]:
    if order == 2:
        numerator = _horner(P2_COEFFICIENTS, n)
        denominator = 105 * n**3 * (n**2 - 2 * n - 2) ** 2 * (n**2 + n - 2)
    else:
        numerator = _horner(P3_COEFFICIENTS, n)
        denominator = 35 * (n - 1) * n**5 * (n**3 - 6 * n - 4) ** 2

    return numerator, denominator


def power_sum_rational(n: int, order: int) -> complex:
    """
    The closed rational forms p2(n)/q2(n) and p3(n)/q3(n) of the sums of squares and cubes.

    The printed integer polynomials are evaluated exactly with Horner's scheme, so the only
    rounding is the final division.

    Raises:
        VanishingDenominatorError if q(n) = 0 (n = 0 or n = 1).
    """
    n = check_degree(n)
    order = _check_order(order, (2, 3))
    numerator, denominator = _rational_terms(n, order)
    if denominator == 0:
        raise VanishingDenominatorError(
            f"The denominator of the closed sum of order {order} vanishes at n={n}."
        )

    return complex(numerator / denominator)


def power_sum_exact(n: int, order: int) -> complex:
    """Exact power sums of the zeros of y_n: -1, 1/(2n - 1) and 0 for orders 1, 2 and 3."""
    n = check_degree(n)
    order = _check_order(order)
    if n < 1:
        raise SingularDegreeError("y_0 has no zero.")

    return complex({1: -1.0, 2: 1.0 / (2 * n - 1), 3: 0.0}[order])


@lru_cache(maxsize=None)
def _bernoulli_numbers(count: int) -> Tuple[Fraction, ...]:
    """B_0 .. B_{count-1} with the convention B_1 = +1/2."""
    numbers: List[Fraction] = []
    for m in range(count):
        if m == 0:
            numbers.append(Fraction(1))
            continue
        numbers.append(-sum(comb(m + 1, i) * numbers[i] for i in range(m)) / (m + 1))
    if count > 1:
        numbers[1] = Fraction(1, 2)

    return tuple(numbers)


def integer_power_sum(n: int, exponent: int) -> int:
    """Faulhaber's formula for 1^j + 2^j + ... + n^j."""
    bernoulli = _bernoulli_numbers(exponent + 1)
    total = sum(
        comb(exponent + 1, i) * bernoulli[i] * Fraction(n) ** (exponent + 1 - i)
        for i in range(exponent + 1)
    ) / (exponent + 1)

    return int(total)


def power_sum_faulhaber(n: int, order: int) -> complex:
    """
    Sum of the approximate zeros raised to `order`, without summing over k.

    (x~ + i y~)^order is expanded as a polynomial in k and each monomial k^j is summed with
    Faulhaber's formula.
    """
    order = _check_order(order)
    c = fit_coefficients(n)
    zero_polynomial = np.array([c.a0 + 1j * c.b0, c.a1 + 1j * c.b1, c.a2 + 1j * c.b2, 1j * c.b3])
    expanded = npp.polypow(zero_polynomial, order)

    return complex(
        sum(
            coefficient * float(integer_power_sum(c.n, j))
            for j, coefficient in enumerate(expanded)
        )
    )


def power_sum_report(n: int, order: int) -> PowerSumReport:
    """Direct, rational (orders 2 and 3) and exact power sums at degree n."""
    return PowerSumReport(
        n=n,
        order=order,
        direct_sum=power_sum_direct(n, order),
        rational_form=power_sum_rational(n, order) if order in (2, 3) else None,
        exact_value=power_sum_exact(n, order),
    )


def audit_rational_power_sum(n: int, order: int) -> PowerSumAudit:
    """
    Check the closed rational power sum against the direct summation.

    Agreement is measured relative to max(|rational|, sum_k |z~_k|^order), the latter being the
    size of the summands, since the sum of cubes nearly cancels. A WARNING is logged when the
    two disagree.
    """
    rational = power_sum_rational(n, order)
    zeros = _approx_array(n)
    direct = complex(np.sum(zeros**order))
    scale = max(abs(rational), float(np.sum(np.abs(zeros) ** order)))
    audit = PowerSumAudit(
        n=n,
        order=order,
        direct=direct,
        rational=rational,
        discrepancy=abs(direct - rational),
        tolerance=RATIONAL_AUDIT_RTOL * scale,
    )
    if not audit.agrees:
        L.warning(
            "Closed power sum of order %d disagrees with direct summation at n=%d: %.3e > %.3e",
            order,
            n,
            audit.discrepancy,
            audit.tolerance,
        )

    return audit
