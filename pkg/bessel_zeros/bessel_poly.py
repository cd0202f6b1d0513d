"""
Bessel polynomials y_n and reverse Bessel polynomials theta_n(x) = x^n y_n(1/x).

y_n is evaluated with the three-term recurrence

    y_k(x) = (2k - 1) x y_{k-1}(x) + y_{k-2}(x),    y_0 = 1, y_1 = 1 + x,

differentiated term-wise. The explicit coefficients (n + k)! / ((n - k)! k! 2^k) overflow double
precision near n = 150, so the recurrence keeps its state as mantissas sharing a power-of-two
exponent which is updated whenever the mantissas leave [2^-512, 2^512].
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import List, Tuple

import numpy as np

from bessel_zeros.exceptions import (
    BesselZerosError,
    DegreeTooLargeError,
    InvalidDegreeError,
    PoleError,
    ZeroArgumentError,
)
from bessel_zeros.typing import ComplexArray, FloatArray, IntArray
from bessel_zeros.utils import ZeroSet

L = logging.getLogger(__name__)

RESCALE_HIGH = 2.0**512
RESCALE_LOW = 2.0**-512
# Multiple of the machine epsilon bounding the rounding of one step (2k - 1) x y_k + y_{k-1}.
ROUNDING_FACTOR = 4.0


@dataclass(frozen=True)
class BesselEval:
    """
    Value and first derivative of y_n at a point.

    The true value is `value * 2**scale_exp` and the true derivative is
    `derivative * 2**scale_exp`.
    """

    value: complex
    derivative: complex
    scale_exp: int

    def unscaled(self) -> Tuple[complex, complex]:
        """Return (y_n, y_n'), which overflows to inf when the magnitudes are too large."""
        return _ldexp_complex(self.value, self.scale_exp), _ldexp_complex(
            self.derivative, self.scale_exp
        )


def _ldexp_complex(mantissa, exponent):
    return complex(math.ldexp(mantissa.real, exponent), math.ldexp(mantissa.imag, exponent))


def check_degree(n: int) -> int:
    """
    Validate a polynomial degree.

    Raises:
        InvalidDegreeError if `n` is not a non-negative integer.
    """
    if isinstance(n, bool) or int(n) != n or n < 0:
        raise InvalidDegreeError(f"The degree must be a non-negative integer. Got {n}.")

    return int(n)


@lru_cache(maxsize=None)
def coefficient_safe_bound() -> int:
    """
    Largest n whose leading coefficient (2n)! / (n! 2^n) is finite in float64.

    The leading coefficient is the largest one, so every coefficient of y_n is finite up to this
    bound.
    """
    degree, leading = 0, np.float64(1.0)
    with np.errstate(over="ignore"):
        while True:
            following = leading * np.float64(2 * degree + 1)
            if not np.isfinite(following):
                return degree
            leading = following
            degree += 1


def coefficients(n: int) -> List[float]:
    """
    Coefficients of y_n in ascending powers of x.

    Args:
        n: degree, at most `coefficient_safe_bound()`.

    Returns:
        list of n + 1 floats, the k-th being (n + k)! / ((n - k)! k! 2^k).

    Raises:
        DegreeTooLargeError if the coefficients overflow.
    """
    n = check_degree(n)
    if n > coefficient_safe_bound():
        raise DegreeTooLargeError(
            f"The coefficients of y_{n} overflow float64; "
            f"the largest supported degree is {coefficient_safe_bound()}."
        )

    return [
        float(math.factorial(n + k) // (math.factorial(n - k) * math.factorial(k) * 2**k))
        for k in range(n + 1)
    ]


def reverse_coefficients(n: int) -> List[float]:
    """Coefficients of theta_n(x) = x^n y_n(1/x) in ascending powers of x."""
    return coefficients(n)[::-1]


def _rescale(states, exponents):
    magnitudes = np.max(np.abs(np.stack(states)), axis=0)
    needs_rescale = (magnitudes > RESCALE_HIGH) | ((magnitudes < RESCALE_LOW) & (magnitudes > 0))
    if not np.any(needs_rescale):
        return states, exponents
    _, shift = np.frexp(magnitudes)
    shift = np.where(needs_rescale, shift, 0)
    factor = np.ldexp(1.0, -shift)

    return [state * factor for state in states], exponents + shift


def _recurrence(n: int, z, second_derivative: bool = False, rounding_bound: bool = False):
    """
    Run the scaled recurrence on a flat complex array.

    With `rounding_bound`, a running bound m_k on the accumulated rounding error of y_k is carried
    along: the local error of each step is at most ROUNDING_FACTOR eps (|(2k - 1) x y_{k-1}| +
    |y_k|), and earlier errors propagate through the same recurrence with x replaced by |x|.

    Returns:
        tuple (values, derivatives, second_derivatives, bounds, exponents); second_derivatives
        and bounds are None unless requested. Every array shares `exponents`.
    """
    x = np.asarray(z, dtype=complex).ravel()
    if not np.all(np.isfinite(x)):
        raise BesselZerosError("Bessel polynomials can only be evaluated at finite points.")

    exponents = np.zeros(x.shape, dtype=np.int64)
    if n == 0:
        zeros = np.zeros_like(x)
        return (
            np.ones_like(x),
            zeros,
            (zeros.copy() if second_derivative else None),
            (np.zeros(x.shape) if rounding_bound else None),
            exponents,
        )

    absolute = np.abs(x)
    unit = ROUNDING_FACTOR * np.finfo(float).eps
    # (y_{k-1}, y_k, y'_{k-1}, y'_k, y''_{k-1}, y''_k, m_{k-1}, m_k)
    states = [
        np.ones_like(x),
        1.0 + x,
        np.zeros_like(x),
        np.ones_like(x),
        np.zeros_like(x),
        np.zeros_like(x),
        np.zeros(x.shape),
        (unit * np.abs(1.0 + x) if rounding_bound else np.zeros(x.shape)),
    ]
    for k in range(2, n + 1):
        factor = 2 * k - 1
        p_prev, p_cur, d_prev, d_cur, s_prev, s_cur, m_prev, m_cur = states
        product = factor * x * p_cur
        p_next = product + p_prev
        d_next = factor * (p_cur + x * d_cur) + d_prev
        if second_derivative:
            s_next = factor * (2.0 * d_cur + x * s_cur) + s_prev
        else:
            s_next = s_cur
        if rounding_bound:
            local = unit * (np.abs(product) + np.abs(p_next))
            m_next = factor * absolute * m_cur + m_prev + local
        else:
            m_next = m_cur
        states = [p_cur, p_next, d_cur, d_next, s_cur, s_next, m_cur, m_next]
        states, exponents = _rescale(states, exponents)

    return (
        states[1],
        states[3],
        (states[5] if second_derivative else None),
        (states[7] if rounding_bound else None),
        exponents,
    )


def evaluate_many(n: int, z) -> Tuple[ComplexArray, ComplexArray, IntArray]:
    """
    Evaluate y_n and y_n' at every point of `z`.

    Args:
        n: degree.
        z: complex array_like of finite points.

    Returns:
        tuple (values, derivatives, scale_exps) of arrays with the shape of `z`; the true values
        are values * 2**scale_exps, and likewise for the derivatives.
    """
    n = check_degree(n)
    shape = np.shape(z)
    values, derivatives, _, _, exponents = _recurrence(n, z)

    return values.reshape(shape), derivatives.reshape(shape), exponents.reshape(shape)


def evaluate_with_bound(n: int, z) -> Tuple[ComplexArray, ComplexArray, FloatArray, IntArray]:
    """
    Evaluate y_n and y_n' at every point of `z` with a bound on the rounding error of y_n.

    Near a zero the computed y_n is pure rounding noise of size up to the bound, which grows
    like eps y_n(|z|): zeros of y_n can only be located to within `rounding_radii`.

    Returns:
        tuple (values, derivatives, bounds, scale_exps); the bounds share the scale exponents.
    """
    n = check_degree(n)
    shape = np.shape(z)
    values, derivatives, _, bounds, exponents = _recurrence(n, z, rounding_bound=True)

    return (
        values.reshape(shape),
        derivatives.reshape(shape),
        bounds.reshape(shape),
        exponents.reshape(shape),
    )


def rounding_radii(n: int, z) -> FloatArray:
    """
    bound / |y_n'| at every point of `z`: the distance to a zero below which y_n(z) computed in
    float64 cannot be told apart from 0. Infinite where y_n' vanishes.
    """
    _, derivatives, bounds, _ = evaluate_with_bound(n, z)
    with np.errstate(divide="ignore"):
        return bounds / np.abs(derivatives)


def evaluate(n: int, z: complex) -> BesselEval:
    """
    Evaluate y_n and its derivative at a single complex point.

    Example:
        evaluate(1, -1.0).value == 0
    """
    values, derivatives, exponents = evaluate_many(n, np.array([z], dtype=complex))

    return BesselEval(complex(values[0]), complex(derivatives[0]), int(exponents[0]))


def log_derivative(n: int, z: complex) -> complex:
    """
    Return y_n'(z) / y_n(z).

    The ratio of the mantissas is free of the scale exponent, hence overflow-free.

    Raises:
        PoleError if y_n(z) evaluates to zero.
    """
    evaluation = evaluate(n, z)
    if evaluation.value == 0:
        raise PoleError(f"y_{n} vanishes at {z}: the logarithmic derivative has a pole there.")

    return evaluation.derivative / evaluation.value


def ode_residual(n: int, z: complex) -> float:
    """
    Relative residual of x^2 y'' + 2 (x + 1) y' - n (n + 1) y = 0 at `z`.

    The residual is divided by the sum of the magnitudes of its three terms, so that rounding
    alone gives values of the order of the machine epsilon.
    """
    n = check_degree(n)
    values, derivatives, seconds, _, _ = _recurrence(n, np.array([z], dtype=complex), True)
    z = complex(z)
    terms = (
        z * z * seconds[0],
        2.0 * (z + 1.0) * derivatives[0],
        -n * (n + 1) * values[0],
    )
    scale = sum(abs(term) for term in terms)
    if scale == 0:
        return 0.0

    return abs(sum(terms)) / scale


def reverse_zeros(zeros: ZeroSet) -> ZeroSet:
    """
    Zeros of theta_n(x) = x^n y_n(1/x) from the zeros of y_n.

    Args:
        zeros: zero set of y_n.

    Returns:
        ZeroSet of the reciprocals, sorted again, with the same provenance, residual and
        iteration count.

    Raises:
        ZeroArgumentError if one of the input points is 0.
    """
    if np.any(zeros.zeros == 0):
        raise ZeroArgumentError("0 is never a zero of y_n and has no reciprocal.")
    L.debug("Reversing %d zeros of y_%d", zeros.n, zeros.n)

    return ZeroSet(
        n=zeros.n,
        zeros=1.0 / zeros.zeros,
        provenance=zeros.provenance,
        residual_norm=zeros.residual_norm,
        iterations=zeros.iterations,
        abs_residual_norm=zeros.abs_residual_norm,
    )
