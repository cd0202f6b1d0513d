"""
Limit curve of the normalized zeros n z_k of y_n.

With the principal square root,

    W(z) = exp(sqrt(1 + 1/z^2)) / (z (1 + sqrt(1 + 1/z^2))),

the normalized zeros accumulate on Gamma = {z : |W(z)| = 1, |arg z| >= pi/2}. Gamma is never
traced; membership is measured by the defect | |W(z)| - 1 |.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from bessel_zeros.approx_formulas import approx_zero, approx_zeros
from bessel_zeros.exceptions import IndexOutOfRangeError, SingularArgumentError
from bessel_zeros.utils import ZeroSet

L = logging.getLogger(__name__)

GAMMA_TOLERANCE = 1e-3


@dataclass(frozen=True)
class GammaSample:
    """
    |W| at a point and its membership of Gamma.

    Attributes:
        on_curve: | |W| - 1 | <= tolerance and |arg point| >= pi/2.
        arg_violation: |arg point| < pi/2, whatever |W|.
    """

    point: complex
    abs_w: float
    on_curve: bool
    arg_violation: bool


def w_function(z):
    """
    W(z) with the principal branch of the square root.

    Args:
        z: complex scalar or array_like, nonzero.

    Raises:
        SingularArgumentError if z = 0 or 1 + sqrt(1 + 1/z^2) = 0.
    """
    z = np.asarray(z, dtype=complex)
    if np.any(z == 0):
        raise SingularArgumentError("W is singular at z = 0.")
    root = np.sqrt(1.0 + 1.0 / z**2)
    if np.any(1.0 + root == 0):
        raise SingularArgumentError("W is singular where 1 + sqrt(1 + 1/z^2) vanishes.")
    w = np.exp(root) / (z * (1.0 + root))

    return complex(w) if w.ndim == 0 else w


def _arg_violation(z: complex) -> bool:
    return bool(abs(np.angle(z)) < np.pi / 2)


def gamma_distance(z: complex) -> float:
    """
    The defect | |W(z)| - 1 |, a proxy for the distance of z to Gamma.

    Points of the right half-plane violate the arg constraint of Gamma whatever their defect;
    this is logged at DEBUG level and reported by `gamma_sample`.
    """
    defect = abs(abs(w_function(z)) - 1.0)
    if _arg_violation(z):
        L.debug("%s lies outside |arg z| >= pi/2", z)

    return float(defect)


def gamma_sample(z: complex, tolerance: float = GAMMA_TOLERANCE) -> GammaSample:
    """Sample W at `z` and decide whether `z` lies on Gamma to `tolerance`."""
    abs_w = abs(w_function(z))
    violation = _arg_violation(z)

    return GammaSample(
        point=complex(z),
        abs_w=float(abs_w),
        on_curve=bool(abs(abs_w - 1.0) <= tolerance and not violation),
        arg_violation=violation,
    )


def arg_constraint_violations(zeros: ZeroSet) -> List[int]:
    """
    1-based indices k whose normalized zero n z_k has |arg| < pi/2.

    The constraint holds for the limit points; finite-n violations are logged as WARNING.
    """
    violations = [
        k for k, point in enumerate(zeros.normalized(), start=1) if _arg_violation(point)
    ]
    if violations:
        L.warning(
            "%d normalized zeros of y_%d (%s provenance) violate |arg z| >= pi/2",
            len(violations),
            zeros.n,
            zeros.provenance.value,
        )

    return violations


def limit_defect_curve(
    k: int, n_list: Sequence[int], zero_sets: Optional[Dict[int, ZeroSet]] = None
) -> List[Tuple[int, float]]:
    """
    Scaled defects n * gamma_distance(n z_k) along a list of degrees, for a fixed k.

    Args:
        k: 1-based zero index.
        n_list: degrees, each at least max(k, 2).
        zero_sets: optional mapping degree -> zero set; the closed-form approximate zero is used
            for the degrees it does not contain. A zero set contributes the zero at the sorted
            position of z~_k among the closed-form zeros, since y~(k, n) is not monotone in k.

    Returns:
        list of (n, scaled defect).
    """
    curve = []
    for n in n_list:
        if not 1 <= k <= n:
            raise IndexOutOfRangeError(f"The zero index must lie in 1..{n}. Got {k}.")
        zero = approx_zero(k, n)
        if zero_sets is not None and n in zero_sets:
            position = int(np.argmin(np.abs(approx_zeros(n).zeros - zero)))
            zero = complex(zero_sets[n].zeros[position])
        curve.append((n, n * gamma_distance(n * zero)))

    return curve
