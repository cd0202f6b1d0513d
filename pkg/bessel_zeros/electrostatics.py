"""
Zeros of y_n as the equilibrium of unit charges in an external field.

From x^2 y'' + 2 (x + 1) y' - n (n + 1) y = 0, the zeros z_1, ..., z_n of y_n satisfy

    F_j = sum_{k != j} 1 / (z_j - z_k) + (z_j + 1) / z_j^2 = 0,    j = 1..n.

The system is holomorphic in the z_j, so it is solved by a damped complex Newton iteration,
seeded with the closed-form approximate zeros.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from bessel_zeros.approx_formulas import approx_zeros
from bessel_zeros.bessel_poly import check_degree, evaluate_many, evaluate_with_bound
from bessel_zeros.exceptions import (
    BesselZerosError,
    CoincidentPointsError,
    ConfigurationError,
    NoConvergenceError,
    SingularJacobianError,
    ZeroArgumentError,
)
from bessel_zeros.typing import ComplexArray, FloatArray
from bessel_zeros.utils import Provenance, ZeroSet, sort_zeros, symmetrize_conjugates

L = logging.getLogger(__name__)


@dataclass(frozen=True)
class NewtonConfig:
    """
    Settings of the electrostatic Newton solve.

    Attributes:
        tol_residual: stopping threshold on the max-norm of the scaled residual.
        max_iter: maximal number of Newton steps.
        damping: initial step length factor, halved while the residual does not decrease.
        min_step: the solve gives up when the step length factor falls below this value.
    """

    tol_residual: float = 1e-12
    max_iter: int = 100
    damping: float = 1.0
    min_step: float = 1e-4

    def __post_init__(self):
        if not self.tol_residual > 0:
            raise ConfigurationError(f"tol_residual must be positive. Got {self.tol_residual}.")
        if self.max_iter < 1:
            raise ConfigurationError(f"max_iter must be at least 1. Got {self.max_iter}.")
        if not 0 < self.damping <= 1:
            raise ConfigurationError(f"damping must lie in (0, 1]. Got {self.damping}.")
        if not self.min_step > 0:
            raise ConfigurationError(f"min_step must be positive. Got {self.min_step}.")


def _differences(zeros) -> Tuple[ComplexArray, ComplexArray]:
    """Return the points as an array and the matrix of 1 / (z_j - z_k), zero on the diagonal."""
    z = np.asarray(zeros, dtype=complex).ravel()
    if np.any(z == 0):
        raise ZeroArgumentError("The external field (z + 1) / z^2 is singular at z = 0.")
    differences = z[:, np.newaxis] - z[np.newaxis, :]
    np.fill_diagonal(differences, 1.0)
    if np.any(differences == 0):
        raise CoincidentPointsError("Two charges occupy the same position.")
    inverse = 1.0 / differences
    np.fill_diagonal(inverse, 0.0)

    return z, inverse


def electrostatic_residual(zeros) -> ComplexArray:
    """
    F_j = sum_{k != j} 1 / (z_j - z_k) + (z_j + 1) / z_j^2 for every j.

    Args:
        zeros: sequence of n pairwise distinct nonzero complex points.

    Returns:
        complex array of length n.

    Raises:
        CoincidentPointsError if two points coincide.
        ZeroArgumentError if a point is 0.
    """
    z, inverse = _differences(zeros)

    return inverse.sum(axis=1) + (z + 1.0) / z**2


def electrostatic_residual_real(zeros) -> FloatArray:
    """
    The electrostatic equations in real coordinates z_j = x_j + i y_j.

    Returns:
        array of shape (n, 2) whose columns are

            sum_k (x_j - x_k) / |z_j - z_k|^2 + (x_j^3 + x_j^2 + x_j y_j^2 - y_j^2) / |z_j|^4,
            sum_k (y_j - y_k) / |z_j - z_k|^2 + y_j (x_j^2 + 2 x_j + y_j^2) / |z_j|^4,

        i.e., (Re F_j, -Im F_j).
    """
    z, inverse = _differences(zeros)
    x, y = z.real, z.imag
    modulus4 = np.abs(z) ** 4
    dx = x[:, np.newaxis] - x[np.newaxis, :]
    dy = y[:, np.newaxis] - y[np.newaxis, :]
    squared = np.abs(inverse) ** 2
    first = (dx * squared).sum(axis=1) + (x**3 + x**2 + x * y**2 - y**2) / modulus4
    second = (dy * squared).sum(axis=1) + y * (x**2 + 2 * x + y**2) / modulus4

    return np.column_stack((first, second))


def electrostatic_jacobian(zeros) -> ComplexArray:
    """
    Complex Jacobian dF_j / dz_k of the electrostatic residual.

    Off-diagonal entries are 1 / (z_j - z_k)^2, diagonal entries
    -sum_{k != j} 1 / (z_j - z_k)^2 - 1 / z_j^2 - 2 / z_j^3.
    """
    z, inverse = _differences(zeros)
    jacobian = inverse**2
    np.fill_diagonal(jacobian, -jacobian.sum(axis=1) - 1.0 / z**2 - 2.0 / z**3)

    return jacobian


def scaled_residual(zeros) -> Tuple[ComplexArray, float]:
    """
    Residual and its scaled max-norm.

    Each F_j is divided by sum_{k != j} |1 / (z_j - z_k)| + |1 / z_j| + |1 / z_j^2|, the size of
    the terms it is made of, so that the norm does not grow with n at the rounding level.

    Returns:
        tuple (F, max_j |F_j| / S_j).
    """
    z, inverse = _differences(zeros)
    residual = inverse.sum(axis=1) + (z + 1.0) / z**2
    scale = np.abs(inverse).sum(axis=1) + np.abs(1.0 / z) + np.abs(1.0 / z**2)

    return residual, float(np.max(np.abs(residual) / scale))


def _default_seed(n: int) -> ComplexArray:
    return approx_zeros(n).zeros


def newton_solve(
    n: int, config: Optional[NewtonConfig] = None, seed: Optional[ZeroSet] = None
) -> ZeroSet:
    """
    Solve the electrostatic equations of y_n by damped Newton iteration.

    Args:
        n: degree, n >= 1.
        config: solver settings; defaults to NewtonConfig().
        seed: starting points; defaults to the closed-form approximate zeros ({-1} for n = 1).

    Returns:
        ZeroSet with provenance newton, exactly closed under conjugation, whose residual_norm is
        the scaled residual norm of the returned points and abs_residual_norm max_j |F_j|.

    Raises:
        NoConvergenceError if max_iter is reached or the step factor falls below min_step.
        SingularJacobianError if a Newton step cannot be computed.
    """
    n = check_degree(n)
    if n < 1:
        raise BesselZerosError("y_0 has no zero to solve for.")
    config = config or NewtonConfig()
    if seed is None:
        z = _default_seed(n)
    else:
        if seed.n != n:
            raise BesselZerosError(f"A seed of degree {seed.n} cannot start a solve of degree {n}.")
        z = sort_zeros(seed.zeros)

    residual, norm = scaled_residual(z)
    iterations = 0
    while norm > config.tol_residual:
        if iterations >= config.max_iter:
            raise NoConvergenceError(
                f"Newton solve of degree {n} did not converge in {config.max_iter} iterations "
                f"(scaled residual {norm:.3e})."
            )
        try:
            step = np.linalg.solve(electrostatic_jacobian(z), -residual)
        except np.linalg.LinAlgError as error_:
            raise SingularJacobianError(
                f"Singular Jacobian at iteration {iterations} of the degree {n} solve."
            ) from error_
        if not np.all(np.isfinite(step)):
            raise SingularJacobianError(
                f"Non-finite Newton step at iteration {iterations} of the degree {n} solve."
            )

        factor = config.damping
        while True:
            trial = z + factor * step
            try:
                trial_residual, trial_norm = scaled_residual(trial)
            except (CoincidentPointsError, ZeroArgumentError):
                trial_norm = np.inf
            if trial_norm < norm:
                break
            factor /= 2.0
            if factor < config.min_step:
                raise NoConvergenceError(
                    f"Newton solve of degree {n} stalled at iteration {iterations}: "
                    f"no decrease of the scaled residual {norm:.3e} down to step {factor:.1e}."
                )
        z, residual, norm = trial, trial_residual, trial_norm
        iterations += 1
        L.debug("n=%d iteration=%d step=%.3g scaled_residual=%.3e", n, iterations, factor, norm)

    z = symmetrize_conjugates(sort_zeros(z))
    residual, norm = scaled_residual(z)
    absolute = float(np.max(np.abs(residual)))
    L.info(
        "Solved y_%d in %d iterations, scaled residual %.3e, residual %.3e",
        n,
        iterations,
        norm,
        absolute,
    )

    return ZeroSet(
        n=n,
        zeros=z,
        provenance=Provenance.NEWTON,
        residual_norm=norm,
        iterations=iterations,
        abs_residual_norm=absolute,
    )


def newton_corrections(zeros: ZeroSet) -> FloatArray:
    """|y_n(z_k) / y_n'(z_k)| for every zero, computed from the scaled evaluation."""
    values, derivatives, _ = evaluate_many(zeros.n, zeros.zeros)
    with np.errstate(divide="ignore", invalid="ignore"):
        corrections = np.abs(values / derivatives)

    return np.where(values == 0, 0.0, corrections)


def validate_against_polynomial(zeros: ZeroSet) -> float:
    """
    Largest Newton correction max_k |y_n(z_k) / y_n'(z_k)| over a zero set.

    It is 0 for exact zeros and approximates the distance to the nearest true zero otherwise.
    """
    if zeros.n == 0:
        return 0.0

    return float(np.max(newton_corrections(zeros)))


def rounding_ratio(zeros: ZeroSet) -> float:
    """
    max_k |y_n(z_k)| / b_k, with b_k the rounding bound of the float64 evaluation at z_k.

    At most 1 when every point is a zero of y_n as far as float64 evaluation can tell, which
    is the attainable check once the Newton corrections of `validate_against_polynomial` are
    dominated by rounding (n > 12).
    """
    if zeros.n == 0:
        return 0.0
    values, _, bounds, _ = evaluate_with_bound(zeros.n, zeros.zeros)
    with np.errstate(divide="ignore", invalid="ignore"):
        ratios = np.where(values == 0, 0.0, np.abs(values) / bounds)

    return float(np.max(ratios))
