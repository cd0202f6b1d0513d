"""
Independent root finder for y_n: simultaneous Aberth-Ehrlich iteration.

The Newton corrections y_n / y_n' come from the scaled recurrence, so the iteration never forms
the (overflowing) coefficients of y_n.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Optional

import numpy as np

from bessel_zeros.approx_formulas import approx_zeros
from bessel_zeros.bessel_poly import check_degree, evaluate_with_bound, reverse_zeros
from bessel_zeros.exceptions import (
    BesselZerosError,
    ConfigurationError,
    NoConvergenceError,
    PoleError,
)
from bessel_zeros.utils import Provenance, ZeroSet

L = logging.getLogger(__name__)

# Sweeps with every |y_n(z_k)| at rounding level before the iteration settles for them.
STALLED_SWEEPS = 3


@dataclass(frozen=True)
class AberthConfig:
    """
    Settings of the Aberth-Ehrlich iteration.

    Attributes:
        tol: the iteration stops once every |y_n(z_k) / y_n'(z_k)| is at most `tol`.
        max_iter: maximal number of sweeps.
    """

    tol: float = 1e-12
    max_iter: int = 200

    def __post_init__(self):
        if not self.tol > 0:
            raise ConfigurationError(f"tol must be positive. Got {self.tol}.")
        if self.max_iter < 1:
            raise ConfigurationError(f"max_iter must be at least 1. Got {self.max_iter}.")


def _corrections(n, z):
    """Newton corrections y_n / y_n' and whether y_n(z_k) is within its rounding bound."""
    values, derivatives, bounds, _ = evaluate_with_bound(n, z)
    if np.any((derivatives == 0) & (values != 0)):
        raise PoleError(f"y_{n}' vanishes at an iterate away from a zero.")
    with np.errstate(divide="ignore", invalid="ignore"):
        corrections = np.where(values == 0, 0.0, values / derivatives)

    return corrections, np.abs(values) <= bounds


def aberth_solve(n: int, tol: float = 1e-12, max_iter: int = 200) -> ZeroSet:
    """
    Zeros of y_n by Aberth-Ehrlich iteration seeded with the closed-form approximation.

    Every sweep updates all the iterates at once (Jacobi style):

        N_k = y_n(z_k) / y_n'(z_k),
        w_k = N_k / (1 - N_k sum_{j != k} 1 / (z_k - z_j)),
        z_k <- z_k - w_k.

    The iteration stops once every |N_k| is at most `tol`. Beyond n = 12 that target is below
    the accuracy float64 evaluation of y_n can resolve, so the iteration also stops once every
    |y_n(z_k)| has stayed within its rounding bound for STALLED_SWEEPS sweeps, and returns the
    sweep with the smallest max_k |N_k|.

    Args:
        n: degree, n >= 1.
        tol: bound on every final |N_k|.
        max_iter: maximal number of sweeps.

    Returns:
        ZeroSet with provenance oracle whose residual_norm is max_k |N_k|.

    Raises:
        NoConvergenceError if `max_iter` sweeps reach neither `tol` nor the rounding level.
        PoleError if two iterates coincide.
    """
    n = check_degree(n)
    if n < 1:
        raise BesselZerosError("y_0 has no zero to solve for.")
    config = AberthConfig(tol=tol, max_iter=max_iter)
    z = approx_zeros(n).zeros.copy()

    best = None
    stalled = 0
    for sweep in range(config.max_iter + 1):
        corrections, at_rounding = _corrections(n, z)
        largest = float(np.max(np.abs(corrections)))
        if best is None or largest < best[0]:
            best = (largest, z, sweep)
        if largest <= config.tol:
            L.info("Aberth iteration for y_%d converged in %d sweeps (%.3e)", n, sweep, largest)
            return ZeroSet(
                n=n,
                zeros=z,
                provenance=Provenance.ORACLE,
                residual_norm=largest,
                iterations=sweep,
            )
        stalled = stalled + 1 if np.all(at_rounding) else 0
        if stalled >= STALLED_SWEEPS or (sweep == config.max_iter and stalled):
            largest, z, sweep = best
            L.info(
                "Aberth iteration for y_%d reached the rounding level in %d sweeps (%.3e)",
                n,
                sweep,
                largest,
            )
            return ZeroSet(
                n=n,
                zeros=z,
                provenance=Provenance.ORACLE,
                residual_norm=largest,
                iterations=sweep,
            )
        if sweep == config.max_iter:
            break
        differences = z[:, np.newaxis] - z[np.newaxis, :]
        np.fill_diagonal(differences, 1.0)
        if np.any(differences == 0):
            raise PoleError(f"Two Aberth iterates of y_{n} coincide at sweep {sweep}.")
        inverse = 1.0 / differences
        np.fill_diagonal(inverse, 0.0)
        repulsion = inverse.sum(axis=1)
        z = z - corrections / (1.0 - corrections * repulsion)
        if not np.all(np.isfinite(z)):
            raise NoConvergenceError(f"Aberth iteration for y_{n} diverged at sweep {sweep}.")
        L.debug("n=%d sweep=%d max_correction=%.3e", n, sweep, largest)

    raise NoConvergenceError(
        f"Aberth iteration for y_{n} did not reach {config.tol:.1e} in {config.max_iter} sweeps "
        f"(last correction {largest:.3e})."
    )


def reverse_polynomial_zeros(n: int, config: Optional[AberthConfig] = None) -> ZeroSet:
    """Zeros of the reverse Bessel polynomial theta_n, i.e., the poles of Bessel filters."""
    config = config or AberthConfig()

    return reverse_zeros(aberth_solve(n, config.tol, config.max_iter))
