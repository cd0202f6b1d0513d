"""Generic zero-set tools"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Any, Dict, List, Sequence, Tuple

import numpy as np

from bessel_zeros.exceptions import BesselZerosError
from bessel_zeros.typing import ComplexArray


class Provenance(enum.Enum):
    """Where a set of zeros comes from."""

    APPROX = "approx"
    NEWTON = "newton"
    ORACLE = "oracle"


def sort_zeros(zeros: Sequence[complex]) -> ComplexArray:
    """
    Sort complex points by ascending imaginary part, ties broken by ascending real part.

    Args:
        zeros: sequence of complex numbers.

    Returns:
        1D complex array, sorted.
    """
    zeros = np.asarray(zeros, dtype=complex).ravel()
    return zeros[np.lexsort((zeros.real, zeros.imag))]


def symmetrize_conjugates(zeros: ComplexArray) -> ComplexArray:
    """
    Make a sorted zero set exactly closed under conjugation.

    The k-th and the (n+1-k)-th zeros are replaced by the average of z_k and conj(z_{n+1-k})
    and its conjugate. For odd n the imaginary part of the middle zero is set to 0.

    Args:
        zeros: 1D complex array sorted with `sort_zeros`.

    Returns:
        a new sorted 1D complex array.
    """
    zeros = np.asarray(zeros, dtype=complex)
    averaged = 0.5 * (zeros + np.conj(zeros[::-1]))
    size = len(averaged)
    half = size // 2
    symmetric = np.empty_like(averaged)
    symmetric[:half] = averaged[:half]
    symmetric[size - half :] = np.conj(averaged[:half][::-1])
    if size % 2 == 1:
        symmetric[half] = averaged[half].real

    return sort_zeros(symmetric)


@dataclass
class ZeroSet:
    """
    The n zeros of y_n, sorted by ascending imaginary part then ascending real part.

    Attributes:
        n: degree of the polynomial.
        zeros: 1D complex array of length n.
        provenance: how the zeros were obtained.
        residual_norm: max-norm of the scaled electrostatic residual (newton), of the Newton
            correction |y_n / y_n'| (oracle) or NaN when not measured (approx).
        iterations: number of solver iterations, 0 for closed-form zeros.
        abs_residual_norm: max_j |F_j| of the electrostatic residual (newton), NaN otherwise.
    """

    n: int
    zeros: ComplexArray
    provenance: Provenance
    residual_norm: float = float("nan")
    iterations: int = 0
    abs_residual_norm: float = float("nan")

    def __post_init__(self):
        self.zeros = sort_zeros(self.zeros)
        if len(self.zeros) != self.n:
            raise BesselZerosError(
                f"A zero set of degree {self.n} needs {self.n} zeros, got {len(self.zeros)}."
            )

    def __len__(self) -> int:
        return self.n

    def real_zeros(self, tol: float = 0.0) -> ComplexArray:
        """Return the zeros whose imaginary part is at most `tol` in magnitude."""
        return self.zeros[np.abs(self.zeros.imag) <= tol]

    def normalized(self) -> ComplexArray:
        """Return the zeros of y_n(x/n), i.e., n * z_k."""
        return self.n * self.zeros


@dataclass
class Table:
    """
    A rectangular result with named columns and trailing comment lines.

    Attributes:
        columns: column names.
        rows: one tuple per row, same length as `columns`.
        comments: each dict becomes one comment line `# key=value key=value`.
    """

    columns: Tuple[str, ...]
    rows: List[Tuple[Any, ...]] = field(default_factory=list)
    comments: List[Dict[str, Any]] = field(default_factory=list)

    def column(self, name: str) -> List[Any]:
        """Return the values of the column `name`."""
        index = self.columns.index(name)
        return [row[index] for row in self.rows]
