"""types used across bessel_zeros modules"""
from typing import TYPE_CHECKING

# pylint: disable=invalid-name
if TYPE_CHECKING:
    import numpy as np
    from numpy.typing import NDArray

    FloatArray = NDArray[np.floating]
    ComplexArray = NDArray[np.complexfloating]
    IntArray = NDArray[np.signedinteger]
else:
    NDArray = None

    FloatArray = None
    ComplexArray = None
    IntArray = None
# pylint: enable=invalid-name
