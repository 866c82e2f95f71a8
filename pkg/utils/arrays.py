import numpy as np

from typing import Any


def frozenComplex(values: Any, ndim: int) -> np.ndarray:
    """Copies values into a read-only complex128 array with the given number of dimensions."""

    array = np.array(values, dtype=np.complex128)

    if array.ndim != ndim:
        raise ValueError(f"expected a {ndim}-dimensional array, got shape {array.shape}")

    array.setflags(write=False)

    return array

