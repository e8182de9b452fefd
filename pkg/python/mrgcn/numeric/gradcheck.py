"""Central finite differences for checking hand-written gradients."""

from collections.abc import Callable

import numpy as np
from numeric.node import Matrix


def numerical_gradient(f: Callable[[], float], array: Matrix, h: float = 1e-5) -> Matrix:
    """d f / d array, perturbing array in place and restoring it."""
    grad = np.zeros_like(array)
    it = np.nditer(array, flags=["multi_index"])
    for _ in it:
        index = it.multi_index
        original = array[index]
        array[index] = original + h
        upper = f()
        array[index] = original - h
        lower = f()
        array[index] = original
        grad[index] = (upper - lower) / (2.0 * h)
    return grad


def relative_error(analytic: Matrix, numeric: Matrix) -> float:
    scale = max(float(np.abs(analytic).max(initial=0.0)), float(np.abs(numeric).max(initial=0.0)), 1e-8)
    return float(np.abs(analytic - numeric).max(initial=0.0)) / scale
