"""Arithmetic, norm and order of the commutative C*-algebra C(X) for a finite spectrum X."""

import numpy as np

from typing import Optional

from model.AlgebraElement import AlgebraElement

from utils.config import getDefaultTolerance
from utils.errors import SpectrumMismatchError


def _requireSameSpectrum(a: AlgebraElement, b: AlgebraElement) -> None:
    if a.spectrum != b.spectrum:
        raise SpectrumMismatchError(f"{list(a.spectrum.points)} vs {list(b.spectrum.points)}")


def algMul(a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
    """Pointwise product (ab)(t) = a(t)b(t)."""

    _requireSameSpectrum(a, b)

    return AlgebraElement(a.spectrum, a.values * b.values)


def algAdjoint(a: AlgebraElement) -> AlgebraElement:
    """Pointwise complex conjugate."""

    return AlgebraElement(a.spectrum, np.conj(a.values))


def algNorm(a: AlgebraElement) -> float:
    """The C*-norm: sup over the spectrum of |a(t)|."""

    return float(np.max(np.abs(a.values)))


def algIsPositive(a: AlgebraElement, tol: Optional[float] = None) -> bool:
    """a >= 0 iff every value is real up to tol and has real part >= -tol."""

    tol = getDefaultTolerance() if tol is None else tol

    return bool(np.all(np.abs(a.values.imag) <= tol) and np.all(a.values.real >= -tol))


def algLeq(a: AlgebraElement, b: AlgebraElement, tol: Optional[float] = None) -> bool:
    """a <= b in the positive-cone order, i.e. b - a >= 0."""

    _requireSameSpectrum(a, b)

    return algIsPositive(b - a, tol)
