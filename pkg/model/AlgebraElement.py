import numpy as np

from typing import Any
from typing import Union
from dataclasses import dataclass

from model.FiniteSpectrum import FiniteSpectrum

from utils.arrays import frozenComplex
from utils.errors import SpectrumMismatchError

Scalar = Union[int, float, complex]


@dataclass(frozen=True, eq=False)
class AlgebraElement:
    """
    A function on the finite spectrum X with complex values, i.e. an element of C(X).

    Attributes:
        spectrum (FiniteSpectrum): The points the values are indexed by.
        values (np.ndarray): One complex value per point, in spectrum order (read-only).
    """

    spectrum: FiniteSpectrum
    values: np.ndarray

    def __post_init__(self) -> None:
        values = frozenComplex(self.values, ndim=1)

        if values.shape[0] != len(self.spectrum):
            raise ValueError(f"expected {len(self.spectrum)} values, got {values.shape[0]}")

        object.__setattr__(self, "values", values)

    @classmethod
    def constant(cls, spectrum: FiniteSpectrum, value: Scalar) -> "AlgebraElement":
        return cls(spectrum, np.full(len(spectrum), value, dtype=np.complex128))

    @classmethod
    def one(cls, spectrum: FiniteSpectrum) -> "AlgebraElement":
        return cls.constant(spectrum, 1.0)

    @classmethod
    def zero(cls, spectrum: FiniteSpectrum) -> "AlgebraElement":
        return cls.constant(spectrum, 0.0)

    def __getitem__(self, label: str) -> complex:
        return complex(self.values[self.spectrum.index(label)])

    def _checked(self, other: "AlgebraElement") -> np.ndarray:
        if other.spectrum != self.spectrum:
            raise SpectrumMismatchError(f"{self.spectrum.points} vs {other.spectrum.points}")

        return other.values

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        return AlgebraElement(self.spectrum, self.values + self._checked(other))

    def __sub__(self, other: "AlgebraElement") -> "AlgebraElement":
        return AlgebraElement(self.spectrum, self.values - self._checked(other))

    def __neg__(self) -> "AlgebraElement":
        return AlgebraElement(self.spectrum, -self.values)

    def __rmul__(self, scalar: Scalar) -> "AlgebraElement":
        return AlgebraElement(self.spectrum, scalar * self.values)

    def allclose(self, other: Any, atol: float = 1e-12) -> bool:
        if isinstance(other, AlgebraElement):
            return other.spectrum == self.spectrum and bool(np.allclose(self.values, other.values, rtol=0, atol=atol))

        return bool(np.allclose(self.values, np.asarray(other, dtype=np.complex128), rtol=0, atol=atol))
