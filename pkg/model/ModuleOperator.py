import numpy as np

from typing import Tuple
from typing import Union
from typing import Sequence
from dataclasses import dataclass

from model.ModuleShape import ModuleShape
from model.AlgebraElement import AlgebraElement

from utils.arrays import frozenComplex
from utils.errors import ShapeMismatchError


@dataclass(frozen=True, eq=False)
class ModuleOperator:
    """
    An adjointable A-linear map between two modules over the same spectrum.

    Over a finite spectrum such a map is exactly a field of matrices, one per point;
    fibers[t] has shape (codomainShape.fiberDims[t], domainShape.fiberDims[t]).
    """

    domainShape: ModuleShape
    codomainShape: ModuleShape
    fibers: Tuple[np.ndarray, ...]

    def __post_init__(self) -> None:
        if self.domainShape.spectrum != self.codomainShape.spectrum:
            raise ShapeMismatchError("domain and codomain live over different spectra")

        if len(self.fibers) != len(self.domainShape):
            raise ShapeMismatchError(f"expected {len(self.domainShape)} fibers, got {len(self.fibers)}")

        fibers = []
        dims = zip(self.fibers, self.codomainShape.fiberDims, self.domainShape.fiberDims)
        for point, (fiber, rows, columns) in enumerate(dims):
            matrix = frozenComplex(np.asarray(fiber, dtype=np.complex128).reshape(rows, columns), ndim=2)
            fibers.append(matrix)

        object.__setattr__(self, "fibers", tuple(fibers))

    @classmethod
    def identity(cls, shape: ModuleShape) -> "ModuleOperator":
        return cls(shape, shape, tuple(np.eye(dim, dtype=np.complex128) for dim in shape.fiberDims))

    @classmethod
    def zeros(cls, domainShape: ModuleShape, codomainShape: ModuleShape) -> "ModuleOperator":
        dims = zip(codomainShape.fiberDims, domainShape.fiberDims)

        fibers = tuple(np.zeros((rows, cols), dtype=np.complex128) for rows, cols in dims)

        return cls(domainShape, codomainShape, fibers)

    @classmethod
    def square(cls, shape: ModuleShape, fibers: Sequence[np.ndarray]) -> "ModuleOperator":
        return cls(shape, shape, tuple(fibers))

    @property
    def isSquare(self) -> bool:
        return self.domainShape == self.codomainShape

    def _checked(self, other: "ModuleOperator") -> Tuple[np.ndarray, ...]:
        if other.domainShape != self.domainShape or other.codomainShape != self.codomainShape:
            raise ShapeMismatchError("operators act between different modules")

        return other.fibers

    def __add__(self, other: "ModuleOperator") -> "ModuleOperator":
        fibers = tuple(a + b for a, b in zip(self.fibers, self._checked(other)))

        return ModuleOperator(self.domainShape, self.codomainShape, fibers)

    def __sub__(self, other: "ModuleOperator") -> "ModuleOperator":
        fibers = tuple(a - b for a, b in zip(self.fibers, self._checked(other)))

        return ModuleOperator(self.domainShape, self.codomainShape, fibers)

    def __neg__(self) -> "ModuleOperator":
        return ModuleOperator(self.domainShape, self.codomainShape, tuple(-fiber for fiber in self.fibers))

    def __rmul__(self, scalar: Union[int, float, complex]) -> "ModuleOperator":
        return ModuleOperator(self.domainShape, self.codomainShape, tuple(scalar * fiber for fiber in self.fibers))

    def scaled(self, coefficient: AlgebraElement) -> "ModuleOperator":
        """Multiplies fiber t by the scalar coefficient(t)."""

        fibers = tuple(value * fiber for value, fiber in zip(coefficient.values, self.fibers))

        return ModuleOperator(self.domainShape, self.codomainShape, fibers)
