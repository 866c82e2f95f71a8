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
class ModuleElement:
    """
    A vector of the module: one complex vector per point of the spectrum.

    Attributes:
        shape (ModuleShape): The module the element lives in.
        fibers (tuple[np.ndarray, ...]): Fiber vectors in spectrum order, fibers[t] has length shape.fiberDims[t].
    """

    shape: ModuleShape
    fibers: Tuple[np.ndarray, ...]

    def __post_init__(self) -> None:
        if len(self.fibers) != len(self.shape):
            raise ShapeMismatchError(f"expected {len(self.shape)} fibers, got {len(self.fibers)}")

        fibers = tuple(frozenComplex(fiber, ndim=1).reshape(-1) for fiber in self.fibers)

        for point, (fiber, dim) in enumerate(zip(fibers, self.shape.fiberDims)):
            if fiber.shape[0] != dim:
                raise ShapeMismatchError(f"fiber {point} has length {fiber.shape[0]}, expected {dim}")

        object.__setattr__(self, "fibers", fibers)

    @classmethod
    def zeros(cls, shape: ModuleShape) -> "ModuleElement":
        return cls(shape, tuple(np.zeros(dim, dtype=np.complex128) for dim in shape.fiberDims))

    @classmethod
    def of(cls, shape: ModuleShape, fibers: Sequence[Sequence[complex]]) -> "ModuleElement":
        return cls(shape, tuple(np.asarray(fiber, dtype=np.complex128).reshape(-1) for fiber in fibers))

    @classmethod
    def basisVector(cls, shape: ModuleShape, index: int) -> "ModuleElement":
        """The element equal to the index-th standard basis vector in every fiber (fibers must be large enough)."""

        fibers = []
        for dim in shape.fiberDims:
            fiber = np.zeros(dim, dtype=np.complex128)
            fiber[index] = 1.0
            fibers.append(fiber)

        return cls(shape, tuple(fibers))

    def _checked(self, other: "ModuleElement") -> Tuple[np.ndarray, ...]:
        if other.shape != self.shape:
            raise ShapeMismatchError(f"{self.shape.fiberDims} vs {other.shape.fiberDims}")

        return other.fibers

    def __add__(self, other: "ModuleElement") -> "ModuleElement":
        return ModuleElement(self.shape, tuple(a + b for a, b in zip(self.fibers, self._checked(other))))

    def __sub__(self, other: "ModuleElement") -> "ModuleElement":
        return ModuleElement(self.shape, tuple(a - b for a, b in zip(self.fibers, self._checked(other))))

    def __neg__(self) -> "ModuleElement":
        return ModuleElement(self.shape, tuple(-fiber for fiber in self.fibers))

    def __rmul__(self, scalar: Union[int, float, complex]) -> "ModuleElement":
        return ModuleElement(self.shape, tuple(scalar * fiber for fiber in self.fibers))

    def scaled(self, coefficient: AlgebraElement) -> "ModuleElement":
        """The module action a·x: fiber t is multiplied by a(t)."""

        if coefficient.spectrum != self.shape.spectrum:
            raise ShapeMismatchError("coefficient and element live over different spectra")

        return ModuleElement(
            self.shape, tuple(value * fiber for value, fiber in zip(coefficient.values, self.fibers))
        )

    def distance(self, other: "ModuleElement") -> float:
        """Max over fibers of the Euclidean distance (the module norm of the difference)."""

        differences = [np.linalg.norm(a - b) for a, b in zip(self.fibers, self._checked(other))]

        return float(max(differences, default=0.0))
