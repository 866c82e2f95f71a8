import numpy as np

from typing import List
from typing import Tuple
from dataclasses import dataclass

from model.ModuleShape import ModuleShape
from model.ModuleOperator import ModuleOperator

from utils.arrays import frozenComplex
from utils.errors import ShapeMismatchError


@dataclass(frozen=True, eq=False)
class OperatorAlgebraBasis:
    """
    A linear space of operators on one module, stored fiber by fiber.

    fiberBases[t] has shape (k_t, n_t, n_t) and holds an orthonormal basis of the fiber space under
    the Hilbert-Schmidt pairing trace(M* N). The global space is the direct sum of the fiber spaces,
    so a global basis is obtained by placing each fiber basis matrix in its own fiber.

    Attributes:
        shape (ModuleShape): The module the operators act on.
        fiberBases (tuple[np.ndarray, ...]): One basis stack per point.
        unital (bool): The identity lies in the space.
        starClosed (bool): The space is closed under adjoints.
    """

    shape: ModuleShape
    fiberBases: Tuple[np.ndarray, ...]
    unital: bool = True
    starClosed: bool = True

    def __post_init__(self) -> None:
        if len(self.fiberBases) != len(self.shape):
            raise ShapeMismatchError(f"expected {len(self.shape)} fiber bases, got {len(self.fiberBases)}")

        bases = []
        for basis, dim in zip(self.fiberBases, self.shape.fiberDims):
            stack = np.asarray(basis, dtype=np.complex128)
            count = stack.shape[0] if stack.ndim else 0
            bases.append(frozenComplex(stack.reshape(count, dim, dim), ndim=3))

        object.__setattr__(self, "fiberBases", tuple(bases))

    @property
    def dimensions(self) -> Tuple[int, ...]:
        """Dimension of the space at each point."""

        return tuple(basis.shape[0] for basis in self.fiberBases)

    @property
    def dimension(self) -> int:
        return sum(self.dimensions)

    def operators(self) -> List[ModuleOperator]:
        """The global basis: every fiber basis matrix extended by zero to the other fibers."""

        result = []
        for point, basis in enumerate(self.fiberBases):
            for matrix in basis:
                fibers = [np.zeros((dim, dim), dtype=np.complex128) for dim in self.shape.fiberDims]
                fibers[point] = matrix
                result.append(ModuleOperator.square(self.shape, fibers))

        return result
