from typing import Any
from typing import Dict
from typing import Tuple
from typing import Sequence
from dataclasses import field
from dataclasses import dataclass

from model.ModuleShape import ModuleShape
from model.ModuleElement import ModuleElement

from utils.errors import ShapeMismatchError


@dataclass(frozen=True, eq=False)
class FrameSystem:
    """
    A finite indexed family {x_j} of module elements.

    Attributes:
        shape (ModuleShape): Shape shared by every vector.
        vectors (tuple[ModuleElement, ...]): The family in index order; never empty.
        cache (dict): Derived operators and bounds, filled on first use by engine.frames.
    """

    shape: ModuleShape
    vectors: Tuple[ModuleElement, ...]
    cache: Dict[str, Any] = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self) -> None:
        vectors = tuple(self.vectors)

        if not vectors:
            raise ValueError("a frame system needs at least one vector")

        for index, vector in enumerate(vectors):
            if vector.shape != self.shape:
                raise ShapeMismatchError(f"vector {index} has fiber dims {vector.shape.fiberDims}")

        object.__setattr__(self, "vectors", vectors)

    @classmethod
    def of(cls, vectors: Sequence[ModuleElement]) -> "FrameSystem":
        if not vectors:
            raise ValueError("a frame system needs at least one vector")

        return cls(vectors[0].shape, tuple(vectors))

    def __len__(self) -> int:
        return len(self.vectors)

    def __iter__(self):
        return iter(self.vectors)
