from dataclasses import dataclass

from utils.config import MAX_POINTS
from utils.config import MAX_FIBER_DIM
from utils.config import MAX_GENERATORS
from utils.errors import CapsExceededError


@dataclass(frozen=True)
class RandSpec:
    """Sizes and seed of a random instance; checked against the documented caps."""

    seed: int = 0
    points: int = 2
    group: str = "Z3"
    generators: int = 2
    frameVectors: int = 4
    maxFiberDim: int = MAX_FIBER_DIM

    def __post_init__(self) -> None:
        if not 1 <= self.points <= MAX_POINTS:
            raise CapsExceededError(f"the spectrum size must be in [1, {MAX_POINTS}], got {self.points}")

        if not 1 <= self.maxFiberDim <= MAX_FIBER_DIM:
            raise CapsExceededError(f"fiber dimensions must be in [1, {MAX_FIBER_DIM}], got {self.maxFiberDim}")

        if not 1 <= self.generators <= MAX_GENERATORS:
            raise CapsExceededError(f"the number of generators must be in [1, {MAX_GENERATORS}], got {self.generators}")

        if self.frameVectors < 1:
            raise CapsExceededError(f"a frame needs at least one vector, got {self.frameVectors}")
