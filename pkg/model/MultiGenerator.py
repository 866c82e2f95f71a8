from typing import Tuple
from typing import Sequence
from dataclasses import dataclass

from model.ModuleShape import ModuleShape
from model.ModuleElement import ModuleElement

from utils.errors import ShapeMismatchError


@dataclass(frozen=True, eq=False)
class MultiGenerator:
    """An ordered tuple (φ_1, ..., φ_N) of module elements whose group orbit is meant to be a frame."""

    generators: Tuple[ModuleElement, ...]

    def __post_init__(self) -> None:
        generators = tuple(self.generators)

        if not generators:
            raise ValueError("a multi-generator needs at least one generator")

        for index, generator in enumerate(generators[1:], start=1):
            if generator.shape != generators[0].shape:
                raise ShapeMismatchError(f"generator {index} has fiber dims {generator.shape.fiberDims}")

        object.__setattr__(self, "generators", generators)

    @classmethod
    def of(cls, generators: Sequence[ModuleElement]) -> "MultiGenerator":
        return cls(tuple(generators))

    @property
    def shape(self) -> ModuleShape:
        return self.generators[0].shape

    def __len__(self) -> int:
        return len(self.generators)

    def __iter__(self):
        return iter(self.generators)

    def __getitem__(self, index: int) -> ModuleElement:
        return self.generators[index]
