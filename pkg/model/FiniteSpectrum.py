from typing import Tuple
from typing import Sequence
from dataclasses import dataclass


@dataclass(frozen=True)
class FiniteSpectrum:
    """The finite point set X of the commutative base algebra C(X); order is significant."""

    points: Tuple[str, ...]

    def __post_init__(self) -> None:
        points = tuple(str(point) for point in self.points)

        if not points:
            raise ValueError("a spectrum needs at least one point")

        if len(set(points)) != len(points):
            raise ValueError(f"spectrum labels must be unique, got {list(points)}")

        object.__setattr__(self, "points", points)

    @classmethod
    def of(cls, labels: Sequence[str]) -> "FiniteSpectrum":
        return cls(tuple(labels))

    @classmethod
    def numbered(cls, size: int) -> "FiniteSpectrum":
        """Spectrum with labels t1, t2, ..., t<size>."""

        return cls(tuple(f"t{index + 1}" for index in range(size)))

    def __len__(self) -> int:
        return len(self.points)

    def index(self, label: str) -> int:
        return self.points.index(label)
