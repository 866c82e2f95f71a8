from typing import Tuple
from typing import Sequence
from dataclasses import dataclass

from model.FiniteSpectrum import FiniteSpectrum


@dataclass(frozen=True)
class ModuleShape:
    """Fiber dimensions of a finitely generated Hilbert C(X)-module, one per point of X."""

    spectrum: FiniteSpectrum
    fiberDims: Tuple[int, ...]

    def __post_init__(self) -> None:
        fiberDims = tuple(int(dim) for dim in self.fiberDims)

        if len(fiberDims) != len(self.spectrum):
            raise ValueError(f"expected {len(self.spectrum)} fiber dimensions, got {len(fiberDims)}")

        if any(dim < 0 for dim in fiberDims):
            raise ValueError(f"fiber dimensions must be nonnegative, got {list(fiberDims)}")

        if not any(fiberDims):
            raise ValueError("at least one fiber must have positive dimension")

        object.__setattr__(self, "fiberDims", fiberDims)

    @classmethod
    def uniform(cls, spectrum: FiniteSpectrum, dim: int) -> "ModuleShape":
        return cls(spectrum, tuple([dim] * len(spectrum)))

    @classmethod
    def of(cls, spectrum: FiniteSpectrum, dims: Sequence[int]) -> "ModuleShape":
        return cls(spectrum, tuple(dims))

    def __len__(self) -> int:
        return len(self.fiberDims)

    @property
    def isFree(self) -> bool:
        """True when every fiber has the same dimension, i.e. the module is A^n."""

        return len(set(self.fiberDims)) == 1
