import json
import numpy as np
import pytest

from pathlib import Path

from typing import Any
from typing import Dict
from typing import Tuple
from typing import Sequence

from model.ModuleShape import ModuleShape
from model.FrameSystem import FrameSystem
from model.ModuleElement import ModuleElement
from model.FiniteSpectrum import FiniteSpectrum
from model.UnitaryRepresentation import UnitaryRepresentation

from engine.groupSystem import namedGroup
from engine.groupSystem import conjugateRepresentation
from engine.groupSystem import randomRegularProjection
from engine.groupSystem import compressedRegularRepresentation
from engine.hilbertModule import opApply
from engine.hilbertModule import randomModuleElement
from engine.hilbertModule import randomModuleUnitary

SQRT_HALF = 1.0 / np.sqrt(2.0)


def singleFiber(values: Sequence[complex]) -> ModuleElement:
    """An element of a module over a one-point spectrum."""

    shape = ModuleShape.of(FiniteSpectrum.numbered(1), [len(values)])

    return ModuleElement.of(shape, [values])


def randomShape(rng: np.random.Generator, points: int, maxDim: int) -> ModuleShape:
    dims = rng.integers(1, maxDim + 1, size=points)

    return ModuleShape.of(FiniteSpectrum.numbered(points), [int(dim) for dim in dims])


def randomFrame(rng: np.random.Generator, maxPoints: int = 4, maxDim: int = 6, maxVectors: int = 12) -> FrameSystem:
    """Gaussian vectors, at least as many as the largest fiber dimension, so almost surely a frame."""

    shape = randomShape(rng, int(rng.integers(1, maxPoints + 1)), maxDim)
    count = int(rng.integers(max(shape.fiberDims), maxVectors + 1))

    return FrameSystem(shape, tuple(randomModuleElement(shape, rng) for _ in range(count)))


def compressedInstance(groupName: str, points: int, seed: int) -> Tuple[UnitaryRepresentation, ModuleElement]:
    """A compressed regular representation conjugated by a random unitary, with its Parseval vector."""

    rng = np.random.default_rng(seed)
    group = namedGroup(groupName)
    spectrum = FiniteSpectrum.numbered(points)

    projection = randomRegularProjection(group, spectrum, rng)
    rep, eta = compressedRegularRepresentation(group, spectrum, projection)
    unitary = randomModuleUnitary(rep.shape, rng)

    return conjugateRepresentation(rep, unitary), opApply(unitary, eta)


def complexPair(value: complex) -> list:
    return [float(np.real(value)), float(np.imag(value))]


def scalarBundle(generator: float = 2.0, groupName: str = "trivial") -> Dict[str, Any]:
    """One point, fiber dimension one, every group element acting as the identity."""

    group = namedGroup(groupName)
    identity = {"fibers": [[[[1.0, 0.0]]]]}

    return {
        "version": "1",
        "spectrum": ["t1"],
        "module": {"fiber_dims": [1]},
        "group": {"name": group.name, "elements": list(group.elements), "table": [list(row) for row in group.table]},
        "representation": {"images": {label: identity for label in group.elements}},
        "generators": {"phi": [{"fibers": [[complexPair(generator)]]}]},
        "vectors": {
            "eta": {"fibers": [[complexPair(1.0 / np.sqrt(group.order))]]},
            "xi": {"fibers": [[complexPair(-1.0 / np.sqrt(group.order))]]},
        },
        "frames": {"pair": {"vectors": [{"fibers": [[[1.0, 0.0]]]}, {"fibers": [[[1.0, 0.0]]]}]}},
    }


@pytest.fixture
def writeBundle(tmp_path: Path):
    def write(document: Dict[str, Any], name: str = "bundle.json") -> Path:
        path = tmp_path / name
        path.write_text(json.dumps(document), encoding="utf-8")
        return path

    return write
