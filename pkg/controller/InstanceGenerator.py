import numpy as np

from model.RandSpec import RandSpec
from model.FrameSystem import FrameSystem
from model.InstanceBundle import InstanceBundle
from model.MultiGenerator import MultiGenerator
from model.FiniteSpectrum import FiniteSpectrum

from engine.commutant import bicommutant
from engine.commutant import randomUnitary
from engine.groupSystem import namedGroup
from engine.groupSystem import validateRepresentation
from engine.groupSystem import conjugateRepresentation
from engine.groupSystem import randomRegularProjection
from engine.groupSystem import compressedRegularRepresentation
from engine.hilbertModule import opApply
from engine.hilbertModule import randomModuleElement
from engine.hilbertModule import randomModuleUnitary

from utils.config import SCHEMA_VERSION


class InstanceGenerator:
    """Builds seeded random instance bundles."""

    @staticmethod
    def randInstance(spec: RandSpec) -> InstanceBundle:
        """
        A random bundle drawn entirely from np.random.default_rng(spec.seed).

        The representation is the left regular representation compressed to a random L-commuting
        projection (fiber ranks at most spec.maxFiberDim), then conjugated by a random module
        unitary. The bundle carries:
            - vectors "eta" (a complete Parseval frame vector) and "xi" (A η for a random unitary A in G''),
            - generators "phi" (spec.generators Gaussian vectors),
            - frame "frame" (spec.frameVectors Gaussian vectors).
        """

        rng = np.random.default_rng(spec.seed)

        group = namedGroup(spec.group)
        spectrum = FiniteSpectrum.numbered(spec.points)

        projection = randomRegularProjection(group, spectrum, rng, maxRank=min(spec.maxFiberDim, group.order))
        compressed, compressedEta = compressedRegularRepresentation(group, spectrum, projection)

        unitary = randomModuleUnitary(compressed.shape, rng)
        rep = conjugateRepresentation(compressed, unitary)
        validateRepresentation(rep)
        eta = opApply(unitary, compressedEta)

        planted = randomUnitary(bicommutant(rep.images), rng)
        xi = opApply(planted, eta)

        shape = rep.shape
        generators = MultiGenerator(tuple(randomModuleElement(shape, rng) for _ in range(spec.generators)))
        frame = FrameSystem(shape, tuple(randomModuleElement(shape, rng) for _ in range(spec.frameVectors)))

        return InstanceBundle(
            spectrum=spectrum,
            module=shape,
            group=group,
            representation=rep,
            frames={"frame": frame},
            generators={"phi": generators},
            vectors={"eta": eta, "xi": xi},
            metadata={"generator": "rand", "group": group.name, "points": spec.points},
            version=SCHEMA_VERSION,
            seed=spec.seed,
        )
