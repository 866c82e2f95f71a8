"""Modular frames: analysis, synthesis and frame operators, bounds, duals and Parseval canonicalization."""

import numpy as np

from typing import Tuple
from typing import Optional

from model.ModuleShape import ModuleShape
from model.FrameBounds import FrameBounds
from model.FrameSystem import FrameSystem
from model.ModuleElement import ModuleElement
from model.AlgebraElement import AlgebraElement
from model.MultiGenerator import MultiGenerator
from model.ModuleOperator import ModuleOperator

from engine.hilbertModule import inner
from engine.hilbertModule import hermEig
from engine.hilbertModule import opNorm
from engine.hilbertModule import opApply
from engine.hilbertModule import opAdjoint
from engine.hilbertModule import opCompose
from engine.hilbertModule import moduleAct
from engine.hilbertModule import moduleNorm
from engine.hilbertModule import opSpectralFn

from utils.config import CLASSIFY_TOL
from utils.config import getDefaultTolerance
from utils.errors import NotAFrameError


def _cached(frame: FrameSystem, key: str, compute):
    # Recomputing yields an equal value, so a lost race only costs time
    if key not in frame.cache:
        frame.cache[key] = compute()

    return frame.cache[key]


def coefficientShape(frame: FrameSystem) -> ModuleShape:
    """The standard module A^J the analysis operator maps into."""

    return ModuleShape.uniform(frame.shape.spectrum, len(frame))


def analysisOperator(frame: FrameSystem) -> ModuleOperator:
    """
    T x = (<x, x_j>)_j as an operator H -> A^J.

    Row j of the fiber matrix at t is conj(x_j(t)), so T* maps the j-th standard vector to x_j.
    """

    def compute() -> ModuleOperator:
        fibers = []
        for point, dim in enumerate(frame.shape.fiberDims):
            rows = [vector.fibers[point].conj() for vector in frame.vectors]
            fibers.append(np.array(rows, dtype=np.complex128).reshape(len(frame), dim))

        return ModuleOperator(frame.shape, coefficientShape(frame), tuple(fibers))

    return _cached(frame, "analysis", compute)


def synthesisOperator(frame: FrameSystem) -> ModuleOperator:
    return opAdjoint(analysisOperator(frame))


def frameOperator(frame: FrameSystem) -> ModuleOperator:
    """S = T*T, fiberwise S(t) = sum_j x_j(t) x_j(t)*."""

    def compute() -> ModuleOperator:
        analysis = analysisOperator(frame)
        return opCompose(opAdjoint(analysis), analysis)

    return _cached(frame, "frameOperator", compute)


def frameBounds(frame: FrameSystem, tol: Optional[float] = None) -> FrameBounds:
    """
    Optimal bounds C, D of C<x,x> <= sum_j <x,x_j><x_j,x> <= D<x,x>.

    Zero-dimensional fibers get lowerFn = upperFn = 0 and take no part in C and D.
    """

    tol = getDefaultTolerance() if tol is None else tol

    def compute() -> FrameBounds:
        frameOp = frameOperator(frame)
        spectrum = frame.shape.spectrum

        lowest = np.zeros(len(spectrum))
        highest = np.zeros(len(spectrum))
        for point, (eigenvalues, _) in enumerate(hermEig(frameOp)):
            if eigenvalues.size:
                lowest[point] = max(float(eigenvalues[0]), 0.0)
                highest[point] = max(float(eigenvalues[-1]), 0.0)

        nonEmpty = [point for point, dim in enumerate(frame.shape.fiberDims) if dim]
        lower = float(min(lowest[nonEmpty]))
        upper = float(max(highest[nonEmpty]))

        distance = opNorm(frameOp - ModuleOperator.identity(frame.shape))

        return FrameBounds(
            lower=lower,
            upper=upper,
            lowerFn=AlgebraElement(spectrum, lowest),
            upperFn=AlgebraElement(spectrum, highest),
            isFrame=lower > tol,
            isTight=upper > 0 and (upper - lower) <= CLASSIFY_TOL * upper,
            isParseval=distance <= CLASSIFY_TOL * max(1.0, opNorm(frameOp)),
        )

    return _cached(frame, f"bounds:{tol!r}", compute)


def requireFrame(frame: FrameSystem, tol: Optional[float] = None) -> FrameBounds:
    bounds = frameBounds(frame, tol)

    if not bounds.isFrame:
        raise NotAFrameError(f"lower frame bound {bounds.lower:.3e} is not above the tolerance")

    return bounds


def frameSum(frame: FrameSystem, x: ModuleElement) -> AlgebraElement:
    """sum_j <x, x_j><x_j, x>, computed term by term."""

    total = np.zeros(len(x.shape.spectrum))
    for vector in frame.vectors:
        total = total + np.abs(inner(x, vector).values) ** 2

    return AlgebraElement(x.shape.spectrum, total)


def frameInequalityGap(
    frame: FrameSystem, x: ModuleElement, tol: Optional[float] = None
) -> Tuple[AlgebraElement, AlgebraElement]:
    """The two slacks (sum - C<x,x>, D<x,x> - sum); both are positive for a correct C, D."""

    bounds = frameBounds(frame, tol)
    total = frameSum(frame, x)
    energy = inner(x, x)

    return total - bounds.lower * energy, bounds.upper * energy - total


def canonicalDual(frame: FrameSystem, tol: Optional[float] = None) -> FrameSystem:
    """The dual family {S^-1 x_j}."""

    requireFrame(frame, tol)

    inverse = opSpectralFn(frameOperator(frame), "inv")

    return FrameSystem(frame.shape, tuple(opApply(inverse, vector) for vector in frame.vectors))


def reconstruct(frame: FrameSystem, x: ModuleElement, tol: Optional[float] = None) -> ModuleElement:
    """sum_j <x, S^-1 x_j> x_j."""

    dual = canonicalDual(frame, tol)

    result = ModuleElement.zeros(frame.shape)
    for vector, dualVector in zip(frame.vectors, dual.vectors):
        result = result + moduleAct(inner(x, dualVector), vector)

    return result


def reconstructResidual(frame: FrameSystem, x: ModuleElement, tol: Optional[float] = None) -> float:
    return moduleNorm(x - reconstruct(frame, x, tol))


def canonicalParseval(frame: FrameSystem, tol: Optional[float] = None) -> FrameSystem:
    """{S^(-1/2) x_j}, a Parseval frame for the same module."""

    requireFrame(frame, tol)

    inverseRoot = opSpectralFn(frameOperator(frame), "inv_sqrt")

    return FrameSystem(frame.shape, tuple(opApply(inverseRoot, vector) for vector in frame.vectors))


def energySum(generators: MultiGenerator) -> AlgebraElement:
    """sum_k <φ_k, φ_k>."""

    total = AlgebraElement.zero(generators.shape.spectrum)
    for generator in generators:
        total = total + inner(generator, generator)

    return total
