import numpy as np
import pytest

from model.FrameBounds import TIGHT
from model.FrameBounds import BESSEL
from model.FrameBounds import PARSEVAL
from model.ModuleShape import ModuleShape
from model.FrameSystem import FrameSystem
from model.ModuleElement import ModuleElement
from model.FiniteSpectrum import FiniteSpectrum
from model.MultiGenerator import MultiGenerator
from model.ModuleOperator import ModuleOperator

from engine.frames import frameSum
from engine.frames import energySum
from engine.frames import frameBounds
from engine.frames import reconstruct
from engine.frames import requireFrame
from engine.frames import canonicalDual
from engine.frames import frameOperator
from engine.frames import analysisOperator
from engine.frames import canonicalParseval
from engine.frames import frameInequalityGap
from engine.frames import reconstructResidual
from engine.hilbertModule import inner
from engine.hilbertModule import opApply
from engine.hilbertModule import moduleNorm
from engine.hilbertModule import opDistance
from engine.hilbertModule import randomModuleElement

from utils.errors import NotAFrameError

from conftest import randomFrame

TWO_POINTS = ModuleShape.of(FiniteSpectrum.of(["t1", "t2"]), [1, 1])


def orthonormalBasis(dim: int) -> FrameSystem:
    shape = ModuleShape.of(FiniteSpectrum.numbered(1), [dim])

    return FrameSystem(shape, tuple(ModuleElement.basisVector(shape, index) for index in range(dim)))


def mercedesBenz() -> FrameSystem:
    shape = ModuleShape.of(FiniteSpectrum.numbered(1), [2])
    angles = [np.pi / 2 + k * 2 * np.pi / 3 for k in range(3)]

    return FrameSystem(shape, tuple(ModuleElement.of(shape, [[np.cos(a), np.sin(a)]]) for a in angles))


def singleVector() -> FrameSystem:
    return FrameSystem(TWO_POINTS, (ModuleElement.of(TWO_POINTS, [[1], [2]]),))


def test_analysis_operator_of_a_basis_is_the_identity():
    analysis = analysisOperator(orthonormalBasis(3))

    assert np.allclose(analysis.fibers[0], np.eye(3))
    scalar = FrameSystem.of([ModuleElement.of(TWO_POINTS, [[2], [0]])])
    assert np.allclose(analysisOperator(scalar).fibers[0], [[2]])


@pytest.mark.parametrize("seed", range(10))
def test_analysis_operator_pairs_like_the_frame_sum(seed):
    rng = np.random.default_rng(seed)
    frame = randomFrame(rng)
    x, y = randomModuleElement(frame.shape, rng), randomModuleElement(frame.shape, rng)
    analysis = analysisOperator(frame)

    direct = sum(inner(x, v).values * inner(v, y).values for v in frame.vectors)

    assert np.allclose(inner(opApply(analysis, x), opApply(analysis, y)).values, direct, atol=1e-10)
    assert np.allclose(frameSum(frame, x).values, inner(opApply(analysis, x), opApply(analysis, x)).values)


def test_frame_operator_examples():
    assert opDistance(frameOperator(orthonormalBasis(4)), ModuleOperator.identity(orthonormalBasis(4).shape)) == 0

    benz = frameOperator(mercedesBenz())
    assert np.linalg.norm(benz.fibers[0] - 1.5 * np.eye(2)) <= 1e-12

    single = frameOperator(singleVector())
    assert np.allclose(single.fibers[0], [[1]]) and np.allclose(single.fibers[1], [[4]])


def test_frame_bounds_examples():
    bounds = frameBounds(singleVector())
    assert (bounds.lower, bounds.upper) == pytest.approx((1.0, 4.0))
    assert bounds.lowerFn.allclose([1, 4]) and bounds.upperFn.allclose([1, 4])

    basis = orthonormalBasis(3)
    assert frameBounds(basis).label == PARSEVAL

    doubled = FrameSystem(basis.shape, basis.vectors + basis.vectors)
    doubledBounds = frameBounds(doubled)
    assert (doubledBounds.lower, doubledBounds.upper) == pytest.approx((2.0, 2.0))
    assert doubledBounds.label == TIGHT


def test_frame_bounds_skip_empty_fibers():
    shape = ModuleShape.of(FiniteSpectrum.of(["t1", "t2"]), [0, 2])
    frame = FrameSystem(shape, (ModuleElement.of(shape, [[], [1, 0]]), ModuleElement.of(shape, [[], [0, 1]])))

    bounds = frameBounds(frame)

    assert bounds.lowerFn.allclose([0, 1]) and bounds.lower == pytest.approx(1.0)
    assert bounds.isParseval


def test_rank_deficient_family_is_only_bessel():
    shape = ModuleShape.of(FiniteSpectrum.numbered(1), [2])
    frame = FrameSystem(shape, (ModuleElement.of(shape, [[1, 0]]),))

    assert frameBounds(frame).label == BESSEL

    with pytest.raises(NotAFrameError):
        requireFrame(frame)

    with pytest.raises(NotAFrameError):
        canonicalParseval(frame)


def test_dual_of_single_vector_frame():
    frame = singleVector()
    dual = canonicalDual(frame)
    x = ModuleElement.of(TWO_POINTS, [[1], [1]])

    assert dual.vectors[0].distance(ModuleElement.of(TWO_POINTS, [[1], [0.5]])) <= 1e-12
    assert reconstructResidual(frame, x) <= 1e-12


def test_dual_of_parseval_frame_is_itself():
    basis = orthonormalBasis(3)

    for vector, dualVector in zip(basis.vectors, canonicalDual(basis).vectors):
        assert vector.distance(dualVector) <= 1e-10


@pytest.mark.parametrize("seed", range(50))
def test_reconstruction(seed):
    rng = np.random.default_rng(seed)
    frame = randomFrame(rng)
    x = randomModuleElement(frame.shape, rng)

    assert reconstructResidual(frame, x) <= 1e-8 * max(moduleNorm(x), 1.0)


@pytest.mark.parametrize("seed", range(50))
def test_canonical_parseval(seed):
    rng = np.random.default_rng(seed)
    parseval = canonicalParseval(randomFrame(rng))

    assert opDistance(frameOperator(parseval), ModuleOperator.identity(parseval.shape)) <= 1e-9

    bounds = frameBounds(parseval)
    assert abs(bounds.lower - 1) <= 1e-8 and abs(bounds.upper - 1) <= 1e-8


def test_canonical_parseval_examples():
    basis = orthonormalBasis(2)
    for vector, canonical in zip(basis.vectors, canonicalParseval(basis).vectors):
        assert vector.distance(canonical) <= 1e-12

    benz = mercedesBenz()
    for vector, canonical in zip(benz.vectors, canonicalParseval(benz).vectors):
        assert canonical.distance(float(np.sqrt(2 / 3)) * vector) <= 1e-10


@pytest.mark.parametrize("seed", range(10))
def test_frame_inequality_slacks_are_positive(seed):
    rng = np.random.default_rng(seed)
    frame = randomFrame(rng)
    x = randomModuleElement(frame.shape, rng)

    lowerSlack, upperSlack = frameInequalityGap(frame, x)
    scale = max(1.0, frameBounds(frame).upper) * moduleNorm(x) ** 2

    assert np.all(lowerSlack.values.real >= -1e-10 * scale)
    assert np.all(upperSlack.values.real >= -1e-10 * scale)


def test_plain_matrix_oracle_on_one_point():
    rng = np.random.default_rng(11)
    dim, count = 4, 7
    vectors = rng.standard_normal((count, dim)) + 1j * rng.standard_normal((count, dim))
    shape = ModuleShape.of(FiniteSpectrum.numbered(1), [dim])
    frame = FrameSystem(shape, tuple(ModuleElement.of(shape, [row]) for row in vectors))

    # independent dense path: S = V^T conj(V), bounds from eigvalsh, dual = S^-1 v_j
    denseOperator = vectors.T @ vectors.conj()
    denseEigenvalues = np.linalg.eigvalsh(denseOperator)
    denseDual = np.linalg.solve(denseOperator, vectors.T).T

    bounds = frameBounds(frame)
    assert abs(bounds.lower - denseEigenvalues[0]) <= 1e-9
    assert abs(bounds.upper - denseEigenvalues[-1]) <= 1e-9

    for dualVector, expected in zip(canonicalDual(frame).vectors, denseDual):
        assert np.max(np.abs(dualVector.fibers[0] - expected)) <= 1e-9

    x = randomModuleElement(shape, rng)
    assert reconstruct(frame, x).distance(x) <= 1e-9


def test_energy_sum():
    shape = ModuleShape.of(FiniteSpectrum.numbered(1), [2])

    assert energySum(MultiGenerator((ModuleElement.zeros(shape),))).allclose([0])
    assert energySum(MultiGenerator(orthonormalBasis(2).vectors)).allclose([2])

    rng = np.random.default_rng(3)
    generators = MultiGenerator(tuple(randomModuleElement(TWO_POINTS, rng) for _ in range(3)))
    expected = [sum(abs(g.fibers[point][0]) ** 2 for g in generators) for point in range(2)]
    assert energySum(generators).allclose(expected)
