import numpy as np
import pytest

from model.ModuleShape import ModuleShape
from model.ModuleElement import ModuleElement
from model.AlgebraElement import AlgebraElement
from model.FiniteSpectrum import FiniteSpectrum
from model.MultiGenerator import MultiGenerator
from model.ModuleOperator import ModuleOperator
from model.VectorClassification import COMPLETE_FRAME
from model.VectorClassification import COMPLETE_BESSEL
from model.VectorClassification import COMPLETE_PARSEVAL
from model.ParameterizationWitness import UNITARY
from model.ParameterizationWitness import INVERTIBLE
from model.ParameterizationWitness import ADJOINTABLE

from engine.frames import energySum
from engine.frames import frameBounds
from engine.commutant import commutant
from engine.commutant import bicommutant
from engine.commutant import randomElement
from engine.commutant import randomUnitary
from engine.parametrize import optimalityGap
from engine.parametrize import solveGenerator
from engine.parametrize import applyGenerator
from engine.parametrize import certifyOptimality
from engine.parametrize import crossTermIdentity
from engine.parametrize import bestParsevalApprox
from engine.parametrize import checkEnergyEquality
from engine.parametrize import connectParsevalVectors
from engine.groupSystem import namedGroup
from engine.groupSystem import cyclicGroup
from engine.groupSystem import classifyVector
from engine.groupSystem import orbitMultiframe
from engine.groupSystem import standardGroupModule
from engine.groupSystem import trivialRepresentation
from engine.groupSystem import regularRepresentations
from engine.groupSystem import compressedRegularRepresentation
from engine.hilbertModule import opApply
from engine.hilbertModule import unitarityResidual
from engine.hilbertModule import randomModuleElement

from utils.errors import BranchCutError
from utils.errors import MembershipError
from utils.errors import PreconditionError

from conftest import SQRT_HALF
from conftest import singleFiber
from conftest import compressedInstance

ONE_POINT = FiniteSpectrum.numbered(1)
SCALAR = ModuleShape.of(ONE_POINT, [1])
SOLVE_GROUPS = ["Z2", "Z3", "Z4", "S3"]
CERTIFY_GROUPS = ["Z2", "Z3", "S3"]


def scalarTrivialZ2():
    rep = trivialRepresentation(cyclicGroup(2), SCALAR)

    return rep, singleFiber([SQRT_HALF]), singleFiber([-SQRT_HALF])


def regularInstance(name: str, points: int = 1):
    group = namedGroup(name)
    left, _ = regularRepresentations(group, FiniteSpectrum.numbered(points))
    _, chi = standardGroupModule(group, left.shape.spectrum)

    return left, chi


def targetOf(rep, eta, seed: int):
    rng = np.random.default_rng(seed)

    return opApply(randomUnitary(bicommutant(rep.images), rng), eta)


def test_apply_identity_keeps_the_vector():
    left, chi = regularInstance("Z3")

    xi = applyGenerator(left, chi[0], ModuleOperator.identity(left.shape), UNITARY)

    assert xi.distance(chi[0]) == 0


def test_apply_group_element_moves_the_basis_vector():
    left, chi = regularInstance("S3")

    xi = applyGenerator(left, chi[0], left.images[4], UNITARY)

    assert xi.distance(chi[4]) <= 1e-12


def test_apply_invertible_scales_the_bounds():
    left, chi = regularInstance("Z3")

    xi = applyGenerator(left, chi[0], 2 * ModuleOperator.identity(left.shape), INVERTIBLE)
    classification = classifyVector(left, xi)

    assert classification.label == COMPLETE_FRAME
    assert (classification.lower, classification.upper) == pytest.approx((4.0, 4.0))


@pytest.mark.parametrize("seed", range(20))
def test_apply_random_generators_of_every_kind(seed):
    rep, eta = compressedInstance(SOLVE_GROUPS[seed % len(SOLVE_GROUPS)], 1 + seed % 2, seed)
    rng = np.random.default_rng(seed + 200)
    algebra = bicommutant(rep.images)

    generators = {
        UNITARY: randomUnitary(algebra, rng),
        INVERTIBLE: 2 * ModuleOperator.identity(rep.shape) + randomUnitary(algebra, rng),
        ADJOINTABLE: randomElement(algebra, rng),
    }
    expected = {UNITARY: COMPLETE_PARSEVAL, INVERTIBLE: COMPLETE_FRAME, ADJOINTABLE: COMPLETE_BESSEL}

    for kind, operator in generators.items():
        xi = applyGenerator(rep, eta, operator, kind, algebra=algebra)

        assert classifyVector(rep, xi).satisfies(expected[kind]), kind


def test_apply_checks_the_operator():
    left, chi = regularInstance("S3")
    _, right = regularRepresentations(left.group, left.shape.spectrum)

    with pytest.raises(MembershipError):
        applyGenerator(left, chi[0], right.images[1], UNITARY)

    with pytest.raises(PreconditionError):
        applyGenerator(left, chi[0], 2 * ModuleOperator.identity(left.shape), UNITARY)

    with pytest.raises(PreconditionError):
        applyGenerator(left, chi[0] + chi[1], ModuleOperator.identity(left.shape), UNITARY)

    with pytest.raises(ValueError):
        applyGenerator(left, chi[0], ModuleOperator.identity(left.shape), "orthogonal")


def test_solve_on_the_scalar_example():
    rep, eta, xi = scalarTrivialZ2()

    witness = solveGenerator(rep, eta, xi)

    assert witness.passed
    assert np.allclose(witness.operator.fibers[0], [[-1]], atol=1e-9)


@pytest.mark.parametrize("seed", range(20))
def test_solve_unitary(seed):
    rep, eta = compressedInstance(SOLVE_GROUPS[seed % len(SOLVE_GROUPS)], 2, seed)
    xi = targetOf(rep, eta, seed + 100)

    witness = solveGenerator(rep, eta, xi, seed=seed)

    assert witness.passed, witness.residuals
    assert witness.kind == UNITARY
    assert opApply(witness.operator, eta).distance(xi) <= 1e-8
    assert unitarityResidual(witness.operator) <= 1e-8
    assert witness.residuals["membership"] <= 1e-8
    assert witness.residuals["supportProjection"] <= 1e-8
    assert witness.residuals["dilatedGeneration"] <= 1e-8


def test_solve_reports_a_failed_support_check(monkeypatch):
    rep, eta = compressedInstance("Z3", 2, 0)
    xi = targetOf(rep, eta, 100)

    # only the support check fails; the witness itself is still exact
    monkeypatch.setattr("engine.parametrize.projectionResidual", lambda operator: 1.0)

    witness = solveGenerator(rep, eta, xi)

    assert witness.residuals["supportProjection"] == 1.0
    assert not witness.passed


def test_solve_with_an_empty_fiber():
    group = namedGroup("Z3")
    spectrum = FiniteSpectrum.numbered(2)
    left, _ = regularRepresentations(group, spectrum)
    averaging = ModuleOperator.square(left.shape, [np.zeros((3, 3)), np.full((3, 3), 1.0 / 3.0)])

    rep, eta = compressedRegularRepresentation(group, spectrum, averaging)
    xi = eta.scaled(AlgebraElement(spectrum, np.array([1.0, -1.0])))

    assert rep.shape.fiberDims == (0, 1)
    assert bicommutant(rep.images).dimensions == (0, 1)

    witness = solveGenerator(rep, eta, xi)

    assert witness.passed, witness.residuals
    assert np.allclose(witness.operator.fibers[1], [[-1]], atol=1e-9)


@pytest.mark.parametrize("seed", range(5))
def test_solve_invertible(seed):
    rep, eta = compressedInstance("Z3", 2, seed)
    rng = np.random.default_rng(seed + 100)
    algebra = bicommutant(rep.images)
    operator = 2 * ModuleOperator.identity(rep.shape) + randomUnitary(algebra, rng)
    xi = opApply(operator, eta)

    assert classifyVector(rep, xi).satisfies(COMPLETE_FRAME)

    witness = solveGenerator(rep, eta, xi, seed=seed, kind=INVERTIBLE)

    assert witness.passed, witness.residuals
    assert opApply(witness.operator, eta).distance(xi) <= 1e-8
    assert witness.residuals["minSingularValue"] >= 1e-8


@pytest.mark.parametrize("seed", range(5))
def test_solve_adjointable(seed):
    rep, eta = compressedInstance("S3", 1, seed)
    rng = np.random.default_rng(seed + 100)
    xi = opApply(randomElement(bicommutant(rep.images), rng), eta)

    witness = solveGenerator(rep, eta, xi, kind=ADJOINTABLE)

    assert witness.passed, witness.residuals
    assert opApply(witness.operator, eta).distance(xi) <= 1e-8


def test_solve_needs_a_parseval_target_for_unitaries():
    rep, eta, _ = scalarTrivialZ2()

    with pytest.raises(PreconditionError):
        solveGenerator(rep, eta, singleFiber([1.0]))


def test_path_on_the_scalar_example():
    rep, eta, xi = scalarTrivialZ2()

    path = connectParsevalVectors(rep, eta, xi, steps=4)

    assert path.passed
    assert path.parameters == (0.0, 0.25, 0.5, 0.75, 1.0)
    for parameter, point in zip(path.parameters, path.points):
        assert np.allclose(point.fibers[0], [np.exp(1j * np.pi * parameter) * SQRT_HALF], atol=1e-9)

    assert all(label == COMPLETE_PARSEVAL for label in path.labels)


def test_path_can_refuse_the_branch_cut():
    rep, eta, xi = scalarTrivialZ2()

    with pytest.raises(BranchCutError):
        connectParsevalVectors(rep, eta, xi, steps=4, onBranchCut="raise")

    with pytest.raises(ValueError):
        connectParsevalVectors(rep, eta, xi, steps=0)


@pytest.mark.parametrize("seed", range(10))
def test_random_paths(seed):
    rep, eta = compressedInstance("Z3", 2, seed)
    xi = targetOf(rep, eta, seed + 100)

    path = connectParsevalVectors(rep, eta, xi, steps=16, seed=seed)

    assert path.passed, path.residuals
    assert len(path.points) == 17
    assert all(label == COMPLETE_PARSEVAL for label in path.labels)
    assert path.points[0].distance(eta) <= 1e-9
    assert path.residuals["endpoint"] <= 1e-7


def test_best_approximation_of_a_scalar():
    rep = trivialRepresentation(namedGroup("trivial"), SCALAR)

    report = bestParsevalApprox(rep, MultiGenerator((singleFiber([2.0]),)))

    assert report.checksPassed
    assert np.allclose(report.best[0].fibers[0], [1.0])


def test_best_approximation_normalizes_each_fiber():
    left, chi = regularInstance("Z2", points=2)
    coefficient = AlgebraElement(left.shape.spectrum, np.array([2.0, 3.0]))

    report = bestParsevalApprox(left, MultiGenerator((chi[0].scaled(coefficient),)))

    assert report.best[0].distance(chi[0]) <= 1e-12
    assert report.residuals["parsevalDefect"] <= 1e-12


@pytest.mark.parametrize("seed", range(5))
def test_best_approximation_is_parseval(seed):
    rep, _ = compressedInstance("S3", 2, seed)
    rng = np.random.default_rng(seed)
    generators = MultiGenerator(tuple(randomModuleElement(rep.shape, rng) for _ in range(2)))

    report = bestParsevalApprox(rep, generators)

    assert report.checksPassed, report.residuals
    assert frameBounds(orbitMultiframe(rep, report.best)).isParseval


def test_gap_on_the_scalar_example():
    phi = MultiGenerator((singleFiber([2.0]),))
    best = MultiGenerator((singleFiber([1.0]),))

    assert optimalityGap(phi, best, MultiGenerator((singleFiber([-1.0]),))).allclose([8])
    assert optimalityGap(phi, best, best).allclose([0])


def test_certify_on_the_scalar_example():
    rep = trivialRepresentation(namedGroup("trivial"), SCALAR)

    report = certifyOptimality(rep, MultiGenerator((singleFiber([2.0]),)), samples=20)

    assert report.passed
    assert len(report.gaps) == 21
    assert report.modes[0] == "control"
    assert report.gaps[0].allclose([0])


@pytest.mark.parametrize("seed", range(10))
def test_certify_with_a_hundred_samples(seed):
    rep, _ = compressedInstance(CERTIFY_GROUPS[seed % len(CERTIFY_GROUPS)], 1 + seed % 2, seed)
    rng = np.random.default_rng(seed + 1)
    generators = MultiGenerator(tuple(randomModuleElement(rep.shape, rng) for _ in range(1 + seed % 3)))

    report = certifyOptimality(rep, generators, samples=100, seed=seed + 3)

    assert report.passed, report.residuals
    assert report.uniqueness
    assert report.counterexamples == ()
    assert report.residuals["minGap"] >= -1e-8
    assert report.residuals["crossTerm"] <= 1e-9 * max(1.0, energySum(generators).values.real.max())
    assert len(report.gaps) == 101
    assert set(report.modes[1:]) == {"unitary", "canonical"}


@pytest.mark.parametrize("seed", range(5))
def test_cross_term_identity(seed):
    rep, _ = compressedInstance("S3", 1, seed)
    rng = np.random.default_rng(seed)
    generators = MultiGenerator(tuple(randomModuleElement(rep.shape, rng) for _ in range(2)))
    candidate = MultiGenerator(tuple(randomModuleElement(rep.shape, rng) for _ in range(2)))

    assert crossTermIdentity(rep, generators, candidate) <= 1e-9


def test_energy_on_the_scalar_example():
    rep, eta, xi = scalarTrivialZ2()

    first, second, residual = checkEnergyEquality(rep, MultiGenerator((eta,)), MultiGenerator((xi,)))

    assert first.allclose([0.5]) and second.allclose([0.5])
    assert residual <= 1e-12


@pytest.mark.parametrize("seed", range(20))
def test_energy_is_unitarily_invariant(seed):
    rep, _ = compressedInstance(CERTIFY_GROUPS[seed % len(CERTIFY_GROUPS)], 1 + seed % 2, seed)
    rng = np.random.default_rng(seed)
    generators = MultiGenerator(tuple(randomModuleElement(rep.shape, rng) for _ in range(3)))

    best = bestParsevalApprox(rep, generators).best
    unitary = randomUnitary(commutant(rep.images), rng)
    moved = MultiGenerator(tuple(opApply(unitary, generator) for generator in best))

    _, _, residual = checkEnergyEquality(rep, best, moved)

    assert residual <= 1e-9


def test_energy_needs_parseval_generators():
    rep, eta, _ = scalarTrivialZ2()

    with pytest.raises(PreconditionError):
        checkEnergyEquality(rep, MultiGenerator((eta,)), MultiGenerator((singleFiber([1.0]),)))


def test_plain_matrix_oracle_on_one_point():
    rep, _ = compressedInstance("S3", 1, 9)
    rng = np.random.default_rng(9)
    generators = MultiGenerator(tuple(randomModuleElement(rep.shape, rng) for _ in range(2)))

    # independent dense path: S = sum over the orbit of v v*, best = S^-1/2 φ via eigh
    orbit = [image.fibers[0] @ generator.fibers[0] for image in rep.images for generator in generators]
    dense = sum(np.outer(vector, vector.conj()) for vector in orbit)
    eigenvalues, eigenvectors = np.linalg.eigh(dense)
    inverseRoot = (eigenvectors / np.sqrt(eigenvalues)) @ eigenvectors.conj().T

    best = bestParsevalApprox(rep, generators).best

    for generator, approximation in zip(generators, best):
        expected = ModuleElement(rep.shape, (inverseRoot @ generator.fibers[0],))
        assert approximation.distance(expected) <= 1e-9


@pytest.mark.parametrize("seed", range(5))
def test_lowdin_oracle_for_the_trivial_group(seed):
    rng = np.random.default_rng(seed)
    dim = int(rng.integers(1, 6))
    count = int(rng.integers(dim, 9))
    shape = ModuleShape.of(ONE_POINT, [dim])
    rep = trivialRepresentation(namedGroup("trivial"), shape)
    generators = MultiGenerator(tuple(randomModuleElement(shape, rng) for _ in range(count)))

    # classical symmetric orthogonalization of the columns of Φ: (Φ Φ*)^(-1/2) Φ
    columns = np.column_stack([generator.fibers[0] for generator in generators])
    eigenvalues, eigenvectors = np.linalg.eigh(columns @ columns.conj().T)
    expected = (eigenvectors / np.sqrt(eigenvalues)) @ eigenvectors.conj().T @ columns

    best = bestParsevalApprox(rep, generators).best
    deviation = max(np.abs(approximation.fibers[0] - expected[:, k]).max() for k, approximation in enumerate(best))

    assert deviation <= 1e-9
