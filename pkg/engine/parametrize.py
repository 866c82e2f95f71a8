"""
Generators of a group representation: moving one complete Parseval frame vector to another
by an operator of G'', paths between them, and the best Parseval multi-frame approximation.
"""

import numpy as np

from typing import Dict
from typing import List
from typing import Tuple
from typing import Optional

from model.ModuleElement import ModuleElement
from model.AlgebraElement import AlgebraElement
from model.MultiGenerator import MultiGenerator
from model.ModuleOperator import ModuleOperator
from model.ParsevalPath import ParsevalPath
from model.ApproximationReport import ApproximationReport
from model.UnitaryRepresentation import UnitaryRepresentation
from model.OperatorAlgebraBasis import OperatorAlgebraBasis
from model.VectorClassification import COMPLETE_FRAME
from model.VectorClassification import COMPLETE_BESSEL
from model.VectorClassification import COMPLETE_PARSEVAL
from model.ParameterizationWitness import KINDS
from model.ParameterizationWitness import UNITARY
from model.ParameterizationWitness import INVERTIBLE
from model.ParameterizationWitness import ADJOINTABLE
from model.ParameterizationWitness import ParameterizationWitness

from engine.algebra import algNorm
from engine.algebra import algIsPositive
from engine.frames import energySum
from engine.frames import frameBounds
from engine.frames import requireFrame
from engine.frames import frameOperator
from engine.frames import analysisOperator
from engine.commutant import piInverse
from engine.commutant import commutant
from engine.commutant import bicommutant
from engine.commutant import randomUnitary
from engine.commutant import requireMember
from engine.commutant import regularContext
from engine.commutant import membershipResidual
from engine.commutant import equivalentProjectionIsometry
from engine.groupSystem import dilate
from engine.groupSystem import classifyVector
from engine.groupSystem import orbitMultiframe
from engine.groupSystem import requireCompleteParseval
from engine.hilbertModule import inner
from engine.hilbertModule import opExp
from engine.hilbertModule import opNorm
from engine.hilbertModule import opApply
from engine.hilbertModule import opAdjoint
from engine.hilbertModule import opCompose
from engine.hilbertModule import opDistance
from engine.hilbertModule import moduleNorm
from engine.hilbertModule import opSpectralFn
from engine.hilbertModule import commutatorNorm
from engine.hilbertModule import minSingularValue
from engine.hilbertModule import unitarityResidual
from engine.hilbertModule import polarDecomposition
from engine.hilbertModule import projectionResidual
from engine.hilbertModule import randomModuleElement

from utils.config import PATH_TOL
from utils.config import PATH_STEPS
from utils.config import EIGEN_FLOOR
from utils.config import UNITARY_TOL
from utils.config import RETRY_BUDGET
from utils.config import CLASSIFY_TOL
from utils.config import MEMBERSHIP_TOL
from utils.config import UNIQUENESS_GAP
from utils.config import DEFAULT_SAMPLES
from utils.config import COMMUTATION_TOL
from utils.config import UNIQUENESS_DISTANCE
from utils.errors import MathCheckError
from utils.errors import NotAFrameError
from utils.errors import PreconditionError

REQUIRED_LABEL = {
    UNITARY: COMPLETE_PARSEVAL,
    INVERTIBLE: COMPLETE_FRAME,
    ADJOINTABLE: COMPLETE_BESSEL,
}


def _requireKind(kind: str) -> None:
    if kind not in KINDS:
        raise ValueError(f"unknown kind {kind!r}, expected one of {KINDS}")


def _kindResidual(operator: ModuleOperator, kind: str) -> Tuple[str, float, bool]:
    """(name, value, ok) of the check that operator is of the given kind."""

    if kind == UNITARY:
        residual = unitarityResidual(operator)
        return "unitarity", residual, residual <= UNITARY_TOL

    if kind == INVERTIBLE:
        smallest = minSingularValue(operator)
        return "minSingularValue", smallest, smallest >= EIGEN_FLOOR

    return "adjointability", 0.0, True


def _applyToAll(operator: ModuleOperator, generators: MultiGenerator) -> MultiGenerator:
    return MultiGenerator(tuple(opApply(operator, generator) for generator in generators))


# --- FORWARD DIRECTION ---


def applyGenerator(
    rep: UnitaryRepresentation,
    eta: ModuleElement,
    operator: ModuleOperator,
    kind: str,
    algebra: Optional[OperatorAlgebraBasis] = None,
) -> ModuleElement:
    """
    ξ = A η for A in G'' of the declared kind.

    A unitary A gives a complete Parseval frame vector, an invertible one a complete frame vector
    and any A a complete Bessel vector; the result is classified to confirm it.

    Arguments:
        rep (UnitaryRepresentation): The group action.
        eta (ModuleElement): A complete Parseval frame vector.
        operator (ModuleOperator): A, checked for membership in G''.
        kind (str): "unitary", "invertible" or "adjointable".
        algebra (OperatorAlgebraBasis, optional): G'' when the caller already has it.

    Returns:
        ModuleElement: ξ.
    """

    _requireKind(kind)
    requireCompleteParseval(rep, eta, "η")

    algebra = bicommutant(rep.images) if algebra is None else algebra
    requireMember(algebra, operator, "the generator operator")

    name, value, ok = _kindResidual(operator, kind)
    if not ok:
        raise PreconditionError(f"the operator is not {kind} ({name} = {value:.3e})")

    xi = opApply(operator, eta)

    classification = classifyVector(rep, xi)
    if not classification.satisfies(REQUIRED_LABEL[kind]):
        raise MathCheckError(f"A η is only classified as {classification.label!r}")

    return xi


# --- BACKWARD DIRECTION ---


def _orbitColumns(left: UnitaryRepresentation, vector: ModuleElement) -> ModuleOperator:
    """The operator B with B χ_U = L_U v."""

    fibers = [
        np.column_stack([image.fibers[point] @ vector.fibers[point] for image in left.images])
        for point in range(len(vector.shape))
    ]

    return ModuleOperator.square(left.shape, fibers)


def solveGenerator(
    rep: UnitaryRepresentation,
    eta: ModuleElement,
    xi: ModuleElement,
    seed: int = 0,
    kind: str = UNITARY,
    retries: int = RETRY_BUDGET,
) -> ParameterizationWitness:
    """
    Finds A in G'' of the requested kind with A η = ξ.

    The representation is first dilated into ℓ²_G(A) through T = T_η, where it becomes L compressed
    by P = T T*. With ξ' = T ξ the operator B: χ_U -> L_U ξ' lies in M' = {L}'. For a unitary witness
    B B* = P, Q = B* B, and a partial isometry C in M' with C C* = I - P and C* C = I - Q completes B
    to the unitary B + C. For an invertible witness C is built from the polar factor V of B instead, so
    that B + C = (|B*| + I - P)(V + C). An adjointable witness uses B itself. With A' = (π^-1(B + C))*
    in M, A' P χ_I = ξ', and A = T* A' T is the witness on the original module.

    Arguments:
        rep (UnitaryRepresentation): The group action.
        eta (ModuleElement): A complete Parseval frame vector.
        xi (ModuleElement): The target: complete Parseval for a unitary witness, a complete frame
            vector for an invertible one, anything for an adjointable one.
        seed (int, optional): Seed of the partial-isometry draws. Defaults to 0.
        kind (str, optional): "unitary", "invertible" or "adjointable". Defaults to "unitary".
        retries (int, optional): Partial-isometry draw budget. Defaults to RETRY_BUDGET.

    Returns:
        ParameterizationWitness: A with its residuals; passed is False when a final check failed.
    """

    _requireKind(kind)
    requireCompleteParseval(rep, eta, "η")

    xiLabel = classifyVector(rep, xi)
    if not xiLabel.satisfies(REQUIRED_LABEL[kind]):
        raise PreconditionError(f"ξ is {xiLabel.label!r}, a {kind} witness needs {REQUIRED_LABEL[kind]!r}")

    rng = np.random.default_rng(seed)
    context = regularContext(rep.group, rep.shape.spectrum)
    residuals: Dict[str, float] = {}

    dilation, projection = dilate(rep, eta)
    dilatedEta = opApply(dilation, eta)
    dilatedXi = opApply(dilation, xi)

    orbitOperator = _orbitColumns(context.left, dilatedXi)
    residuals["orbitOperatorMembership"] = membershipResidual(context.commutantAlgebra, orbitOperator)

    complement = ModuleOperator.zeros(context.shape, context.shape)
    if kind == UNITARY:
        residuals["rangeProjection"] = opDistance(opCompose(orbitOperator, opAdjoint(orbitOperator)), projection)
        support = opCompose(opAdjoint(orbitOperator), orbitOperator)
        residuals["supportProjection"] = projectionResidual(support)
        complement = equivalentProjectionIsometry(context.commutantAlgebra, projection, support, rng, retries)
    elif kind == INVERTIBLE:
        polar, _ = polarDecomposition(orbitOperator)
        support = opCompose(opAdjoint(polar), polar)
        complement = equivalentProjectionIsometry(context.commutantAlgebra, projection, support, rng, retries)

    completed = orbitOperator + complement
    dilatedOperator = opAdjoint(piInverse(context, completed))
    residuals["dilatedGeneration"] = moduleNorm(opApply(dilatedOperator, dilatedEta) - dilatedXi)

    operator = opCompose(opAdjoint(dilation), opCompose(dilatedOperator, dilation))
    residuals["generation"] = moduleNorm(opApply(operator, eta) - xi)
    residuals["membership"] = membershipResidual(bicommutant(rep.images), operator)

    name, value, kindOk = _kindResidual(operator, kind)
    residuals[name] = value

    passed = (
        kindOk
        and residuals["generation"] <= MEMBERSHIP_TOL
        and residuals["membership"] <= MEMBERSHIP_TOL
        and residuals["orbitOperatorMembership"] <= MEMBERSHIP_TOL
        and residuals["dilatedGeneration"] <= MEMBERSHIP_TOL
        and residuals.get("rangeProjection", 0.0) <= MEMBERSHIP_TOL
        and residuals.get("supportProjection", 0.0) <= MEMBERSHIP_TOL
    )

    return ParameterizationWitness(operator=operator, kind=kind, residuals=residuals, passed=bool(passed))


# --- PATHS ---


def connectParsevalVectors(
    rep: UnitaryRepresentation,
    eta: ModuleElement,
    xi: ModuleElement,
    steps: int = PATH_STEPS,
    seed: int = 0,
    onBranchCut: str = "snap",
) -> ParsevalPath:
    """
    A path exp(sK) η, s in [0, 1], of complete Parseval frame vectors from η to ξ, where A = exp(K)
    is a unitary witness of solveGenerator and K its principal logarithm.
    """

    if steps < 1:
        raise ValueError(f"a path needs at least one step, got {steps}")

    witness = solveGenerator(rep, eta, xi, seed=seed)
    logarithm = opSpectralFn(witness.operator, "log_unitary", onBranchCut=onBranchCut)
    algebra = bicommutant(rep.images)

    parameters = tuple(step / steps for step in range(steps + 1))
    points: List[ModuleElement] = []
    labels: List[str] = []
    worstMembership = 0.0
    for parameter in parameters:
        unitary = opExp(parameter * logarithm)
        worstMembership = max(worstMembership, membershipResidual(algebra, unitary))

        point = opApply(unitary, eta)
        points.append(point)
        labels.append(classifyVector(rep, point, precision=PATH_TOL).label)

    residuals = {
        "membership": worstMembership,
        "endpoint": points[-1].distance(xi),
        "start": points[0].distance(eta),
    }
    passed = (
        witness.passed
        and all(label == COMPLETE_PARSEVAL for label in labels)
        and worstMembership <= PATH_TOL
        and residuals["endpoint"] <= PATH_TOL
    )

    return ParsevalPath(parameters, tuple(points), tuple(labels), residuals, witness, bool(passed))


# --- BEST PARSEVAL APPROXIMATION ---


def _frameOperatorCommutation(rep: UnitaryRepresentation, frameOp: ModuleOperator) -> float:
    scale = max(1.0, opNorm(frameOp))

    return max(commutatorNorm(frameOp, image) for image in rep.images) / scale


def bestParsevalApprox(rep: UnitaryRepresentation, generators: MultiGenerator) -> ApproximationReport:
    """
    S^(-1/2)Φ, where S is the frame operator of the orbit {U φ_k}.

    S commutes with the group, so S^(-1/2) does too and the orbit of S^(-1/2)Φ is S^(-1/2) applied
    to the orbit of Φ, a Parseval frame.
    """

    orbit = orbitMultiframe(rep, generators)
    requireFrame(orbit)

    frameOp = frameOperator(orbit)
    commutation = _frameOperatorCommutation(rep, frameOp)

    best = _applyToAll(opSpectralFn(frameOp, "inv_sqrt"), generators)
    bestFrameOp = frameOperator(orbitMultiframe(rep, best))
    parsevalDefect = opDistance(bestFrameOp, ModuleOperator.identity(rep.shape))

    return ApproximationReport(
        best=best,
        residuals={"frameOperatorCommutation": commutation, "parsevalDefect": parsevalDefect},
        checksPassed=bool(commutation <= COMMUTATION_TOL and parsevalDefect <= COMMUTATION_TOL),
    )


def optimalityGap(generators: MultiGenerator, best: MultiGenerator, candidate: MultiGenerator) -> AlgebraElement:
    """sum_k <φ_k - ψ_k, φ_k - ψ_k> - sum_k <φ_k - best_k, φ_k - best_k>."""

    candidateDistance = energySum(MultiGenerator(tuple(phi - psi for phi, psi in zip(generators, candidate))))
    bestDistance = energySum(MultiGenerator(tuple(phi - b for phi, b in zip(generators, best))))

    return candidateDistance - bestDistance


def crossTermIdentity(rep: UnitaryRepresentation, generators: MultiGenerator, candidate: MultiGenerator) -> float:
    """
    || sum_k <T_Ξ S^(-1/4) φ_k, T_Ψ S^(-1/4) φ_k> - sum_k <ψ_k, φ_k> || with Ξ = S^(-1/2)Φ.

    The identity holds for every Ψ because S commutes with the group and A is commutative.
    """

    frameOp = frameOperator(orbitMultiframe(rep, generators))
    inverseFourthRoot = opSpectralFn(frameOp, "inv_fourth_root")
    best = _applyToAll(opSpectralFn(frameOp, "inv_sqrt"), generators)

    bestAnalysis = analysisOperator(orbitMultiframe(rep, best))
    candidateAnalysis = analysisOperator(orbitMultiframe(rep, candidate))

    left = AlgebraElement.zero(rep.shape.spectrum)
    right = AlgebraElement.zero(rep.shape.spectrum)
    for phi, psi in zip(generators, candidate):
        scaled = opApply(inverseFourthRoot, phi)
        left = left + inner(opApply(bestAnalysis, scaled), opApply(candidateAnalysis, scaled))
        right = right + inner(psi, phi)

    return algNorm(left - right)


def _canonicalSample(rep: UnitaryRepresentation, count: int, rng: np.random.Generator) -> MultiGenerator:
    # Gaussian generators almost surely give a frame; redraw in the rare degenerate case
    for _ in range(RETRY_BUDGET):
        draw = MultiGenerator(tuple(randomModuleElement(rep.shape, rng) for _ in range(count)))
        orbit = orbitMultiframe(rep, draw)

        if frameBounds(orbit).lower > EIGEN_FLOOR:
            return _applyToAll(opSpectralFn(frameOperator(orbit), "inv_sqrt"), draw)

    raise NotAFrameError(f"no random multi-frame generator found after {RETRY_BUDGET} draws")


def certifyOptimality(
    rep: UnitaryRepresentation,
    generators: MultiGenerator,
    samples: int = DEFAULT_SAMPLES,
    seed: int = 0,
) -> ApproximationReport:
    """
    Samples Parseval multi-frame generators Ψ and checks that none is closer to Φ than S^(-1/2)Φ.

    The first sample is S^(-1/2)Φ itself. Half of the remaining ones are W S^(-1/2)Φ for random
    unitaries W in G' (exp of a random skew-Hermitian element of the commutant), the other half are
    random Gaussian generators canonicalized by their own frame operator. A gap below -1e-8 (scaled by
    the energy of Φ) is a counterexample, and so is a vanishing gap at a Ψ away from S^(-1/2)Φ.
    """

    report = bestParsevalApprox(rep, generators)
    best = report.best
    rng = np.random.default_rng(seed)
    groupCommutant = commutant(rep.images)

    candidates = [("control", best)]
    for index in range(samples):
        if index < (samples + 1) // 2:
            candidates.append(("unitary", _applyToAll(randomUnitary(groupCommutant, rng), best)))
        else:
            candidates.append(("canonical", _canonicalSample(rep, len(generators), rng)))

    scale = max(1.0, algNorm(energySum(generators)))
    tolerance = CLASSIFY_TOL * scale

    gaps = []
    counterexamples = []
    uniqueness = True
    worstCrossTerm = 0.0
    for index, (_, candidate) in enumerate(candidates):
        gap = optimalityGap(generators, best, candidate)
        gaps.append(gap)

        if not algIsPositive(gap, tolerance):
            counterexamples.append(index)

        if algNorm(gap) <= UNIQUENESS_GAP:
            distance = max(psi.distance(b) for psi, b in zip(candidate, best))
            if distance > UNIQUENESS_DISTANCE:
                uniqueness = False
                counterexamples.append(index)

        worstCrossTerm = max(worstCrossTerm, crossTermIdentity(rep, generators, candidate))

    residuals = dict(report.residuals)
    residuals["minGap"] = float(min(np.min(gap.values.real) for gap in gaps))
    residuals["crossTerm"] = worstCrossTerm

    return ApproximationReport(
        best=best,
        residuals=residuals,
        gaps=tuple(gaps),
        modes=tuple(mode for mode, _ in candidates),
        uniqueness=uniqueness,
        counterexamples=tuple(sorted(set(counterexamples))),
        checksPassed=report.checksPassed and worstCrossTerm <= COMMUTATION_TOL * scale,
    )


def checkEnergyEquality(
    rep: UnitaryRepresentation, first: MultiGenerator, second: MultiGenerator
) -> Tuple[AlgebraElement, AlgebraElement, float]:
    """
    sum<φ_k, φ_k> and sum<ψ_k, ψ_k> for two complete Parseval multi-frame generators, and the norm of
    their difference. Both generators must have Parseval orbits for the equality to hold.
    """

    for name, generators in (("Φ", first), ("Ψ", second)):
        if not frameBounds(orbitMultiframe(rep, generators)).isParseval:
            raise PreconditionError(f"{name} is not a complete Parseval multi-frame generator")

    firstEnergy = energySum(first)
    secondEnergy = energySum(second)

    return firstEnergy, secondEnergy, algNorm(firstEnergy - secondEnergy)
