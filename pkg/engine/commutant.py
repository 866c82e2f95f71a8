"""
Numerical commutants and bicommutants, membership in operator spaces, the π-isomorphism
M -> M', the A-valued trace on ℓ²_G(A) and partial isometries between equivalent projections.
"""

import numpy as np
import scipy.linalg as spla

from typing import Dict
from typing import List
from typing import Optional
from typing import Sequence

from model.FiniteGroup import FiniteGroup
from model.ModuleShape import ModuleShape
from model.DualityReport import DualityReport
from model.AlgebraElement import AlgebraElement
from model.FiniteSpectrum import FiniteSpectrum
from model.ModuleOperator import ModuleOperator
from model.RegularContext import RegularContext
from model.OperatorAlgebraBasis import OperatorAlgebraBasis

from engine.groupSystem import standardGroupModule
from engine.groupSystem import regularRepresentations
from engine.hilbertModule import opExp
from engine.hilbertModule import opNorm
from engine.hilbertModule import hermEig
from engine.hilbertModule import opAdjoint
from engine.hilbertModule import opCompose
from engine.hilbertModule import opDistance
from engine.hilbertModule import commutatorNorm
from engine.hilbertModule import polarDecomposition
from engine.hilbertModule import projectionResidual

from utils.config import RANK_CUTOFF
from utils.config import RETRY_BUDGET
from utils.config import MEMBERSHIP_TOL
from utils.errors import MembershipError
from utils.errors import PreconditionError
from utils.errors import ShapeMismatchError
from utils.errors import DegenerateBasisError
from utils.errors import ProjectionEquivalenceError

# --- COMMUTANTS ---


def _fiberCommutant(matrices: Sequence[np.ndarray], dim: int) -> np.ndarray:
    """
    Orthonormal basis (k, n, n) of {M : M A = A M for every A in matrices}.

    With column-major vec, vec(M A - A M) = (A^T ⊗ I - I ⊗ A) vec(M), so the commutant is the
    null space of the stacked Kronecker system.
    """

    if not dim:
        return np.zeros((0, 0, 0), dtype=np.complex128)

    identity = np.eye(dim)
    blocks = [np.kron(matrix.T, identity) - np.kron(identity, matrix) for matrix in matrices]

    if not blocks:
        return np.eye(dim * dim, dtype=np.complex128).reshape(dim * dim, dim, dim, order="F")

    _, singularValues, rightVectors = spla.svd(np.vstack(blocks))

    # absolute floor: a numerically zero system (scalar ops) has no rank
    threshold = RANK_CUTOFF * max(1.0, float(singularValues[0]))
    rank = int(np.count_nonzero(singularValues > threshold))
    kernel = rightVectors[rank:].conj()

    # column-major unvec of every null vector
    return kernel.reshape(kernel.shape[0], dim, dim).transpose(0, 2, 1)


def _fiberResidual(basis: np.ndarray, matrix: np.ndarray) -> float:
    """Hilbert-Schmidt distance from matrix to the span of an orthonormal basis stack."""

    if not matrix.size:
        return 0.0

    flat = basis.reshape(basis.shape[0], matrix.size)
    coefficients = flat.conj() @ matrix.reshape(-1)

    return float(np.linalg.norm(matrix.reshape(-1) - coefficients @ flat))


def _isStarClosed(fiberBases: Sequence[np.ndarray]) -> bool:
    for basis in fiberBases:
        for matrix in basis:
            if _fiberResidual(basis, matrix.conj().T) > MEMBERSHIP_TOL:
                return False

    return True


def commutant(ops: Sequence[ModuleOperator], shape: Optional[ModuleShape] = None) -> OperatorAlgebraBasis:
    """
    {M : M A = A M for every A in ops}, solved fiber by fiber.

    Arguments:
        ops (Sequence[ModuleOperator]): Square operators on one module.
        shape (ModuleShape, optional): The module, required when ops is empty.

    Returns:
        OperatorAlgebraBasis: The commutant, unital, with starClosed set when adjoints stay in the span.
    """

    if shape is None:
        if not ops:
            raise ShapeMismatchError("the module shape is needed to take the commutant of nothing")
        shape = ops[0].domainShape

    for op in ops:
        if op.domainShape != shape or op.codomainShape != shape:
            raise ShapeMismatchError("commutant needs square operators on one module")

    solved: Dict[bytes, np.ndarray] = {}
    fiberBases = []
    for point, dim in enumerate(shape.fiberDims):
        matrices = [op.fibers[point] for op in ops]
        key = b"".join(matrix.tobytes() for matrix in matrices) + dim.to_bytes(4, "little")

        if key not in solved:
            solved[key] = _fiberCommutant(matrices, dim)
        fiberBases.append(solved[key])

    return OperatorAlgebraBasis(shape, tuple(fiberBases), unital=True, starClosed=_isStarClosed(fiberBases))


def _fiberOperators(algebra: OperatorAlgebraBasis) -> List[ModuleOperator]:
    # one operator per basis index, carrying the index-th matrix of every fiber that has one
    count = max(algebra.dimensions, default=0)
    operators = []
    for index in range(count):
        fibers = []
        for basis, dim in zip(algebra.fiberBases, algebra.shape.fiberDims):
            fibers.append(basis[index] if index < basis.shape[0] else np.zeros((dim, dim), dtype=np.complex128))
        operators.append(ModuleOperator.square(algebra.shape, fibers))

    return operators


def bicommutant(ops: Sequence[ModuleOperator], shape: Optional[ModuleShape] = None) -> OperatorAlgebraBasis:
    """The commutant of the commutant; contains the span of ops."""

    first = commutant(ops, shape)

    # A fiberwise commutant only sees each fiber's matrices, so the fiber bases can be combined per index
    return commutant(_fiberOperators(first), first.shape)


# --- MEMBERSHIP AND SAMPLING ---


def membershipResidual(algebra: OperatorAlgebraBasis, operator: ModuleOperator) -> float:
    """||M - proj(M)|| / ||M|| in the Hilbert-Schmidt norm summed over fibers (0 for M = 0)."""

    if operator.domainShape != algebra.shape or operator.codomainShape != algebra.shape:
        raise ShapeMismatchError("operator does not act on the algebra's module")

    squares = [_fiberResidual(basis, matrix) ** 2 for basis, matrix in zip(algebra.fiberBases, operator.fibers)]
    norm = np.sqrt(sum(float(np.linalg.norm(matrix)) ** 2 for matrix in operator.fibers))

    return float(np.sqrt(sum(squares)) / norm) if norm > 0 else 0.0


def spanContains(algebra: OperatorAlgebraBasis, operator: ModuleOperator, tol: float = MEMBERSHIP_TOL) -> bool:
    return membershipResidual(algebra, operator) <= tol


def requireMember(algebra: OperatorAlgebraBasis, operator: ModuleOperator, what: str) -> float:
    residual = membershipResidual(algebra, operator)

    if residual > MEMBERSHIP_TOL:
        raise MembershipError(f"{what} is not in the algebra (relative residual {residual:.3e})")

    return residual


def spanResidual(inner: OperatorAlgebraBasis, outer: OperatorAlgebraBasis) -> float:
    """Worst relative membership residual of a basis element of inner in outer."""

    worst = 0.0
    for innerBasis, outerBasis in zip(inner.fiberBases, outer.fiberBases):
        for matrix in innerBasis:
            worst = max(worst, _fiberResidual(outerBasis, matrix) / float(np.linalg.norm(matrix)))

    return worst


def randomElement(algebra: OperatorAlgebraBasis, rng: np.random.Generator) -> ModuleOperator:
    """Sum of the basis with independent standard complex Gaussian coefficients."""

    fibers = []
    for basis in algebra.fiberBases:
        count = basis.shape[0]
        coefficients = (rng.standard_normal(count) + 1j * rng.standard_normal(count)) / np.sqrt(2.0)
        fibers.append(np.tensordot(coefficients, basis, axes=1))

    return ModuleOperator.square(algebra.shape, fibers)


def randomUnitary(algebra: OperatorAlgebraBasis, rng: np.random.Generator) -> ModuleOperator:
    """exp(X - X*) for a random X; stays in a *-closed unital algebra."""

    element = randomElement(algebra, rng)

    return opExp(element - opAdjoint(element))


def randomPositive(algebra: OperatorAlgebraBasis, rng: np.random.Generator) -> ModuleOperator:
    element = randomElement(algebra, rng)

    return opCompose(element, opAdjoint(element))


def randomProjection(algebra: OperatorAlgebraBasis, rng: np.random.Generator) -> ModuleOperator:
    """The positive spectral projection of a random Hermitian element; possibly zero."""

    element = randomElement(algebra, rng)
    hermitian = element + opAdjoint(element)

    fibers = []
    for eigenvalues, eigenvectors in hermEig(hermitian):
        positive = eigenvectors[:, eigenvalues > 0]
        fibers.append(positive @ positive.conj().T)

    return ModuleOperator.square(algebra.shape, fibers)


# --- THE REGULAR CONTEXT ---


def regularContext(group: FiniteGroup, spectrum: FiniteSpectrum) -> RegularContext:
    shape, chi = standardGroupModule(group, spectrum)
    left, right = regularRepresentations(group, spectrum)

    return RegularContext(
        group=group,
        shape=shape,
        chi=chi,
        left=left,
        right=right,
        algebra=bicommutant(left.images),
        commutantAlgebra=commutant(left.images),
    )


def checkCommutantDuality(
    group: FiniteGroup, spectrum: FiniteSpectrum, rng: Optional[np.random.Generator] = None, pairs: int = 8
) -> DualityReport:
    """
    Verifies {L}'' = {R}' and {R}'' = {L}' as spans, with equal dimensions, and that random
    T in {L}' and S in {R}' commute.
    """

    rng = np.random.default_rng(0) if rng is None else rng
    left, right = regularRepresentations(group, spectrum)

    spaces = {
        "leftBicommutant": bicommutant(left.images),
        "rightCommutant": commutant(right.images),
        "rightBicommutant": bicommutant(right.images),
        "leftCommutant": commutant(left.images),
    }

    residuals = {
        "leftBicommutantInRightCommutant": spanResidual(spaces["leftBicommutant"], spaces["rightCommutant"]),
        "rightCommutantInLeftBicommutant": spanResidual(spaces["rightCommutant"], spaces["leftBicommutant"]),
        "rightBicommutantInLeftCommutant": spanResidual(spaces["rightBicommutant"], spaces["leftCommutant"]),
        "leftCommutantInRightBicommutant": spanResidual(spaces["leftCommutant"], spaces["rightBicommutant"]),
    }

    commutation = 0.0
    for _ in range(pairs):
        first = randomElement(spaces["leftCommutant"], rng)
        second = randomElement(spaces["rightCommutant"], rng)
        scale = max(opNorm(first) * opNorm(second), 1.0)
        commutation = max(commutation, commutatorNorm(first, second) / scale)
    residuals["commutation"] = commutation

    dimensions = {name: space.dimensions for name, space in spaces.items()}
    sameDimensions = (
        dimensions["leftBicommutant"] == dimensions["rightCommutant"]
        and dimensions["rightBicommutant"] == dimensions["leftCommutant"]
    )
    membershipOk = all(value <= MEMBERSHIP_TOL for name, value in residuals.items() if name != "commutation")

    return DualityReport(
        groupName=group.name,
        dimensions=dimensions,
        residuals=residuals,
        passed=bool(sameDimensions and membershipOk and commutation <= 1e-9),
    )


# --- THE π-MAP AND THE TRACE ---


def _requireOnGroupModule(context: RegularContext, operator: ModuleOperator) -> None:
    if operator.domainShape != context.shape or operator.codomainShape != context.shape:
        raise ShapeMismatchError("operator does not act on ℓ²_G(A)")


def _solveOnIdentityVector(
    basis: np.ndarray, columns: np.ndarray, target: np.ndarray, point: int
) -> np.ndarray:
    """Coefficients c with sum_k c_k columns[:, k] = target; the columns must be independent."""

    if np.linalg.matrix_rank(columns, tol=RANK_CUTOFF * max(np.linalg.norm(columns, 2), 1.0)) < basis.shape[0]:
        raise DegenerateBasisError(f"fiber {point}: the algebra is not determined by its value on χ_I")

    coefficients, *_ = spla.lstsq(columns, target)

    if np.linalg.norm(columns @ coefficients - target) > MEMBERSHIP_TOL * max(np.linalg.norm(target), 1.0):
        raise DegenerateBasisError(f"fiber {point}: no element of the algebra takes the requested value on χ_I")

    return coefficients


def piMap(context: RegularContext, operator: ModuleOperator) -> ModuleOperator:
    """
    π(A) for A in M: the element T of M' with T L_V χ_I = L_V A* χ_I for every V.

    Since T commutes with every L_V, the condition reduces to T χ_I = A* χ_I.
    """

    _requireOnGroupModule(context, operator)
    requireMember(context.algebra, operator, "π-map input")

    identity = context.group.identity
    fibers = []
    for point, (basis, matrix) in enumerate(zip(context.commutantAlgebra.fiberBases, operator.fibers)):
        columns = basis[:, :, identity].T
        coefficients = _solveOnIdentityVector(basis, columns, matrix.conj().T[:, identity], point)
        fibers.append(np.tensordot(coefficients, basis, axes=1))

    return ModuleOperator.square(context.shape, fibers)


def piInverse(context: RegularContext, operator: ModuleOperator) -> ModuleOperator:
    """The A in M with π(A) = T, i.e. A* χ_I = T χ_I."""

    _requireOnGroupModule(context, operator)
    requireMember(context.commutantAlgebra, operator, "π-inverse input")

    identity = context.group.identity
    fibers = []
    for point, (basis, matrix) in enumerate(zip(context.algebra.fiberBases, operator.fibers)):
        # A = sum c_k A_k gives A* χ_I = sum conj(c_k) A_k* χ_I
        columns = np.conj(basis[:, identity, :])
        conjugated = _solveOnIdentityVector(basis, columns.T, matrix[:, identity], point)
        fibers.append(np.tensordot(np.conj(conjugated), basis, axes=1))

    return ModuleOperator.square(context.shape, fibers)


def tracePhi(context: RegularContext, operator: ModuleOperator) -> AlgebraElement:
    """φ(A) = <A χ_I, χ_I>, the (I, I) entry of every fiber."""

    _requireOnGroupModule(context, operator)

    identity = context.group.identity
    values = [matrix[identity, identity] for matrix in operator.fibers]

    return AlgebraElement(context.shape.spectrum, np.array(values, dtype=np.complex128))


def traceResiduals(context: RegularContext, rng: np.random.Generator, samples: int) -> Dict[str, float]:
    """
    Worst |φ(AB) - φ(BA)| over random pairs in M, and the worst faithfulness excess
    ||A|| - |G|·||φ(A)|| over random positive A in M (never positive for a faithful trace).
    """

    tracial = 0.0
    faithfulness = -np.inf
    order = context.group.order
    for _ in range(samples):
        first = randomElement(context.algebra, rng)
        second = randomElement(context.algebra, rng)
        difference = tracePhi(context, opCompose(first, second)) - tracePhi(context, opCompose(second, first))
        tracial = max(tracial, float(np.max(np.abs(difference.values))))

        positive = randomPositive(context.algebra, rng)
        excess = opNorm(positive) - order * float(np.max(np.abs(tracePhi(context, positive).values)))
        faithfulness = max(faithfulness, excess / max(opNorm(positive), 1.0))

    return {"tracial": tracial, "faithfulness": float(faithfulness)}


# --- PROJECTION EQUIVALENCE ---


def equivalentProjectionIsometry(
    algebra: OperatorAlgebraBasis,
    P: ModuleOperator,
    Q: ModuleOperator,
    rng: np.random.Generator,
    retries: int = RETRY_BUDGET,
) -> ModuleOperator:
    """
    A partial isometry C in the algebra with C C* = I - P and C* C = I - Q.

    Draws random D in the algebra and takes the partial-isometry factor of the polar decomposition
    of E = (I - P) D (I - Q); a generic draw reaches the largest rank the algebra allows, which is
    the full rank of I - P when the two complements are equivalent in the algebra.

    Raises:
        ProjectionEquivalenceError: No draw within the retry budget produced a valid C.
    """

    for name, projection in (("P", P), ("Q", Q)):
        if projectionResidual(projection) > MEMBERSHIP_TOL:
            raise PreconditionError(f"{name} is not a projection")
        requireMember(algebra, projection, name)

    identity = ModuleOperator.identity(algebra.shape)
    rangeComplement = identity - P
    supportComplement = identity - Q

    for _ in range(retries):
        draw = randomElement(algebra, rng)
        product = opCompose(rangeComplement, opCompose(draw, supportComplement))
        isometry, _ = polarDecomposition(product, scale=opNorm(draw))

        rangeError = opDistance(opCompose(isometry, opAdjoint(isometry)), rangeComplement)
        supportError = opDistance(opCompose(opAdjoint(isometry), isometry), supportComplement)

        if max(rangeError, supportError) <= MEMBERSHIP_TOL and spanContains(algebra, isometry):
            return isometry

    raise ProjectionEquivalenceError(f"no partial isometry found after {retries} draws")
