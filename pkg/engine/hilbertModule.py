"""
Finitely generated Hilbert C(X)-modules as fields of finite-dimensional Hilbert spaces.

Every A-linear map between such modules is a field of matrices, hence adjointable; all
operations below act fiber by fiber and skip zero-dimensional fibers.
"""

import numpy as np
import scipy.linalg as spla

from typing import List
from typing import Tuple
from typing import Callable
from typing import Optional

from model.ModuleShape import ModuleShape
from model.ModuleElement import ModuleElement
from model.AlgebraElement import AlgebraElement
from model.ModuleOperator import ModuleOperator

from utils.config import BRANCH_TOL
from utils.config import UNITARY_TOL
from utils.config import EIGEN_FLOOR
from utils.config import RANK_CUTOFF
from utils.config import HERMITIAN_TOL
from utils.errors import BranchCutError
from utils.errors import NotHermitianError
from utils.errors import ShapeMismatchError
from utils.errors import EigenvalueFloorError
from utils.errors import PreconditionError

FiberEigen = Tuple[np.ndarray, np.ndarray]

SPECTRAL_FUNCTIONS = ("sqrt", "inv_sqrt", "inv", "fourth_root", "inv_fourth_root", "log_unitary")

POWERS = {
    "sqrt": 0.5,
    "inv_sqrt": -0.5,
    "inv": -1.0,
    "fourth_root": 0.25,
    "inv_fourth_root": -0.25,
}


def _requireShape(expected: ModuleShape, actual: ModuleShape, what: str) -> None:
    if expected != actual:
        raise ShapeMismatchError(f"{what}: expected fiber dims {expected.fiberDims}, got {actual.fiberDims}")


def _matrixNorm(matrix: np.ndarray) -> float:
    return float(np.linalg.norm(matrix, 2)) if matrix.size else 0.0


# --- ELEMENTS ---


def inner(x: ModuleElement, y: ModuleElement) -> AlgebraElement:
    """The A-valued inner product <x, y>(t) = sum_i x_i(t) conj(y_i(t))."""

    _requireShape(x.shape, y.shape, "inner product")

    values = [np.vdot(yFiber, xFiber) for xFiber, yFiber in zip(x.fibers, y.fibers)]

    return AlgebraElement(x.shape.spectrum, np.array(values, dtype=np.complex128))


def moduleNorm(x: ModuleElement) -> float:
    """||x|| = ||<x, x>||^(1/2), the sup over fibers of the Euclidean fiber norms."""

    return float(np.sqrt(np.max(np.abs(inner(x, x).values))))


def moduleAct(a: AlgebraElement, x: ModuleElement) -> ModuleElement:
    """The left module action a·x."""

    return x.scaled(a)


# --- OPERATORS ---


def opApply(operator: ModuleOperator, x: ModuleElement) -> ModuleElement:
    _requireShape(operator.domainShape, x.shape, "operator application")

    fibers = tuple(matrix @ fiber for matrix, fiber in zip(operator.fibers, x.fibers))

    return ModuleElement(operator.codomainShape, fibers)


def opAdjoint(operator: ModuleOperator) -> ModuleOperator:
    fibers = tuple(matrix.conj().T for matrix in operator.fibers)

    return ModuleOperator(operator.codomainShape, operator.domainShape, fibers)


def opCompose(left: ModuleOperator, right: ModuleOperator) -> ModuleOperator:
    """left ∘ right, i.e. right is applied first."""

    _requireShape(left.domainShape, right.codomainShape, "operator composition")

    fibers = tuple(a @ b for a, b in zip(left.fibers, right.fibers))

    return ModuleOperator(right.domainShape, left.codomainShape, fibers)


def opNorm(operator: ModuleOperator) -> float:
    """Operator norm: the largest fiber spectral norm."""

    return max((_matrixNorm(matrix) for matrix in operator.fibers), default=0.0)


def opDistance(left: ModuleOperator, right: ModuleOperator) -> float:
    return opNorm(left - right)


def opFromFiberFunction(operator: ModuleOperator, function: Callable[[np.ndarray], np.ndarray]) -> ModuleOperator:
    """Applies a matrix function to every fiber of a square operator."""

    fibers = tuple(function(matrix) if matrix.size else matrix for matrix in operator.fibers)

    return ModuleOperator(operator.domainShape, operator.codomainShape, fibers)


def unitarityResidual(operator: ModuleOperator) -> float:
    """max(||M*M - I||, ||MM* - I||) over all fibers."""

    adjoint = opAdjoint(operator)
    left = opCompose(adjoint, operator) - ModuleOperator.identity(operator.domainShape)
    right = opCompose(operator, adjoint) - ModuleOperator.identity(operator.codomainShape)

    return max(opNorm(left), opNorm(right))


def projectionResidual(operator: ModuleOperator) -> float:
    """max(||P^2 - P||, ||P - P*||)."""

    return max(opDistance(opCompose(operator, operator), operator), opDistance(operator, opAdjoint(operator)))


def commutatorNorm(left: ModuleOperator, right: ModuleOperator) -> float:
    return opDistance(opCompose(left, right), opCompose(right, left))


def minSingularValue(operator: ModuleOperator) -> float:
    """Smallest singular value over the nonempty fibers of a square operator."""

    values = [float(np.linalg.svd(matrix, compute_uv=False).min()) for matrix in operator.fibers if matrix.size]

    return min(values, default=0.0)


# --- SPECTRAL CALCULUS ---


def hermEig(operator: ModuleOperator, tol: float = HERMITIAN_TOL) -> List[FiberEigen]:
    """
    Per-fiber eigendecomposition of a fiberwise Hermitian operator.

    Arguments:
        operator (ModuleOperator): Square, Hermitian in every fiber up to ||M - M*|| <= tol·||M||.
        tol (float, optional): Hermiticity tolerance. Defaults to HERMITIAN_TOL.

    Returns:
        list[tuple[np.ndarray, np.ndarray]]: (ascending eigenvalues, unitary eigenvector matrix) per fiber,
        with M = V diag(λ) V*. Zero-dimensional fibers give empty arrays.
    """

    if not operator.isSquare:
        raise ShapeMismatchError("eigendecomposition needs a square operator")

    decompositions = []
    for point, matrix in enumerate(operator.fibers):
        if not matrix.size:
            decompositions.append((np.zeros(0), np.zeros((0, 0), dtype=np.complex128)))
            continue

        asymmetry = _matrixNorm(matrix - matrix.conj().T)
        if asymmetry > tol * max(_matrixNorm(matrix), np.finfo(float).tiny):
            raise NotHermitianError(f"fiber {point} is not Hermitian (||M - M*|| = {asymmetry:.3e})")

        eigenvalues, eigenvectors = spla.eigh(0.5 * (matrix + matrix.conj().T))
        decompositions.append((eigenvalues, eigenvectors))

    return decompositions


def _rebuild(eigenvectors: np.ndarray, values: np.ndarray) -> np.ndarray:
    return (eigenvectors * values) @ eigenvectors.conj().T


def _logUnitary(operator: ModuleOperator, onBranchCut: str) -> ModuleOperator:
    residual = unitarityResidual(operator)
    if residual > UNITARY_TOL:
        raise PreconditionError(f"log_unitary needs a unitary operator (residual {residual:.3e})")

    fibers = []
    for point, matrix in enumerate(operator.fibers):
        if not matrix.size:
            fibers.append(matrix)
            continue

        # A unitary is normal, so its complex Schur form is diagonal
        triangular, schurVectors = spla.schur(matrix, output="complex")
        phases = np.angle(np.diag(triangular))
        onCut = np.abs(phases) > np.pi - BRANCH_TOL

        if np.any(onCut):
            if onBranchCut == "raise":
                raise BranchCutError(f"fiber {point} has the eigenvalue -1")
            phases = np.where(onCut, np.pi, phases)

        fibers.append(_rebuild(schurVectors, 1j * phases))

    return ModuleOperator(operator.domainShape, operator.codomainShape, tuple(fibers))


def opSpectralFn(
    operator: ModuleOperator,
    fn: str,
    floor: float = EIGEN_FLOOR,
    onBranchCut: str = "snap",
) -> ModuleOperator:
    """
    Fiberwise functional calculus V f(diag λ) V*.

    Arguments:
        operator (ModuleOperator): Hermitian with eigenvalues >= floor for the power functions,
            unitary for log_unitary.
        fn (str): One of SPECTRAL_FUNCTIONS.
        floor (float, optional): Smallest admissible eigenvalue for the power functions. Defaults to EIGEN_FLOOR.
        onBranchCut (str, optional): "snap" maps eigenphases at ±π to +π, "raise" raises BranchCutError.

    Returns:
        ModuleOperator: f(M); for log_unitary a skew-Hermitian K with exp(K) = M.
    """

    if fn == "log_unitary":
        return _logUnitary(operator, onBranchCut)

    if fn not in POWERS:
        raise ValueError(f"unknown spectral function {fn!r}, expected one of {SPECTRAL_FUNCTIONS}")

    fibers = []
    for point, (eigenvalues, eigenvectors) in enumerate(hermEig(operator)):
        if not eigenvalues.size:
            fibers.append(np.zeros((0, 0), dtype=np.complex128))
            continue

        if eigenvalues[0] < floor:
            raise EigenvalueFloorError(f"fiber {point}: eigenvalue {eigenvalues[0]:.3e} below floor {floor:.1e}")

        fibers.append(_rebuild(eigenvectors, eigenvalues ** POWERS[fn]))

    return ModuleOperator(operator.domainShape, operator.codomainShape, tuple(fibers))


def opExp(operator: ModuleOperator) -> ModuleOperator:
    """Fiberwise matrix exponential."""

    return opFromFiberFunction(operator, spla.expm)


# --- RANK AND POLAR DECOMPOSITION ---


def _svdRank(singularValues: np.ndarray, cutoff: float, scale: Optional[float]) -> int:
    if not singularValues.size:
        return 0

    threshold = cutoff * max(float(singularValues[0]), scale or 0.0)

    return int(np.count_nonzero(singularValues > threshold))


def rangeBasis(matrix: np.ndarray, cutoff: float = RANK_CUTOFF, scale: Optional[float] = None) -> np.ndarray:
    """
    Orthonormal basis (as columns) of the range of a matrix.

    Singular values at or below cutoff·max(largest singular value, scale) count as zero.
    """

    if not matrix.size:
        return np.zeros((matrix.shape[0], 0), dtype=np.complex128)

    leftVectors, singularValues, _ = spla.svd(matrix, full_matrices=False)

    return leftVectors[:, : _svdRank(singularValues, cutoff, scale)]


def polarDecomposition(
    operator: ModuleOperator, cutoff: float = RANK_CUTOFF, scale: Optional[float] = None
) -> Tuple[ModuleOperator, ModuleOperator]:
    """
    Splits M = |M*| V with V a partial isometry.

    Returns:
        tuple[ModuleOperator, ModuleOperator]: (V, |M*|). V*V is the support projection of M and
        VV* its range projection; both are functions of M*M and MM*, so they stay in any
        *-algebra containing M.
    """

    isometries = []
    moduli = []
    for matrix in operator.fibers:
        rows, columns = matrix.shape
        if not matrix.size:
            isometries.append(np.zeros((rows, columns), dtype=np.complex128))
            moduli.append(np.zeros((rows, rows), dtype=np.complex128))
            continue

        leftVectors, singularValues, rightVectorsH = spla.svd(matrix, full_matrices=False)
        rank = _svdRank(singularValues, cutoff, scale)

        left = leftVectors[:, :rank]
        isometries.append(left @ rightVectorsH[:rank, :])
        moduli.append((left * singularValues[:rank]) @ left.conj().T)

    isometry = ModuleOperator(operator.domainShape, operator.codomainShape, tuple(isometries))
    modulus = ModuleOperator(operator.codomainShape, operator.codomainShape, tuple(moduli))

    return isometry, modulus


def randomUnitaryMatrix(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-distributed unitary: QR of a complex Gaussian matrix with the phases of R divided out."""

    if not dim:
        return np.zeros((0, 0), dtype=np.complex128)

    gaussian = (rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))) / np.sqrt(2.0)
    q, r = np.linalg.qr(gaussian)
    diagonal = np.diag(r)

    return q * (diagonal / np.abs(diagonal))


def randomModuleUnitary(shape: ModuleShape, rng: np.random.Generator) -> ModuleOperator:
    """A unitary on the module, drawn fiber by fiber."""

    return ModuleOperator.square(shape, [randomUnitaryMatrix(dim, rng) for dim in shape.fiberDims])


def randomModuleElement(shape: ModuleShape, rng: np.random.Generator) -> ModuleElement:
    """An element with independent standard complex Gaussian entries."""

    fibers = [(rng.standard_normal(dim) + 1j * rng.standard_normal(dim)) / np.sqrt(2.0) for dim in shape.fiberDims]

    return ModuleElement(shape, tuple(fibers))
