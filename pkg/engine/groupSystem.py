"""
Finite groups, their unitary representations on Hilbert C(X)-modules, the group module ℓ²_G(A)
with its left and right regular representations, orbit frames and the dilation into ℓ²_G(A).
"""

import re
import numpy as np

from typing import Dict
from typing import List
from typing import Tuple
from typing import Optional
from itertools import permutations

from model.FiniteGroup import FiniteGroup
from model.ModuleShape import ModuleShape
from model.FrameSystem import FrameSystem
from model.ModuleElement import ModuleElement
from model.FiniteSpectrum import FiniteSpectrum
from model.MultiGenerator import MultiGenerator
from model.ModuleOperator import ModuleOperator
from model.VectorClassification import LABELS
from model.VectorClassification import VectorClassification
from model.UnitaryRepresentation import UnitaryRepresentation

from engine.frames import analysisOperator
from engine.hilbertModule import opNorm
from engine.hilbertModule import hermEig
from engine.hilbertModule import opApply
from engine.hilbertModule import opAdjoint
from engine.hilbertModule import opCompose
from engine.hilbertModule import opDistance
from engine.hilbertModule import rangeBasis
from engine.hilbertModule import commutatorNorm
from engine.hilbertModule import projectionResidual
from engine.hilbertModule import unitarityResidual

from utils.config import RANK_CUTOFF
from utils.config import CLASSIFY_TOL
from utils.config import MAX_GROUP_ORDER
from utils.config import COMMUTATION_TOL
from utils.config import getDefaultTolerance
from utils.errors import PreconditionError
from utils.errors import ConfigurationError
from utils.errors import ShapeMismatchError
from utils.errors import RepresentationError

COMPLETE_PARSEVAL = LABELS[2]

# --- GROUP FACTORIES ---


def trivialGroup() -> FiniteGroup:
    return FiniteGroup("trivial", ("e",), ((0,),))


def cyclicGroup(order: int) -> FiniteGroup:
    """Z/n with elements e, g, g2, ..., g(n-1)."""

    if order < 1:
        raise ConfigurationError(f"cyclic group order must be positive, got {order}")

    labels = ["e", "g"] + [f"g{power}" for power in range(2, order)]
    table = tuple(tuple((i + j) % order for j in range(order)) for i in range(order))

    return FiniteGroup(f"Z{order}", tuple(labels[:order]), table)


def dihedralGroup(n: int) -> FiniteGroup:
    """The symmetries of the regular n-gon: rotations r0..r(n-1) followed by reflections s0..s(n-1)."""

    if n < 2:
        raise ConfigurationError(f"dihedral group needs n >= 2, got {n}")

    table = [[0] * (2 * n) for _ in range(2 * n)]
    for i in range(n):
        for j in range(n):
            table[i][j] = (i + j) % n
            table[i][j + n] = n + (i + j) % n
            table[i + n][j] = n + (i - j) % n
            table[i + n][j + n] = (i - j) % n

    labels = tuple(f"r{i}" for i in range(n)) + tuple(f"s{i}" for i in range(n))

    return FiniteGroup(f"D{n}", labels, tuple(tuple(row) for row in table))


def symmetricGroup(n: int) -> FiniteGroup:
    """
    S_n for n <= 4. An element is labeled by its image string, so "102" swaps 0 and 1;
    the product is composition (στ)(i) = σ(τ(i)).
    """

    if not 1 <= n <= 4:
        raise ConfigurationError(f"symmetric groups are supported for 1 <= n <= 4, got {n}")

    perms = list(permutations(range(n)))
    position = {perm: index for index, perm in enumerate(perms)}

    table = tuple(tuple(position[tuple(sigma[tau[i]] for i in range(n))] for tau in perms) for sigma in perms)
    labels = tuple("".join(str(image) for image in perm) for perm in perms)

    return FiniteGroup(f"S{n}", labels, table)


def directProduct(left: FiniteGroup, right: FiniteGroup) -> FiniteGroup:
    pairs = [(a, b) for a in range(left.order) for b in range(right.order)]
    position = {pair: index for index, pair in enumerate(pairs)}

    table = tuple(
        tuple(position[(left.multiply(a, c), right.multiply(b, d))] for c, d in pairs) for a, b in pairs
    )
    labels = tuple(f"({left.elements[a]},{right.elements[b]})" for a, b in pairs)

    return FiniteGroup(f"{left.name}x{right.name}", labels, table)


def kleinGroup() -> FiniteGroup:
    group = directProduct(cyclicGroup(2), cyclicGroup(2))

    return FiniteGroup("Z2xZ2", group.elements, group.table)


NAMED_GROUPS = {
    "trivial": trivialGroup,
    "Z2xZ2": kleinGroup,
    "S3": lambda: symmetricGroup(3),
    "S4": lambda: symmetricGroup(4),
}


def namedGroup(name: str) -> FiniteGroup:
    """Resolves "trivial", "Zn", "Dn", "Sn" (n <= 4) and "Z2xZ2"."""

    if name in NAMED_GROUPS:
        group = NAMED_GROUPS[name]()
    elif match := re.fullmatch(r"([ZDS])(\d+)", name):
        factory = {"Z": cyclicGroup, "D": dihedralGroup, "S": symmetricGroup}[match.group(1)]
        group = factory(int(match.group(2)))
    else:
        raise ConfigurationError(f"unknown group {name!r}")

    if group.order > MAX_GROUP_ORDER:
        raise ConfigurationError(f"{name} has order {group.order}, above the cap of {MAX_GROUP_ORDER}")

    return group


# --- THE GROUP MODULE ---


def standardGroupModule(group: FiniteGroup, spectrum: FiniteSpectrum) -> Tuple[ModuleShape, Tuple[ModuleElement, ...]]:
    """ℓ²_G(A) and its orthonormal basis χ_U (1_A at U, 0 elsewhere) in element order."""

    shape = ModuleShape.uniform(spectrum, group.order)

    return shape, tuple(ModuleElement.basisVector(shape, index) for index in range(group.order))


def _permutationRepresentation(group: FiniteGroup, spectrum: FiniteSpectrum, target) -> UnitaryRepresentation:
    shape = ModuleShape.uniform(spectrum, group.order)

    images = []
    for u in range(group.order):
        matrix = np.zeros((group.order, group.order), dtype=np.complex128)
        for v in range(group.order):
            matrix[target(u, v), v] = 1.0
        images.append(ModuleOperator.square(shape, [matrix] * len(spectrum)))

    return UnitaryRepresentation(group, shape, tuple(images))


def regularRepresentations(
    group: FiniteGroup, spectrum: FiniteSpectrum
) -> Tuple[UnitaryRepresentation, UnitaryRepresentation]:
    """L_U χ_V = χ_(UV) and R_U χ_V = χ_(VU^-1), the same permutation matrix in every fiber."""

    left = _permutationRepresentation(group, spectrum, lambda u, v: group.multiply(u, v))
    right = _permutationRepresentation(group, spectrum, lambda u, v: group.multiply(v, group.inverse(u)))

    return left, right


def trivialRepresentation(group: FiniteGroup, shape: ModuleShape) -> UnitaryRepresentation:
    """Every element acts as the identity."""

    return UnitaryRepresentation(group, shape, tuple(ModuleOperator.identity(shape) for _ in range(group.order)))


def representationResiduals(rep: UnitaryRepresentation) -> Dict[str, float]:
    """Worst unitarity, homomorphism and identity residuals over the whole group."""

    group = rep.group
    unitarity = max(unitarityResidual(image) for image in rep.images)

    homomorphism = 0.0
    for g in range(group.order):
        for h in range(group.order):
            product = opCompose(rep.images[g], rep.images[h])
            homomorphism = max(homomorphism, opDistance(rep.images[group.multiply(g, h)], product))

    identity = opDistance(rep.images[group.identity], ModuleOperator.identity(rep.shape))

    return {"unitarity": unitarity, "homomorphism": homomorphism, "identity": identity}


def validateRepresentation(rep: UnitaryRepresentation, tol: float = 1e-9) -> Dict[str, float]:
    """Checks the representation axioms; the identity image is held to tol / 10."""

    residuals = representationResiduals(rep)
    limits = {"unitarity": tol, "homomorphism": tol, "identity": tol / 10}

    for name, residual in residuals.items():
        if residual > limits[name]:
            raise RepresentationError(f"{name} residual {residual:.3e} exceeds {limits[name]:.1e}")

    return residuals


def conjugateRepresentation(rep: UnitaryRepresentation, unitary: ModuleOperator) -> UnitaryRepresentation:
    """g -> W U(g) W*, a unitarily equivalent copy."""

    adjoint = opAdjoint(unitary)
    images = tuple(opCompose(unitary, opCompose(image, adjoint)) for image in rep.images)

    return UnitaryRepresentation(rep.group, unitary.codomainShape, images)


# --- ORBITS AND CLASSIFICATION ---


def orbitMultiframe(rep: UnitaryRepresentation, generators: MultiGenerator) -> FrameSystem:
    """{U φ_k} indexed by (group element, generator) with the generator index varying fastest."""

    if generators.shape != rep.shape:
        raise ShapeMismatchError("generators do not live in the representation module")

    vectors = [opApply(image, generator) for image in rep.images for generator in generators]

    return FrameSystem(rep.shape, tuple(vectors))


def orbitMatrices(rep: UnitaryRepresentation, x: ModuleElement) -> List[np.ndarray]:
    """Per point, the n_t x |G| matrix whose columns are U(t) x(t)."""

    if x.shape != rep.shape:
        raise ShapeMismatchError("vector does not live in the representation module")

    return [
        np.column_stack([image.fibers[point] @ x.fibers[point] for image in rep.images]).reshape(dim, len(rep))
        for point, dim in enumerate(rep.shape.fiberDims)
    ]


def classifyVector(
    rep: UnitaryRepresentation,
    x: ModuleElement,
    tol: Optional[float] = None,
    precision: float = CLASSIFY_TOL,
) -> VectorClassification:
    """
    Decides what the orbit {U x} is.

    Completeness compares the fiberwise rank of the orbit span (relative cutoff RANK_CUTOFF)
    with the fiber dimension. Frame bounds on the span are the extreme nonzero squared singular
    values of the orbit matrices; the orbit is a frame when C > tol and Parseval when every kept
    squared singular value is within precision·max(1, D) of 1. The zero vector is labeled "none".

    Arguments:
        rep (UnitaryRepresentation): The group action.
        x (ModuleElement): The vector to classify.
        tol (float, optional): Positivity tolerance for the lower bound. Defaults to the configured tolerance.
        precision (float, optional): Tolerance of the Parseval and wandering decisions. Defaults to CLASSIFY_TOL.

    Returns:
        VectorClassification: The strongest applicable label plus the underlying flags and bounds.
    """

    tol = getDefaultTolerance() if tol is None else tol
    identity = np.eye(len(rep))

    ranks = []
    kept = []
    wandering = True
    for orbit in orbitMatrices(rep, x):
        gram = orbit.conj().T @ orbit
        wandering = wandering and bool(np.linalg.norm(gram - identity, 2) <= precision)

        singularValues = np.linalg.svd(orbit, compute_uv=False) if orbit.size else np.zeros(0)
        rank = 0
        if singularValues.size and singularValues[0] > 0:
            rank = int(np.count_nonzero(singularValues > RANK_CUTOFF * singularValues[0]))

        ranks.append(rank)
        kept.extend(float(value) ** 2 for value in singularValues[:rank])

    complete = all(rank == dim for rank, dim in zip(ranks, rep.shape.fiberDims))

    if not kept:
        return VectorClassification(LABELS[-1], False, False, False, False, 0.0, 0.0, tuple(ranks))

    lower = min(kept)
    upper = max(kept)
    frame = lower > tol
    parseval = frame and max(abs(value - 1.0) for value in kept) <= precision * max(1.0, upper)

    if wandering:
        label = LABELS[0] if complete else LABELS[1]
    elif parseval:
        label = LABELS[2] if complete else LABELS[3]
    elif frame:
        label = LABELS[4] if complete else LABELS[5]
    else:
        label = LABELS[6] if complete else LABELS[7]

    return VectorClassification(label, complete, wandering, parseval or wandering, frame, lower, upper, tuple(ranks))


def requireCompleteParseval(rep: UnitaryRepresentation, x: ModuleElement, what: str, precision: float = CLASSIFY_TOL):
    classification = classifyVector(rep, x, precision=precision)

    if not classification.satisfies(COMPLETE_PARSEVAL):
        raise PreconditionError(f"{what} is not a complete Parseval frame vector ({classification.label})")

    return classification


# --- DILATION ---


def dilate(rep: UnitaryRepresentation, eta: ModuleElement) -> Tuple[ModuleOperator, ModuleOperator]:
    """
    Embeds the representation into the left regular one.

    Arguments:
        rep (UnitaryRepresentation): The group action on H.
        eta (ModuleElement): A complete Parseval frame vector for rep.

    Returns:
        tuple[ModuleOperator, ModuleOperator]: T x = sum_U <x, U η> χ_U, an isometry H -> ℓ²_G(A) with
        L_U T = T U, and the projection P = T T* onto T(H), which commutes with every L_U and has P χ_I = T η.
    """

    requireCompleteParseval(rep, eta, "η")

    analysis = analysisOperator(orbitMultiframe(rep, MultiGenerator((eta,))))

    return analysis, opCompose(analysis, opAdjoint(analysis))


def dilationResiduals(
    rep: UnitaryRepresentation, eta: ModuleElement, dilation: ModuleOperator, projection: ModuleOperator
) -> Dict[str, float]:
    group = rep.group
    left, _ = regularRepresentations(group, rep.shape.spectrum)
    _, chi = standardGroupModule(group, rep.shape.spectrum)

    isometry = opDistance(opCompose(opAdjoint(dilation), dilation), ModuleOperator.identity(rep.shape))
    intertwining = max(
        opDistance(opCompose(leftImage, dilation), opCompose(dilation, image))
        for leftImage, image in zip(left.images, rep.images)
    )
    commutation = max(commutatorNorm(projection, leftImage) for leftImage in left.images)
    generator = opApply(dilation, eta).distance(opApply(projection, chi[group.identity]))

    return {
        "isometry": isometry,
        "intertwining": intertwining,
        "projection": projectionResidual(projection),
        "commutation": commutation,
        "generator": generator,
    }


def dilationProperty(rep: UnitaryRepresentation, eta: ModuleElement) -> Dict[str, object]:
    """
    Checks that rep is the restriction of a representation with complete wandering vectors:
    T(H) is invariant under every L_U, T* L_U T = U, and χ_I is complete wandering for L.
    """

    dilation, projection = dilate(rep, eta)
    left, _ = regularRepresentations(rep.group, rep.shape.spectrum)
    _, chi = standardGroupModule(rep.group, rep.shape.spectrum)

    complement = ModuleOperator.identity(projection.domainShape) - projection
    invariance = max(opNorm(opCompose(complement, opCompose(image, projection))) for image in left.images)
    restriction = max(
        opDistance(opCompose(opAdjoint(dilation), opCompose(leftImage, dilation)), image)
        for leftImage, image in zip(left.images, rep.images)
    )
    wanderingLabel = classifyVector(left, chi[rep.group.identity]).label

    return {
        "invariance": invariance,
        "restriction": restriction,
        "wanderingLabel": wanderingLabel,
        "holds": invariance <= 1e-9 and restriction <= 1e-9 and wanderingLabel == LABELS[0],
    }


# --- COMPRESSED REGULAR REPRESENTATIONS ---


def _topClusters(eigenvalues: np.ndarray, maxRank: int) -> int:
    """How many of the largest positive eigenvalues to keep without splitting a cluster."""

    scale = max(float(np.max(np.abs(eigenvalues))), 1.0)
    kept = 0
    index = len(eigenvalues) - 1
    while index >= 0 and eigenvalues[index] > RANK_CUTOFF * scale:
        start = index
        while start > 0 and eigenvalues[index] - eigenvalues[start - 1] <= RANK_CUTOFF * scale:
            start -= 1

        if kept + index - start + 1 > maxRank:
            break

        kept += index - start + 1
        index = start - 1

    return kept


def randomRegularProjection(
    group: FiniteGroup, spectrum: FiniteSpectrum, rng: np.random.Generator, maxRank: Optional[int] = None
) -> ModuleOperator:
    """
    A random nonzero projection commuting with every L_U.

    Per fiber it is a spectral projection of H = X + X* for a random X = sum_U c_U R_U, which lies
    in the commutant of L: the eigenvectors of the largest positive eigenvalues, taken cluster by
    cluster while the rank stays within maxRank.
    """

    _, right = regularRepresentations(group, spectrum)
    maxRank = group.order if maxRank is None else maxRank

    while True:
        fibers = []
        for point in range(len(spectrum)):
            coefficients = rng.standard_normal(group.order) + 1j * rng.standard_normal(group.order)
            mixture = sum(c * image.fibers[point] for c, image in zip(coefficients, right.images))
            fibers.append(mixture + mixture.conj().T)

        hermitian = ModuleOperator.square(right.shape, fibers)

        projections = []
        for eigenvalues, eigenvectors in hermEig(hermitian):
            kept = _topClusters(eigenvalues, maxRank)
            top = eigenvectors[:, len(eigenvalues) - kept :]
            projections.append(top @ top.conj().T)

        if any(np.trace(projection).real > 0.5 for projection in projections):
            return ModuleOperator.square(right.shape, projections)


def compressedRegularRepresentation(
    group: FiniteGroup, spectrum: FiniteSpectrum, projection: ModuleOperator
) -> Tuple[UnitaryRepresentation, ModuleElement]:
    """
    L compressed to the range of an L-commuting projection P.

    With W an orthonormal basis of Rang P per fiber, U_g = W* L_g W acts on a module with fiber
    dimensions rank P(t), and η = W* χ_I is a complete Parseval frame vector for it.
    """

    left, _ = regularRepresentations(group, spectrum)

    if projectionResidual(projection) > 1e-9:
        raise PreconditionError("the compressing operator is not a projection")

    if any(commutatorNorm(projection, image) > COMMUTATION_TOL for image in left.images):
        raise PreconditionError("the compressing projection does not commute with the left regular representation")

    bases = [rangeBasis(matrix) for matrix in projection.fibers]
    if not any(basis.shape[1] for basis in bases):
        raise PreconditionError("cannot compress to the range of the zero projection")

    shape = ModuleShape(spectrum, tuple(basis.shape[1] for basis in bases))

    images = tuple(
        ModuleOperator.square(shape, [basis.conj().T @ matrix @ basis for basis, matrix in zip(bases, image.fibers)])
        for image in left.images
    )
    eta = ModuleElement(shape, tuple(basis.conj().T[:, group.identity] for basis in bases))

    return UnitaryRepresentation(group, shape, images), eta
