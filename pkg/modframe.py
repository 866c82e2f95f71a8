import sys
import time
import argparse
import numpy as np

from pathlib import Path

from typing import Dict
from typing import List
from typing import Tuple
from typing import Callable
from typing import Optional

from model.CliArgs import CliArgs
from model.RandSpec import RandSpec
from model.RunReport import RunReport
from model.FiniteGroup import FiniteGroup
from model.FrameSystem import FrameSystem
from model.ModuleElement import ModuleElement
from model.InstanceBundle import InstanceBundle
from model.MultiGenerator import MultiGenerator
from model.FiniteSpectrum import FiniteSpectrum
from model.ModuleOperator import ModuleOperator
from model.UnitaryRepresentation import UnitaryRepresentation
from model.ParameterizationWitness import KINDS

from controller.Writer import Writer
from controller.Writer import FORMATS
from controller.BundleIO import BundleIO
from controller.JsonCodec import JsonCodec
from controller.FileWriter import FileWriter
from controller.ConsoleWriter import ConsoleWriter
from controller.InstanceGenerator import InstanceGenerator

from engine.algebra import algNorm
from engine.frames import frameSum
from engine.frames import frameBounds
from engine.frames import canonicalDual
from engine.frames import frameOperator
from engine.frames import canonicalParseval
from engine.frames import frameInequalityGap
from engine.frames import reconstructResidual
from engine.commutant import commutant
from engine.commutant import bicommutant
from engine.commutant import randomUnitary
from engine.commutant import regularContext
from engine.commutant import traceResiduals
from engine.commutant import membershipResidual
from engine.commutant import checkCommutantDuality
from engine.parametrize import applyGenerator
from engine.parametrize import solveGenerator
from engine.parametrize import certifyOptimality
from engine.parametrize import bestParsevalApprox
from engine.parametrize import checkEnergyEquality
from engine.parametrize import connectParsevalVectors
from engine.groupSystem import dilate
from engine.groupSystem import namedGroup
from engine.groupSystem import classifyVector
from engine.groupSystem import dilationProperty
from engine.groupSystem import dilationResiduals
from engine.groupSystem import representationResiduals
from engine.hilbertModule import opDistance
from engine.hilbertModule import moduleNorm
from engine.hilbertModule import commutatorNorm
from engine.hilbertModule import randomModuleElement

from utils import status
from utils.config import CLASSIFY_TOL
from utils.config import MEMBERSHIP_TOL
from utils.config import COMMUTATION_TOL
from utils.config import getDefaultTolerance
from utils.errors import MathError
from utils.errors import InputError
from utils.errors import ConfigurationError
from utils.status import printError
from utils.status import printStatus

VERSION = "1.0.0"

# --- EXIT CODES ---
EXIT_PASS = 0
EXIT_MATH_FAILURE = 1
EXIT_INPUT_ERROR = 2
EXIT_INTERRUPTED = 130

ACTION_ALIASES = {"duality": "lemma33"}

# Checks of already normalized quantities
DILATION_TOL = 1e-9
TRACE_TOL = 1e-10
FAITHFULNESS_TOL = 1e-8
ENERGY_TOL = 1e-9

Handler = Callable[[CliArgs, Optional[InstanceBundle], float, RunReport], None]


def positiveInt(value: str) -> int:
    number = int(value)

    if number < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")

    return number


def positiveFloat(value: str) -> float:
    number = float(value)

    if not number > 0:
        raise argparse.ArgumentTypeError(f"expected a positive number, got {value}")

    return number


def addCommonArguments(parser: argparse.ArgumentParser) -> None:
    """Flags every leaf subcommand accepts."""

    parser.add_argument(
        "-h",
        "--help",
        action="help",
        default=argparse.SUPPRESS,
        help="Show this help message and exit.",
    )
    parser.add_argument(
        "--tol",
        metavar="TOL",
        dest="tol",
        type=positiveFloat,
        default=None,
        help="Positivity tolerance of order checks, overrides $MODFRAME_TOL, default: 1e-9",
    )
    parser.add_argument(
        "-s",
        "--seed",
        metavar="SEED",
        dest="seed",
        type=int,
        default=0,
        help="Seed of every random draw of the command, default: %(default)s",
    )
    parser.add_argument(
        "-o",
        "--out",
        metavar="PATH",
        dest="outputPath",
        type=str,
        default=None,
        help="Also write the report (the bundle for rand) to %(metavar)s",
    )
    parser.add_argument(
        "-f",
        "--format",
        dest="format",
        metavar=f"FORMAT [{'|'.join(FORMATS)}]",
        choices=FORMATS,
        default="json",
        help="Report format, default: %(default)s",
    )
    parser.add_argument(
        "-N",
        "--no-color",
        dest="noColor",
        action="store_true",
        default=False,
        help="Disable colors, default: %(default)s",
    )
    parser.add_argument(
        "--timing",
        dest="timing",
        action="store_true",
        default=False,
        help="Include the wall time in the report, default: %(default)s",
    )


def addLeaf(subparsers, name: str, description: str, bundle: str = "required", **kwargs) -> argparse.ArgumentParser:
    parser = subparsers.add_parser(
        name,
        add_help=False,
        help=description,
        description=description,
        formatter_class=argparse.RawTextHelpFormatter,
        **kwargs,
    )

    if bundle == "required":
        parser.add_argument(metavar="bundle", dest="bundle", help="Instance bundle JSON file")
    elif bundle == "optional":
        parser.add_argument(metavar="bundle", dest="bundle", nargs="?", default=None, help="Optional instance bundle")

    addCommonArguments(parser)

    return parser


def addCommand(subparsers, name: str, description: str) -> argparse._SubParsersAction:
    """A command group such as "frame"; returns the subparsers of its actions."""

    parser = subparsers.add_parser(name, add_help=False, help=description, description=description)
    parser.add_argument(
        "-h",
        "--help",
        action="help",
        default=argparse.SUPPRESS,
        help="Show this help message and exit.",
    )

    return parser.add_subparsers(dest="action", metavar="ACTION", required=True)


def addGroupChoice(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "-g",
        "--group",
        metavar="GROUP",
        dest="group",
        type=str,
        default=None,
        help="Named group (trivial, Z2, Z3, Z4, Z2xZ2, S3, D4, S4, Zn, Dn, Sn), default: the bundle group",
    )
    parser.add_argument(
        "-p",
        "--points",
        metavar="N",
        dest="points",
        type=positiveInt,
        default=None,
        help="Number of points of the spectrum, default: the bundle spectrum or 1",
    )


def getArgParser() -> argparse.ArgumentParser:
    """Creates and returns the ArgumentParser instance."""

    parser = argparse.ArgumentParser(
        add_help=False,
        prog=Path(sys.argv[0]).stem,
        description="Modular frames over Hilbert C(X)-modules with a finite spectrum.",
        formatter_class=argparse.RawTextHelpFormatter,
    )

    parser.add_argument(
        "-h",
        "--help",
        action="help",
        default=argparse.SUPPRESS,
        help="Show this help message and exit.",
    )
    parser.add_argument(
        "-v",
        "--version",
        action="version",
        version=f"{Path(parser.prog).stem} v{VERSION}",
        help="Print the version number and exit",
    )

    commands = parser.add_subparsers(dest="command", metavar="COMMAND", required=True)

    addLeaf(commands, "validate", "Load a bundle and run every validation")

    # --- frame ---
    frameActions = addCommand(commands, "frame", "Modular frame operations")
    for name, description in (
        ("analyze", "Frame bounds, classification and reconstruction"),
        ("parseval", "Canonical Parseval frame S^(-1/2)x_j"),
        ("dual", "Canonical dual frame S^(-1)x_j"),
    ):
        leaf = addLeaf(frameActions, name, description)
        leaf.add_argument(
            "--frame",
            metavar="NAME",
            dest="frame",
            type=str,
            default=None,
            help="Frame of the bundle to use, default: the first one",
        )

    # --- group ---
    groupActions = addCommand(commands, "group", "Group representation operations")
    for name, description in (
        ("classify-vector", "Classify the orbit of a vector"),
        ("dilate", "Dilate the representation into the left regular one"),
    ):
        leaf = addLeaf(groupActions, name, description)
        leaf.add_argument(
            "--vector",
            metavar="NAME",
            dest="vector",
            type=str,
            default="eta",
            help="Vector of the bundle to use, default: %(default)s",
        )

    # --- commutant ---
    algebraActions = addCommand(commands, "commutant", "Commutants, duality and trace")
    addLeaf(algebraActions, "compute", "Commutant and bicommutant of the representation")
    duality = addLeaf(
        algebraActions,
        "lemma33",
        "Check {L}'' = {R}' and {R}'' = {L}' on the group module",
        bundle="optional",
        aliases=["duality"],
    )
    addGroupChoice(duality)
    duality.add_argument(
        "--pairs",
        metavar="N",
        dest="pairs",
        type=positiveInt,
        default=8,
        help="Random commutation pairs, default: %(default)s",
    )
    trace = addLeaf(
        algebraActions,
        "trace-check",
        "Check the trace on {L}'' is tracial and faithful",
        bundle="optional",
    )
    addGroupChoice(trace)
    trace.add_argument(
        "--samples",
        metavar="N",
        dest="samples",
        type=positiveInt,
        default=100,
        help="Random pairs, default: %(default)s",
    )

    # --- param ---
    paramActions = addCommand(commands, "param", "Parameterization of frame vectors")
    for name, description in (
        ("solve", "Find A in G'' with A eta = xi"),
        ("apply", "Compute xi = A eta for A in G''"),
        ("path", "Path of complete Parseval frame vectors from eta to xi"),
    ):
        leaf = addLeaf(paramActions, name, description)
        leaf.add_argument(
            "--vector",
            metavar="NAME",
            dest="vector",
            type=str,
            default="eta",
            help="Complete Parseval frame vector to start from, default: %(default)s",
        )
        if name != "apply":
            leaf.add_argument(
                "--target",
                metavar="NAME",
                dest="target",
                type=str,
                default="xi",
                help="Target vector, default: %(default)s",
            )
        if name != "path":
            leaf.add_argument(
                "-k",
                "--kind",
                metavar=f"KIND [{'|'.join(KINDS)}]",
                dest="kind",
                choices=KINDS,
                default="unitary",
                help="Kind of the operator, default: %(default)s",
            )
        if name == "apply":
            leaf.add_argument(
                "--operator",
                metavar="NAME",
                dest="operator",
                type=str,
                default=None,
                help="Operator of the bundle to apply, default: a random unitary of G''",
            )
        if name == "path":
            leaf.add_argument(
                "--steps",
                metavar="N",
                dest="steps",
                type=positiveInt,
                default=16,
                help="Number of path steps, default: %(default)s",
            )
            leaf.add_argument(
                "--strict-branch",
                dest="strictBranch",
                action="store_true",
                default=False,
                help="Fail on eigenvalues at -1 instead of choosing the +pi branch, default: %(default)s",
            )

    # --- approx ---
    approxActions = addCommand(commands, "approx", "Best Parseval multi-frame approximation")
    for name, description in (
        ("best", "Best Parseval approximation S^(-1/2)Phi"),
        ("certify", "Sample Parseval generators and certify optimality"),
        ("energy", "Compare the energies of two complete Parseval multi-frame generators"),
    ):
        leaf = addLeaf(approxActions, name, description)
        leaf.add_argument(
            "--generators",
            metavar="NAME",
            dest="generators",
            type=str,
            default=None,
            help="Multi-generator of the bundle, default: the first one",
        )
        if name == "certify":
            leaf.add_argument(
                "--samples",
                metavar="N",
                dest="samples",
                type=positiveInt,
                default=100,
                help="Number of sampled Parseval generators, default: %(default)s",
            )
        if name == "energy":
            leaf.add_argument(
                "--other",
                metavar="NAME",
                dest="other",
                type=str,
                required=True,
                help="Second multi-generator of the bundle",
            )

    # --- rand ---
    rand = addLeaf(commands, "rand", "Generate a seeded random instance bundle", bundle="none")
    rand.add_argument(
        "-g",
        "--group",
        metavar="GROUP",
        dest="group",
        type=str,
        default="Z3",
        help="Named group, default: %(default)s",
    )
    rand.add_argument(
        "-p",
        "--points",
        metavar="N",
        dest="points",
        type=positiveInt,
        default=2,
        help="Number of points of the spectrum, default: %(default)s",
    )
    rand.add_argument(
        "-n",
        "--generators",
        metavar="N",
        dest="generatorCount",
        type=positiveInt,
        default=2,
        help="Number of multi-frame generators, default: %(default)s",
    )
    rand.add_argument(
        "--frame-vectors",
        metavar="N",
        dest="frameVectors",
        type=positiveInt,
        default=4,
        help="Number of vectors of the random frame, default: %(default)s",
    )
    rand.add_argument(
        "--max-fiber-dim",
        metavar="N",
        dest="maxFiberDim",
        type=positiveInt,
        default=8,
        help="Largest fiber dimension, default: %(default)s",
    )

    return parser


# --- BUNDLE LOOKUPS ---


def requireBundle(bundle: Optional[InstanceBundle]) -> InstanceBundle:
    if bundle is None:
        raise ConfigurationError("this command needs a bundle")

    return bundle


def requireRepresentation(bundle: Optional[InstanceBundle]) -> UnitaryRepresentation:
    representation = requireBundle(bundle).representation

    if representation is None:
        raise ConfigurationError("the bundle has no representation", "/representation")

    return representation


def named(collection: Dict, name: Optional[str], section: str):
    if name is None:
        if not collection:
            raise ConfigurationError(f"the bundle has no {section}", f"/{section}")
        return next(iter(collection.values()))

    if name not in collection:
        raise ConfigurationError(f"the bundle has no entry {name!r}", f"/{section}")

    return collection[name]


def groupAndSpectrum(args: CliArgs, bundle: Optional[InstanceBundle]) -> Tuple[FiniteGroup, FiniteSpectrum]:
    if args.group is not None:
        group = namedGroup(args.group)
    elif bundle is not None and bundle.group is not None:
        group = bundle.group
    else:
        raise ConfigurationError("give --group or a bundle with a group")

    if args.points is not None:
        spectrum = FiniteSpectrum.numbered(args.points)
    elif bundle is not None:
        spectrum = bundle.spectrum
    else:
        spectrum = FiniteSpectrum.numbered(1)

    return group, spectrum


def relativeResidual(x: ModuleElement, residual: float) -> float:
    return residual / max(moduleNorm(x), 1.0)


# --- HANDLERS ---


def runValidate(args: CliArgs, bundle: Optional[InstanceBundle], tol: float, report: RunReport) -> None:
    bundle = requireBundle(bundle)
    report.verdicts["schema"] = True

    if bundle.representation is not None:
        for name, value in representationResiduals(bundle.representation).items():
            report.residuals[f"representation.{name}"] = value
        report.verdicts["representation"] = True

    for name, frame in bundle.frames.items():
        report.classifications[f"frames/{name}"] = frameBounds(frame, tol).label

    if bundle.representation is not None:
        for name, vector in bundle.vectors.items():
            report.classifications[f"vectors/{name}"] = classifyVector(bundle.representation, vector, tol).label

    report.payload = {
        "version": bundle.version,
        "points": len(bundle.spectrum),
        "fiber_dims": list(bundle.module.fiberDims),
        "group": bundle.group.name if bundle.group is not None else None,
        "frames": sorted(bundle.frames),
        "generators": sorted(bundle.generators),
        "vectors": sorted(bundle.vectors),
        "operators": sorted(bundle.operators),
    }


def runFrameAnalyze(args: CliArgs, bundle: Optional[InstanceBundle], tol: float, report: RunReport) -> None:
    frame: FrameSystem = named(requireBundle(bundle).frames, args.frame, "frames")
    bounds = frameBounds(frame, tol)

    report.bounds = JsonCodec.encodeBounds(bounds)
    report.classifications["frame"] = bounds.label

    x = randomModuleElement(frame.shape, np.random.default_rng(args.seed))
    lowerSlack, upperSlack = frameInequalityGap(frame, x, tol)
    scale = max(1.0, algNorm(frameSum(frame, x)))
    violation = max(0.0, -float(np.min(lowerSlack.values.real)), -float(np.min(upperSlack.values.real)))
    report.residuals["frameInequality"] = violation / scale
    report.verdicts["frameInequality"] = violation <= CLASSIFY_TOL * scale

    if bounds.isFrame:
        report.residuals["reconstruction"] = relativeResidual(x, reconstructResidual(frame, x, tol))
        report.verdicts["reconstruction"] = report.residuals["reconstruction"] <= MEMBERSHIP_TOL


def runFrameParseval(args: CliArgs, bundle: Optional[InstanceBundle], tol: float, report: RunReport) -> None:
    frame: FrameSystem = named(requireBundle(bundle).frames, args.frame, "frames")
    parseval = canonicalParseval(frame, tol)
    bounds = frameBounds(parseval, tol)

    report.bounds = JsonCodec.encodeBounds(bounds)
    report.classifications["frame"] = frameBounds(frame, tol).label
    report.classifications["canonical"] = bounds.label
    report.residuals["parsevalDefect"] = opDistance(frameOperator(parseval), ModuleOperator.identity(frame.shape))
    report.verdicts["parseval"] = report.residuals["parsevalDefect"] <= COMMUTATION_TOL
    report.payload["frame"] = JsonCodec.encodeFrame(parseval)


def runFrameDual(args: CliArgs, bundle: Optional[InstanceBundle], tol: float, report: RunReport) -> None:
    frame: FrameSystem = named(requireBundle(bundle).frames, args.frame, "frames")
    dual = canonicalDual(frame, tol)

    x = randomModuleElement(frame.shape, np.random.default_rng(args.seed))
    report.bounds = JsonCodec.encodeBounds(frameBounds(frame, tol))
    report.residuals["reconstruction"] = relativeResidual(x, reconstructResidual(frame, x, tol))
    report.verdicts["reconstruction"] = report.residuals["reconstruction"] <= MEMBERSHIP_TOL
    report.payload["dual"] = JsonCodec.encodeFrame(dual)


def runClassifyVector(args: CliArgs, bundle: Optional[InstanceBundle], tol: float, report: RunReport) -> None:
    rep = requireRepresentation(bundle)
    vector = named(bundle.vectors, args.vector, "vectors")
    classification = classifyVector(rep, vector, tol)

    report.classifications["vector"] = classification.label
    report.bounds = {"lower": classification.lower, "upper": classification.upper}
    report.payload = {
        "complete": classification.complete,
        "wandering": classification.wandering,
        "parseval": classification.parseval,
        "frame": classification.frame,
        "ranks": list(classification.ranks),
    }


def runDilate(args: CliArgs, bundle: Optional[InstanceBundle], tol: float, report: RunReport) -> None:
    rep = requireRepresentation(bundle)
    eta = named(bundle.vectors, args.vector, "vectors")

    dilation, projection = dilate(rep, eta)
    residuals = dilationResiduals(rep, eta, dilation, projection)
    report.residuals.update(residuals)
    report.verdicts["dilation"] = all(value <= DILATION_TOL for value in residuals.values())

    extension = dilationProperty(rep, eta)
    report.residuals["invariance"] = extension["invariance"]
    report.residuals["restriction"] = extension["restriction"]
    report.classifications["identityVector"] = extension["wanderingLabel"]
    report.verdicts["extension"] = bool(extension["holds"])
    report.payload["projection"] = JsonCodec.encodeOperator(projection)


def runCommutant(args: CliArgs, bundle: Optional[InstanceBundle], tol: float, report: RunReport) -> None:
    rep = requireRepresentation(bundle)
    groupCommutant = commutant(rep.images)
    groupBicommutant = bicommutant(rep.images)

    commutation = 0.0
    for operator in groupCommutant.operators():
        for image in rep.images:
            commutation = max(commutation, commutatorNorm(operator, image))

    report.residuals["commutation"] = commutation
    report.residuals["imagesInBicommutant"] = max(membershipResidual(groupBicommutant, image) for image in rep.images)
    report.verdicts["commutation"] = commutation <= COMMUTATION_TOL
    report.verdicts["imagesInBicommutant"] = report.residuals["imagesInBicommutant"] <= MEMBERSHIP_TOL
    report.payload = {
        "commutant": {"dimensions": list(groupCommutant.dimensions), "star_closed": groupCommutant.starClosed},
        "bicommutant": {"dimensions": list(groupBicommutant.dimensions), "star_closed": groupBicommutant.starClosed},
    }


def runDuality(args: CliArgs, bundle: Optional[InstanceBundle], tol: float, report: RunReport) -> None:
    group, spectrum = groupAndSpectrum(args, bundle)
    duality = checkCommutantDuality(group, spectrum, np.random.default_rng(args.seed), args.pairs)

    report.residuals.update(duality.residuals)
    report.verdicts["duality"] = duality.passed
    report.payload = {
        "group": duality.groupName,
        "dimensions": {name: list(dims) for name, dims in duality.dimensions.items()},
    }


def runTraceCheck(args: CliArgs, bundle: Optional[InstanceBundle], tol: float, report: RunReport) -> None:
    group, spectrum = groupAndSpectrum(args, bundle)
    context = regularContext(group, spectrum)
    residuals = traceResiduals(context, np.random.default_rng(args.seed), args.samples)

    report.residuals.update(residuals)
    report.verdicts["tracial"] = residuals["tracial"] <= TRACE_TOL
    report.verdicts["faithful"] = residuals["faithfulness"] <= FAITHFULNESS_TOL
    report.payload = {"group": group.name, "algebra_dimensions": list(context.algebra.dimensions)}


def runSolve(args: CliArgs, bundle: Optional[InstanceBundle], tol: float, report: RunReport) -> None:
    rep = requireRepresentation(bundle)
    eta = named(bundle.vectors, args.vector, "vectors")
    xi = named(bundle.vectors, args.target, "vectors")

    witness = solveGenerator(rep, eta, xi, seed=args.seed, kind=args.kind)

    report.residuals.update(witness.residuals)
    report.verdicts["witness"] = witness.passed
    report.classifications["kind"] = witness.kind
    report.payload["operator"] = JsonCodec.encodeOperator(witness.operator)


def runApply(args: CliArgs, bundle: Optional[InstanceBundle], tol: float, report: RunReport) -> None:
    rep = requireRepresentation(bundle)
    eta = named(bundle.vectors, args.vector, "vectors")
    algebra = bicommutant(rep.images)

    if args.operator is not None:
        operator = named(bundle.operators, args.operator, "operators")
    else:
        operator = randomUnitary(algebra, np.random.default_rng(args.seed))

    xi = applyGenerator(rep, eta, operator, args.kind, algebra)

    report.residuals["membership"] = membershipResidual(algebra, operator)
    report.classifications["xi"] = classifyVector(rep, xi, tol).label
    report.verdicts["generated"] = True
    report.payload = {"operator": JsonCodec.encodeOperator(operator), "xi": JsonCodec.encodeElement(xi)}


def runPath(args: CliArgs, bundle: Optional[InstanceBundle], tol: float, report: RunReport) -> None:
    rep = requireRepresentation(bundle)
    eta = named(bundle.vectors, args.vector, "vectors")
    xi = named(bundle.vectors, args.target, "vectors")

    path = connectParsevalVectors(
        rep, eta, xi, steps=args.steps, seed=args.seed, onBranchCut="raise" if args.strictBranch else "snap"
    )

    report.residuals.update(path.residuals)
    for name, value in path.witness.residuals.items():
        report.residuals[f"witness.{name}"] = value
    report.verdicts["path"] = path.passed
    report.payload = {
        "parameters": list(path.parameters),
        "labels": list(path.labels),
        "points": [JsonCodec.encodeElement(point) for point in path.points],
    }


def runBest(args: CliArgs, bundle: Optional[InstanceBundle], tol: float, report: RunReport) -> None:
    rep = requireRepresentation(bundle)
    generators: MultiGenerator = named(bundle.generators, args.generators, "generators")

    result = bestParsevalApprox(rep, generators)

    report.residuals.update(result.residuals)
    report.verdicts["checks"] = result.checksPassed
    report.payload["best"] = JsonCodec.encodeGenerators(result.best)


def runCertify(args: CliArgs, bundle: Optional[InstanceBundle], tol: float, report: RunReport) -> None:
    rep = requireRepresentation(bundle)
    generators: MultiGenerator = named(bundle.generators, args.generators, "generators")

    result = certifyOptimality(rep, generators, samples=args.samples, seed=args.seed)

    report.residuals.update(result.residuals)
    report.verdicts["checks"] = result.checksPassed
    report.verdicts["uniqueness"] = result.uniqueness
    report.verdicts["optimal"] = not result.counterexamples
    report.payload = {
        "best": JsonCodec.encodeGenerators(result.best),
        "gaps": JsonCodec.summarize(result.gaps),
        "modes": {mode: result.modes.count(mode) for mode in dict.fromkeys(result.modes)},
        "counterexamples": list(result.counterexamples),
    }


def runEnergy(args: CliArgs, bundle: Optional[InstanceBundle], tol: float, report: RunReport) -> None:
    rep = requireRepresentation(bundle)
    first: MultiGenerator = named(bundle.generators, args.generators, "generators")
    second: MultiGenerator = named(bundle.generators, args.other, "generators")

    firstEnergy, secondEnergy, residual = checkEnergyEquality(rep, first, second)
    scale = max(1.0, algNorm(firstEnergy))

    report.residuals["energy"] = residual
    report.verdicts["energy"] = residual <= ENERGY_TOL * scale
    report.payload = {
        "first": JsonCodec.encodeAlgebraElement(firstEnergy),
        "second": JsonCodec.encodeAlgebraElement(secondEnergy),
    }


HANDLERS: Dict[Tuple[str, Optional[str]], Handler] = {
    ("validate", None): runValidate,
    ("frame", "analyze"): runFrameAnalyze,
    ("frame", "parseval"): runFrameParseval,
    ("frame", "dual"): runFrameDual,
    ("group", "classify-vector"): runClassifyVector,
    ("group", "dilate"): runDilate,
    ("commutant", "compute"): runCommutant,
    ("commutant", "lemma33"): runDuality,
    ("commutant", "trace-check"): runTraceCheck,
    ("param", "solve"): runSolve,
    ("param", "apply"): runApply,
    ("param", "path"): runPath,
    ("approx", "best"): runBest,
    ("approx", "certify"): runCertify,
    ("approx", "energy"): runEnergy,
}


# --- ORCHESTRATION ---


def runRand(args: CliArgs) -> int:
    spec = RandSpec(
        seed=args.seed,
        points=args.points if args.points is not None else 2,
        group=args.group or "Z3",
        generators=args.generatorCount,
        frameVectors=args.frameVectors,
        maxFiberDim=args.maxFiberDim,
    )
    bundle = InstanceGenerator.randInstance(spec)

    if args.outputPath:
        BundleIO.saveBundle(bundle, Path(args.outputPath))
        printStatus(f"wrote {spec.group} instance with fiber dims {list(bundle.module.fiberDims)} to {args.outputPath}")
    else:
        sys.stdout.write(BundleIO.dumps(BundleIO.encodeBundle(bundle)))
        sys.stdout.flush()

    return EXIT_PASS


def runCommand(args: CliArgs) -> int:
    """Runs one parsed command and returns its exit code."""

    try:
        tol = args.tol if args.tol is not None else getDefaultTolerance()

        if args.command == "rand":
            return runRand(args)

        action = ACTION_ALIASES.get(args.action, args.action)
        handler = HANDLERS[(args.command, action)]

        bundle = None
        digest = None
        if args.bundle is not None:
            data = Path(args.bundle).read_bytes()
            digest = BundleIO.digest(data)
            bundle = BundleIO.parseBundle(data)

        report = RunReport(command=" ".join(filter(None, (args.command, action))), inputsDigest=digest)

        start = time.perf_counter()
        try:
            handler(args, bundle, tol, report)
        except MathError as error:
            report.errors.append(f"{type(error).__name__}: {error}")
        report.wallTime = time.perf_counter() - start

        writeReport(args, report)
    except (InputError, OSError) as error:
        printError(str(error), context=type(error).__name__)
        return EXIT_INPUT_ERROR

    return EXIT_PASS if report.passed else EXIT_MATH_FAILURE


def writeReport(args: CliArgs, report: RunReport) -> None:
    writers: List[Writer] = [ConsoleWriter(showColors=not args.noColor)]

    if args.outputPath:
        writers.append(FileWriter(outputFile=open(args.outputPath, "w", encoding="utf-8")))

    try:
        for writer in writers:
            writer.writeReport(report, args.format, includeTiming=args.timing)
    finally:
        for writer in writers:
            writer.close()


def main(argv: Optional[List[str]] = None) -> int:
    """
    Main entry point of modframe.

    This function is responsible for:

    - Parsing command-line arguments
    - Loading and validating the instance bundle
    - Running the requested computation
    - Writing the report to the console and, with --out, to a file
    """

    parser = getArgParser()
    args = parser.parse_args(argv)

    args = CliArgs(**vars(args))
    status.SHOW_COLORS = not args.noColor

    try:
        return runCommand(args)
    except KeyboardInterrupt:
        print(f"\n{Path(parser.prog).stem} stopped by user!", file=sys.stderr)
        return EXIT_INTERRUPTED


if __name__ == "__main__":
    sys.exit(main())
