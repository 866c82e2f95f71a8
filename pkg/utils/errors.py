from typing import Optional


class ModframeError(Exception):
    """Base class for every error raised by modframe."""


# --- INPUT ERRORS (exit code 2) ---


class InputError(ModframeError):
    """The user supplied something unusable: a file, a flag or an instance size."""

    def __init__(self, message: str, location: Optional[str] = None) -> None:
        self.location = location
        super().__init__(f"{location}: {message}" if location else message)


class BundleParseError(InputError):
    """The bundle file is not valid JSON."""


class SchemaError(InputError):
    """The bundle is valid JSON but does not follow the schema."""


class BundleValidationError(InputError):
    """The bundle parsed but one of its mathematical validations failed."""


class CapsExceededError(InputError):
    """A random instance request is larger than the documented caps."""


class ConfigurationError(InputError):
    """A configuration value (flag or environment variable) is invalid."""


# --- MATHEMATICAL ERRORS (exit code 1) ---


class MathError(ModframeError):
    """A precondition of a mathematical operation does not hold."""


class SpectrumMismatchError(MathError):
    pass


class ShapeMismatchError(MathError):
    pass


class NotHermitianError(MathError):
    pass


class EigenvalueFloorError(MathError):
    pass


class BranchCutError(MathError):
    """A unitary has an eigenvalue on the branch cut of the principal logarithm."""


class NotAFrameError(MathError):
    pass


class PreconditionError(MathError):
    pass


class MembershipError(MathError):
    """An operator is not in the operator algebra it is supposed to belong to."""


class DegenerateBasisError(MathError):
    pass


class ProjectionEquivalenceError(MathError):
    """No partial isometry implementing the requested projection equivalence was found."""


class GroupAxiomError(MathError):
    pass


class RepresentationError(MathError):
    pass


class MathCheckError(MathError):
    """A computed result failed its own verification."""
