import os

from utils.errors import ConfigurationError

# --- TOLERANCES ---
DEFAULT_TOL = 1e-9
EIGEN_FLOOR = 1e-8
RANK_CUTOFF = 1e-8
MEMBERSHIP_TOL = 1e-8
CLASSIFY_TOL = 1e-8
UNITARY_TOL = 1e-8
COMMUTATION_TOL = 1e-9
HERMITIAN_TOL = 1e-10
BRANCH_TOL = 1e-8
PATH_TOL = 1e-7
UNIQUENESS_GAP = 1e-10
UNIQUENESS_DISTANCE = 1e-6

# --- ALGORITHM KNOBS ---
PATH_STEPS = 16
RETRY_BUDGET = 16
DEFAULT_SAMPLES = 100

# --- SERIALIZATION ---
SCHEMA_VERSION = "1"
TOL_ENV_VAR = "MODFRAME_TOL"

# --- RANDOM INSTANCE CAPS ---
MAX_POINTS = 8
MAX_FIBER_DIM = 8
MAX_GROUP_ORDER = 24
MAX_GENERATORS = 4


def getDefaultTolerance() -> float:
    """Returns the positivity tolerance, honoring the MODFRAME_TOL environment variable."""

    rawValue = os.environ.get(TOL_ENV_VAR)

    if rawValue is None or not rawValue.strip():
        return DEFAULT_TOL

    try:
        tolerance = float(rawValue)
    except ValueError:
        raise ConfigurationError(f"{TOL_ENV_VAR}={rawValue!r} is not a number")

    if not tolerance > 0:
        raise ConfigurationError(f"{TOL_ENV_VAR} must be positive, got {tolerance}")

    return tolerance
