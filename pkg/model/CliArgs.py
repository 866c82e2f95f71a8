from typing import Optional
from dataclasses import dataclass

from utils.config import PATH_STEPS
from utils.config import MAX_FIBER_DIM
from utils.config import DEFAULT_SAMPLES


@dataclass
class CliArgs:
    """Parsed command line of one modframe run; subcommands only set the fields they define."""

    command: str
    action: Optional[str] = None
    bundle: Optional[str] = None
    tol: Optional[float] = None
    seed: int = 0
    outputPath: Optional[str] = None
    format: str = "json"
    noColor: bool = False
    timing: bool = False
    frame: Optional[str] = None
    generators: Optional[str] = None
    other: Optional[str] = None
    vector: str = "eta"
    target: str = "xi"
    operator: Optional[str] = None
    kind: str = "unitary"
    steps: int = PATH_STEPS
    samples: int = DEFAULT_SAMPLES
    pairs: int = 8
    strictBranch: bool = False
    group: Optional[str] = None
    points: Optional[int] = None
    generatorCount: int = 2
    frameVectors: int = 4
    maxFiberDim: int = MAX_FIBER_DIM
