from typing import Any
from typing import Dict
from typing import List
from typing import Optional
from dataclasses import field
from dataclasses import dataclass


@dataclass
class RunReport:
    """
    What a CLI command found.

    Attributes:
        command (str): The subcommand, e.g. "frame analyze".
        inputsDigest (str, optional): SHA-256 of the bundle file bytes.
        verdicts (dict[str, bool]): Named pass/fail checks.
        residuals (dict[str, float]): Named numerical residuals.
        classifications (dict[str, str]): Named classification labels.
        bounds (dict[str, Any]): Frame bounds, scalar and per point.
        payload (dict[str, Any]): Command specific results, already JSON-ready.
        errors (list[str]): Mathematical errors that stopped part of the command.
        wallTime (float, optional): Seconds spent, emitted only on request.
    """

    command: str
    inputsDigest: Optional[str] = None
    verdicts: Dict[str, bool] = field(default_factory=dict)
    residuals: Dict[str, float] = field(default_factory=dict)
    classifications: Dict[str, str] = field(default_factory=dict)
    bounds: Dict[str, Any] = field(default_factory=dict)
    payload: Dict[str, Any] = field(default_factory=dict)
    errors: List[str] = field(default_factory=list)
    wallTime: Optional[float] = None

    @property
    def passed(self) -> bool:
        return not self.errors and all(self.verdicts.values())
