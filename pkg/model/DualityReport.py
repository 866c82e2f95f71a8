from typing import Dict
from typing import Tuple
from dataclasses import dataclass


@dataclass(frozen=True)
class DualityReport:
    """
    Outcome of comparing {L}'' with {R}' and {R}'' with {L}' on ℓ²_G(A).

    Attributes:
        groupName (str): The group checked.
        dimensions (dict[str, tuple[int, ...]]): Per-fiber dimension of each of the four spaces.
        residuals (dict[str, float]): Worst mutual membership residuals and the commutation residual.
        passed (bool): Spans equal both ways, dimensions agree and the commutation check holds.
    """

    groupName: str
    dimensions: Dict[str, Tuple[int, ...]]
    residuals: Dict[str, float]
    passed: bool
