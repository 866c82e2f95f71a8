from typing import Dict
from typing import Tuple
from dataclasses import dataclass

from model.ModuleElement import ModuleElement
from model.ParameterizationWitness import ParameterizationWitness


@dataclass(frozen=True, eq=False)
class ParsevalPath:
    """
    Points exp(sK) η of a path of complete Parseval frame vectors from η to ξ.

    Attributes:
        parameters (tuple[float, ...]): s = 0, 1/steps, ..., 1.
        points (tuple[ModuleElement, ...]): The vectors along the path.
        labels (tuple[str, ...]): Classification of every point.
        residuals (dict[str, float]): Worst membership of exp(sK) in G'' and the endpoint error.
        witness (ParameterizationWitness): The unitary the path is the logarithm of.
        passed (bool): Every point is a complete Parseval frame vector and the residuals are in tolerance.
    """

    parameters: Tuple[float, ...]
    points: Tuple[ModuleElement, ...]
    labels: Tuple[str, ...]
    residuals: Dict[str, float]
    witness: ParameterizationWitness
    passed: bool
