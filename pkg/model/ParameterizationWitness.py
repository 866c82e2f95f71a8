from typing import Dict
from dataclasses import dataclass

from model.ModuleOperator import ModuleOperator

UNITARY = "unitary"
INVERTIBLE = "invertible"
ADJOINTABLE = "adjointable"

KINDS = (UNITARY, INVERTIBLE, ADJOINTABLE)


@dataclass(frozen=True, eq=False)
class ParameterizationWitness:
    """
    An operator A in G'' with A η = ξ, as found by engine.parametrize.solveGenerator.

    Attributes:
        operator (ModuleOperator): A, acting on the representation module.
        kind (str): One of KINDS.
        residuals (dict[str, float]): "membership", "generation" and the kind check
            ("unitarity" or "minSingularValue"), plus the checks of the dilated construction.
        passed (bool): Every residual is within its tolerance.
    """

    operator: ModuleOperator
    kind: str
    residuals: Dict[str, float]
    passed: bool
