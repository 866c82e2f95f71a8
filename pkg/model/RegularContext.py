from typing import Tuple
from dataclasses import dataclass

from model.FiniteGroup import FiniteGroup
from model.ModuleShape import ModuleShape
from model.ModuleElement import ModuleElement
from model.OperatorAlgebraBasis import OperatorAlgebraBasis
from model.UnitaryRepresentation import UnitaryRepresentation


@dataclass(frozen=True, eq=False)
class RegularContext:
    """
    The group module ℓ²_G(A) with everything the π-map and the trace need.

    Attributes:
        group (FiniteGroup): G.
        shape (ModuleShape): ℓ²_G(A), fiber dimension |G| everywhere.
        chi (tuple[ModuleElement, ...]): The basis χ_U in element order.
        left (UnitaryRepresentation): L.
        right (UnitaryRepresentation): R.
        algebra (OperatorAlgebraBasis): M = {L}'', the span of the L_U.
        commutantAlgebra (OperatorAlgebraBasis): M' = {L}', the span of the R_U.
    """

    group: FiniteGroup
    shape: ModuleShape
    chi: Tuple[ModuleElement, ...]
    left: UnitaryRepresentation
    right: UnitaryRepresentation
    algebra: OperatorAlgebraBasis
    commutantAlgebra: OperatorAlgebraBasis

    @property
    def identityVector(self) -> ModuleElement:
        """χ_I."""

        return self.chi[self.group.identity]
