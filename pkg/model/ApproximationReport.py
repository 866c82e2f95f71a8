from typing import Dict
from typing import Tuple
from dataclasses import field
from dataclasses import dataclass

from model.AlgebraElement import AlgebraElement
from model.MultiGenerator import MultiGenerator


@dataclass(frozen=True, eq=False)
class ApproximationReport:
    """
    The best Parseval multi-frame approximation S^(-1/2)Φ and, when certified, the sampled evidence.

    Attributes:
        best (MultiGenerator): S^(-1/2)Φ.
        residuals (dict[str, float]): Commutation of S with the group, Parseval defect of the result,
            and for certification the smallest gap and the worst cross-term identity residual.
        gaps (tuple[AlgebraElement, ...]): Per sample, sum<φ-ψ, φ-ψ> - sum<φ-best, φ-best>.
        modes (tuple[str, ...]): How each sample was drawn: "control", "unitary" or "canonical".
        uniqueness (bool): Every sample with a vanishing gap coincides with best.
        counterexamples (tuple[int, ...]): Indices of samples with a negative gap or a uniqueness violation.
        checksPassed (bool): S commutes with the group and the orbit of best is Parseval.
    """

    best: MultiGenerator
    residuals: Dict[str, float]
    gaps: Tuple[AlgebraElement, ...] = field(default_factory=tuple)
    modes: Tuple[str, ...] = field(default_factory=tuple)
    uniqueness: bool = True
    counterexamples: Tuple[int, ...] = field(default_factory=tuple)
    checksPassed: bool = True

    @property
    def passed(self) -> bool:
        return self.checksPassed and self.uniqueness and not self.counterexamples
