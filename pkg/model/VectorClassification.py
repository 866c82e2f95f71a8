from typing import Tuple
from dataclasses import dataclass

COMPLETE_WANDERING = "complete wandering"
WANDERING = "wandering"
COMPLETE_PARSEVAL = "complete Parseval frame vector"
PARSEVAL = "Parseval frame vector"
COMPLETE_FRAME = "complete frame vector"
FRAME = "frame vector"
COMPLETE_BESSEL = "complete Bessel"
BESSEL = "Bessel"
NONE = "none"

# strongest first
LABELS = (
    COMPLETE_WANDERING,
    WANDERING,
    COMPLETE_PARSEVAL,
    PARSEVAL,
    COMPLETE_FRAME,
    FRAME,
    COMPLETE_BESSEL,
    BESSEL,
    NONE,
)


@dataclass(frozen=True)
class VectorClassification:
    """
    What the orbit {U x : U in G} of a vector is.

    Attributes:
        label (str): The strongest label that applies, one of LABELS.
        complete (bool): The orbit spans every fiber.
        wandering (bool): The orbit is orthonormal.
        parseval (bool): The orbit is a Parseval frame for its span.
        frame (bool): The orbit is a frame for its span (the zero vector is not).
        lower (float): C, the lower frame bound on the orbit span.
        upper (float): D, the upper frame bound.
        ranks (tuple[int, ...]): Orbit span dimension per point.
    """

    label: str
    complete: bool
    wandering: bool
    parseval: bool
    frame: bool
    lower: float
    upper: float
    ranks: Tuple[int, ...]

    def satisfies(self, label: str) -> bool:
        """True when the vector has the property named by label (every finite orbit is Bessel)."""

        if label not in LABELS:
            raise ValueError(f"unknown label {label!r}")

        if label == NONE:
            return self.label == NONE

        if label in (COMPLETE_BESSEL, BESSEL):
            return True

        if label.startswith("complete") and not self.complete:
            return False

        if label in (COMPLETE_WANDERING, WANDERING):
            return self.wandering

        if label in (COMPLETE_PARSEVAL, PARSEVAL):
            return self.parseval

        return self.frame
