from dataclasses import dataclass

from model.AlgebraElement import AlgebraElement

PARSEVAL = "parseval"
TIGHT = "tight"
FRAME = "frame"
BESSEL = "bessel"


@dataclass(frozen=True)
class FrameBounds:
    """
    Optimal frame bounds, as scalars and as functions on the spectrum.

    Attributes:
        lower (float): C, the smallest fiber eigenvalue of the frame operator.
        upper (float): D, the largest fiber eigenvalue of the frame operator.
        lowerFn (AlgebraElement): Smallest eigenvalue per point (0 on empty fibers).
        upperFn (AlgebraElement): Largest eigenvalue per point (0 on empty fibers).
        isFrame (bool): C > tol.
        isTight (bool): (D - C) / D <= CLASSIFY_TOL.
        isParseval (bool): ||S - I|| <= CLASSIFY_TOL·max(1, ||S||).
    """

    lower: float
    upper: float
    lowerFn: AlgebraElement
    upperFn: AlgebraElement
    isFrame: bool
    isTight: bool
    isParseval: bool

    @property
    def label(self) -> str:
        if self.isParseval:
            return PARSEVAL

        if self.isFrame and self.isTight:
            return TIGHT

        return FRAME if self.isFrame else BESSEL
