from typing import Tuple
from dataclasses import dataclass

from model.FiniteGroup import FiniteGroup
from model.ModuleShape import ModuleShape
from model.ModuleOperator import ModuleOperator

from utils.errors import RepresentationError


@dataclass(frozen=True, eq=False)
class UnitaryRepresentation:
    """
    A homomorphism from a finite group into the unitaries of a module.

    images[g] is the operator of group.elements[g]. The axioms (unitarity, homomorphism,
    identity) are checked by engine.groupSystem.validateRepresentation.
    """

    group: FiniteGroup
    shape: ModuleShape
    images: Tuple[ModuleOperator, ...]

    def __post_init__(self) -> None:
        images = tuple(self.images)

        if len(images) != self.group.order:
            raise RepresentationError(f"expected {self.group.order} images, got {len(images)}")

        for element, image in zip(self.group.elements, images):
            if image.domainShape != self.shape or image.codomainShape != self.shape:
                raise RepresentationError(f"image of {element} does not act on the representation module")

        object.__setattr__(self, "images", images)

    def image(self, label: str) -> ModuleOperator:
        return self.images[self.group.index(label)]

    def __len__(self) -> int:
        return len(self.images)

    def __iter__(self):
        return iter(self.images)
