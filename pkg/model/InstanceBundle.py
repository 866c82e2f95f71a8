from typing import Any
from typing import Dict
from typing import Optional
from dataclasses import field
from dataclasses import dataclass

from model.FiniteGroup import FiniteGroup
from model.ModuleShape import ModuleShape
from model.FrameSystem import FrameSystem
from model.ModuleElement import ModuleElement
from model.FiniteSpectrum import FiniteSpectrum
from model.MultiGenerator import MultiGenerator
from model.ModuleOperator import ModuleOperator
from model.UnitaryRepresentation import UnitaryRepresentation

from utils.config import SCHEMA_VERSION


@dataclass(eq=False)
class InstanceBundle:
    """Everything one run works on: the module, an optional group action and named inputs."""

    spectrum: FiniteSpectrum
    module: ModuleShape
    group: Optional[FiniteGroup] = None
    representation: Optional[UnitaryRepresentation] = None
    frames: Dict[str, FrameSystem] = field(default_factory=dict)
    generators: Dict[str, MultiGenerator] = field(default_factory=dict)
    vectors: Dict[str, ModuleElement] = field(default_factory=dict)
    operators: Dict[str, ModuleOperator] = field(default_factory=dict)
    metadata: Dict[str, Any] = field(default_factory=dict)
    version: str = SCHEMA_VERSION
    seed: Optional[int] = None
