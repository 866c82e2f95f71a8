import math
import numpy as np

from typing import Any
from typing import Dict
from typing import List
from typing import Optional
from typing import Sequence

from model.RunReport import RunReport
from model.FiniteGroup import FiniteGroup
from model.ModuleShape import ModuleShape
from model.FrameBounds import FrameBounds
from model.FrameSystem import FrameSystem
from model.ModuleElement import ModuleElement
from model.AlgebraElement import AlgebraElement
from model.FiniteSpectrum import FiniteSpectrum
from model.MultiGenerator import MultiGenerator
from model.ModuleOperator import ModuleOperator
from model.UnitaryRepresentation import UnitaryRepresentation

from utils.errors import SchemaError
from utils.errors import GroupAxiomError
from utils.errors import ShapeMismatchError
from utils.errors import RepresentationError
from utils.errors import BundleValidationError


class JsonCodec:
    """
    Converts between the model types and their JSON documents.

    Complex numbers are [re, im] pairs, matrices are row-major and every per-point list follows the
    spectrum order. Decoders take the JSON pointer of the document they read and raise SchemaError
    located at the offending entry.
    """

    # --- SCALARS ---

    @staticmethod
    def number(value: float) -> Any:
        """A JSON-safe float: non-finite values become the strings "inf", "-inf" and "nan"."""

        value = float(value)

        return value if math.isfinite(value) else str(value)

    @staticmethod
    def encodeComplex(value: complex) -> List[float]:
        value = complex(value)

        return [JsonCodec.number(value.real), JsonCodec.number(value.imag)]

    @staticmethod
    def decodeComplex(data: Any, pointer: str) -> complex:
        if isinstance(data, bool):
            raise SchemaError("expected a number or an [re, im] pair", pointer)

        if isinstance(data, (int, float)):
            value = complex(data)
        elif isinstance(data, list) and len(data) == 2 and all(
            isinstance(part, (int, float)) and not isinstance(part, bool) for part in data
        ):
            value = complex(data[0], data[1])
        else:
            raise SchemaError("expected a number or an [re, im] pair", pointer)

        if not (math.isfinite(value.real) and math.isfinite(value.imag)):
            raise SchemaError("the entry is not finite", pointer)

        return value

    @staticmethod
    def _list(data: Any, pointer: str, length: Optional[int] = None) -> list:
        if not isinstance(data, list):
            raise SchemaError("expected a list", pointer)

        if length is not None and len(data) != length:
            raise SchemaError(f"expected {length} entries, got {len(data)}", pointer)

        return data

    @staticmethod
    def _object(data: Any, pointer: str) -> dict:
        if not isinstance(data, dict):
            raise SchemaError("expected an object", pointer)

        return data

    @staticmethod
    def _field(data: dict, key: str, pointer: str) -> Any:
        if key not in data:
            raise SchemaError(f"missing field {key!r}", pointer)

        return data[key]

    # --- ALGEBRA AND MODULES ---

    @staticmethod
    def encodeSpectrum(spectrum: FiniteSpectrum) -> List[str]:
        return list(spectrum.points)

    @staticmethod
    def decodeSpectrum(data: Any, pointer: str) -> FiniteSpectrum:
        labels = JsonCodec._list(data, pointer)

        if not all(isinstance(label, str) for label in labels):
            raise SchemaError("spectrum labels must be strings", pointer)

        try:
            return FiniteSpectrum.of(labels)
        except ValueError as error:
            raise SchemaError(str(error), pointer)

    @staticmethod
    def encodeAlgebraElement(element: AlgebraElement) -> Dict[str, Any]:
        return {
            "spectrum": JsonCodec.encodeSpectrum(element.spectrum),
            "values": [JsonCodec.encodeComplex(value) for value in element.values],
        }

    @staticmethod
    def decodeAlgebraElement(data: Any, pointer: str) -> AlgebraElement:
        data = JsonCodec._object(data, pointer)
        spectrum = JsonCodec.decodeSpectrum(JsonCodec._field(data, "spectrum", pointer), f"{pointer}/spectrum")
        values = JsonCodec._list(JsonCodec._field(data, "values", pointer), f"{pointer}/values", len(spectrum))

        decoded = [JsonCodec.decodeComplex(value, f"{pointer}/values/{i}") for i, value in enumerate(values)]

        return AlgebraElement(spectrum, np.array(decoded))

    @staticmethod
    def encodeShape(shape: ModuleShape) -> Dict[str, Any]:
        return {"spectrum": JsonCodec.encodeSpectrum(shape.spectrum), "fiber_dims": list(shape.fiberDims)}

    @staticmethod
    def decodeShape(data: Any, pointer: str, spectrum: Optional[FiniteSpectrum] = None) -> ModuleShape:
        """Reads a module shape; its spectrum may be omitted when the surrounding document fixes it."""

        data = JsonCodec._object(data, pointer)

        if "spectrum" in data:
            ownSpectrum = JsonCodec.decodeSpectrum(data["spectrum"], f"{pointer}/spectrum")
            if spectrum is not None and ownSpectrum != spectrum:
                raise SchemaError("the module spectrum differs from the bundle spectrum", f"{pointer}/spectrum")
            spectrum = ownSpectrum

        if spectrum is None:
            raise SchemaError("missing field 'spectrum'", pointer)

        dims = JsonCodec._list(JsonCodec._field(data, "fiber_dims", pointer), f"{pointer}/fiber_dims", len(spectrum))
        if not all(isinstance(dim, int) and not isinstance(dim, bool) for dim in dims):
            raise SchemaError("fiber dimensions must be integers", f"{pointer}/fiber_dims")

        try:
            return ModuleShape.of(spectrum, dims)
        except ValueError as error:
            raise SchemaError(str(error), f"{pointer}/fiber_dims")

    @staticmethod
    def encodeElement(element: ModuleElement) -> Dict[str, Any]:
        return {"fibers": [[JsonCodec.encodeComplex(value) for value in fiber] for fiber in element.fibers]}

    @staticmethod
    def decodeElement(data: Any, shape: ModuleShape, pointer: str) -> ModuleElement:
        data = JsonCodec._object(data, pointer)
        fibers = JsonCodec._list(JsonCodec._field(data, "fibers", pointer), f"{pointer}/fibers", len(shape))

        decoded = []
        for point, (fiber, dim) in enumerate(zip(fibers, shape.fiberDims)):
            location = f"{pointer}/fibers/{point}"
            entries = JsonCodec._list(fiber, location, dim)
            values = [JsonCodec.decodeComplex(entry, f"{location}/{i}") for i, entry in enumerate(entries)]
            decoded.append(np.array(values))

        return ModuleElement(shape, tuple(decoded))

    @staticmethod
    def encodeOperator(operator: ModuleOperator) -> Dict[str, Any]:
        return {
            "fibers": [
                [[JsonCodec.encodeComplex(value) for value in row] for row in matrix] for matrix in operator.fibers
            ]
        }

    @staticmethod
    def decodeOperator(data: Any, domain: ModuleShape, codomain: ModuleShape, pointer: str) -> ModuleOperator:
        data = JsonCodec._object(data, pointer)
        fibers = JsonCodec._list(JsonCodec._field(data, "fibers", pointer), f"{pointer}/fibers", len(domain))

        decoded = []
        dims = zip(fibers, codomain.fiberDims, domain.fiberDims)
        for point, (matrix, rows, columns) in enumerate(dims):
            location = f"{pointer}/fibers/{point}"
            matrixRows = JsonCodec._list(matrix, location, rows)

            values = np.zeros((rows, columns), dtype=np.complex128)
            for i, row in enumerate(matrixRows):
                entries = JsonCodec._list(row, f"{location}/{i}", columns)
                for j, entry in enumerate(entries):
                    values[i, j] = JsonCodec.decodeComplex(entry, f"{location}/{i}/{j}")
            decoded.append(values)

        return ModuleOperator(domain, codomain, tuple(decoded))

    # --- FRAMES ---

    @staticmethod
    def encodeFrame(frame: FrameSystem) -> Dict[str, Any]:
        return {
            "module": JsonCodec.encodeShape(frame.shape),
            "vectors": [JsonCodec.encodeElement(vector) for vector in frame.vectors],
        }

    @staticmethod
    def decodeFrame(data: Any, pointer: str, shape: Optional[ModuleShape] = None) -> FrameSystem:
        data = JsonCodec._object(data, pointer)

        if "module" in data:
            ownShape = JsonCodec.decodeShape(data["module"], f"{pointer}/module", shape.spectrum if shape else None)
            if shape is not None and ownShape != shape:
                raise SchemaError("the frame module differs from the bundle module", f"{pointer}/module")
            shape = ownShape

        if shape is None:
            raise SchemaError("missing field 'module'", pointer)

        vectors = JsonCodec._list(JsonCodec._field(data, "vectors", pointer), f"{pointer}/vectors")
        if not vectors:
            raise SchemaError("a frame needs at least one vector", f"{pointer}/vectors")

        return FrameSystem(
            shape, tuple(JsonCodec.decodeElement(v, shape, f"{pointer}/vectors/{i}") for i, v in enumerate(vectors))
        )

    @staticmethod
    def encodeGenerators(generators: MultiGenerator) -> List[Dict[str, Any]]:
        return [JsonCodec.encodeElement(generator) for generator in generators]

    @staticmethod
    def decodeGenerators(data: Any, shape: ModuleShape, pointer: str) -> MultiGenerator:
        entries = JsonCodec._list(data, pointer)

        if not entries:
            raise SchemaError("a multi-generator needs at least one generator", pointer)

        return MultiGenerator(tuple(JsonCodec.decodeElement(e, shape, f"{pointer}/{i}") for i, e in enumerate(entries)))

    @staticmethod
    def encodeBounds(bounds: FrameBounds) -> Dict[str, Any]:
        return {
            "lower": JsonCodec.number(bounds.lower),
            "upper": JsonCodec.number(bounds.upper),
            "lower_fn": [JsonCodec.number(value.real) for value in bounds.lowerFn.values],
            "upper_fn": [JsonCodec.number(value.real) for value in bounds.upperFn.values],
            "classification": bounds.label,
        }

    # --- GROUPS ---

    @staticmethod
    def encodeGroup(group: FiniteGroup) -> Dict[str, Any]:
        return {"name": group.name, "elements": list(group.elements), "table": [list(row) for row in group.table]}

    @staticmethod
    def decodeGroup(data: Any, pointer: str) -> FiniteGroup:
        """Reads a Cayley table whose entries are element indices or element labels."""

        data = JsonCodec._object(data, pointer)
        elements = JsonCodec._list(JsonCodec._field(data, "elements", pointer), f"{pointer}/elements")
        if not all(isinstance(element, str) for element in elements):
            raise SchemaError("element labels must be strings", f"{pointer}/elements")

        rows = JsonCodec._list(JsonCodec._field(data, "table", pointer), f"{pointer}/table", len(elements))
        index = {label: position for position, label in enumerate(elements)}

        table = []
        for i, row in enumerate(rows):
            entries = JsonCodec._list(row, f"{pointer}/table/{i}", len(elements))
            decodedRow = []
            for j, entry in enumerate(entries):
                if isinstance(entry, str) and entry in index:
                    decodedRow.append(index[entry])
                elif isinstance(entry, int) and not isinstance(entry, bool):
                    decodedRow.append(entry)
                else:
                    raise SchemaError(f"{entry!r} is not an element", f"{pointer}/table/{i}/{j}")
            table.append(tuple(decodedRow))

        name = data.get("name", "G")
        try:
            return FiniteGroup(str(name), tuple(elements), tuple(table))
        except GroupAxiomError as error:
            raise BundleValidationError(str(error), f"{pointer}/table")

    @staticmethod
    def encodeRepresentation(rep: UnitaryRepresentation) -> Dict[str, Any]:
        return {
            "group": JsonCodec.encodeGroup(rep.group),
            "module": JsonCodec.encodeShape(rep.shape),
            "images": {label: JsonCodec.encodeOperator(image) for label, image in zip(rep.group.elements, rep.images)},
        }

    @staticmethod
    def decodeRepresentation(
        data: Any, pointer: str, group: Optional[FiniteGroup] = None, shape: Optional[ModuleShape] = None
    ) -> UnitaryRepresentation:
        data = JsonCodec._object(data, pointer)

        if "group" in data:
            ownGroup = JsonCodec.decodeGroup(data["group"], f"{pointer}/group")
            if group is not None and ownGroup.table != group.table:
                raise SchemaError("the representation group differs from the bundle group", f"{pointer}/group")
            group = ownGroup

        if group is None:
            raise SchemaError("a representation needs a group", pointer)

        if "module" in data:
            ownShape = JsonCodec.decodeShape(data["module"], f"{pointer}/module", shape.spectrum if shape else None)
            if shape is not None and ownShape != shape:
                raise SchemaError("the representation module differs from the bundle module", f"{pointer}/module")
            shape = ownShape

        if shape is None:
            raise SchemaError("missing field 'module'", pointer)

        images = JsonCodec._object(JsonCodec._field(data, "images", pointer), f"{pointer}/images")
        missing = [label for label in group.elements if label not in images]
        extra = [label for label in images if label not in group.elements]
        if missing or extra:
            message = f"images must cover the group exactly (missing {missing}, unknown {extra})"
            raise SchemaError(message, f"{pointer}/images")

        decoded = tuple(
            JsonCodec.decodeOperator(images[label], shape, shape, f"{pointer}/images/{label}")
            for label in group.elements
        )

        try:
            return UnitaryRepresentation(group, shape, decoded)
        except (RepresentationError, ShapeMismatchError) as error:
            raise BundleValidationError(str(error), f"{pointer}/images")

    # --- REPORTS ---

    @staticmethod
    def _jsonReady(value: Any) -> Any:
        if isinstance(value, dict):
            return {str(key): JsonCodec._jsonReady(item) for key, item in value.items()}

        if isinstance(value, (list, tuple)):
            return [JsonCodec._jsonReady(item) for item in value]

        if isinstance(value, (bool, np.bool_)):
            return bool(value)

        if isinstance(value, (int, np.integer)):
            return int(value)

        if isinstance(value, (float, np.floating)):
            return JsonCodec.number(value)

        if isinstance(value, (complex, np.complexfloating)):
            return JsonCodec.encodeComplex(value)

        return value

    @staticmethod
    def encodeReport(report: RunReport, includeTiming: bool = False) -> Dict[str, Any]:
        document = {
            "command": report.command,
            "inputs_digest": report.inputsDigest,
            "passed": report.passed,
            "verdicts": report.verdicts,
            "residuals": report.residuals,
            "classifications": report.classifications,
            "bounds": report.bounds,
            "payload": report.payload,
            "errors": report.errors,
        }

        if includeTiming and report.wallTime is not None:
            document["wall_time"] = report.wallTime

        return JsonCodec._jsonReady(document)

    @staticmethod
    def summarize(values: Sequence[AlgebraElement]) -> Dict[str, List[Any]]:
        """Per point minimum and median of the real parts of a list of algebra elements."""

        stacked = np.array([value.values.real for value in values])

        return {
            "min": [JsonCodec.number(x) for x in stacked.min(axis=0)],
            "median": [JsonCodec.number(x) for x in np.median(stacked, axis=0)],
        }
