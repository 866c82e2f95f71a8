import json
import hashlib

from typing import Any
from typing import Dict
from pathlib import Path

from model.RunReport import RunReport
from model.InstanceBundle import InstanceBundle

from controller.JsonCodec import JsonCodec

from engine.groupSystem import validateRepresentation

from utils.config import SCHEMA_VERSION
from utils.errors import SchemaError
from utils.errors import BundleParseError
from utils.errors import RepresentationError
from utils.errors import BundleValidationError

NAMED_SECTIONS = ("frames", "generators", "vectors", "operators")


class BundleIO:
    """Reads and writes instance bundles and run reports as single JSON files."""

    @staticmethod
    def digest(data: bytes) -> str:
        return hashlib.sha256(data).hexdigest()

    @staticmethod
    def loadBundle(path: Path) -> InstanceBundle:
        """
        Loads and fully validates a bundle file.

        Arguments:
            path (Path): The bundle file.

        Raises:
            FileNotFoundError: The file does not exist.
            BundleParseError: The file is not valid JSON.
            SchemaError: The document does not follow the bundle schema (located).
            BundleValidationError: Group or representation axioms fail (located).
        """

        return BundleIO.parseBundle(Path(path).read_bytes())

    @staticmethod
    def parseBundle(data: bytes) -> InstanceBundle:
        try:
            document = json.loads(data.decode("utf-8"))
        except (UnicodeDecodeError, json.JSONDecodeError) as error:
            raise BundleParseError(f"not a JSON document ({error})")

        return BundleIO.decodeBundle(document)

    @staticmethod
    def decodeBundle(document: Any) -> InstanceBundle:
        if not isinstance(document, dict):
            raise SchemaError("a bundle must be a JSON object", "")

        version = document.get("version")
        if version != SCHEMA_VERSION:
            raise SchemaError(f"unsupported schema version {version!r}, expected {SCHEMA_VERSION!r}", "/version")

        if "spectrum" not in document:
            raise SchemaError("missing field 'spectrum'", "")
        spectrum = JsonCodec.decodeSpectrum(document["spectrum"], "/spectrum")

        if "module" not in document:
            raise SchemaError("missing field 'module'", "")
        module = JsonCodec.decodeShape(document["module"], "/module", spectrum)

        group = JsonCodec.decodeGroup(document["group"], "/group") if document.get("group") is not None else None

        representation = None
        if document.get("representation") is not None:
            representation = JsonCodec.decodeRepresentation(
                document["representation"], "/representation", group, module
            )
            group = representation.group

            try:
                validateRepresentation(representation)
            except RepresentationError as error:
                raise BundleValidationError(str(error), "/representation/images")

        for section in NAMED_SECTIONS:
            if not isinstance(document.get(section, {}), dict):
                raise SchemaError("expected an object of named entries", f"/{section}")

        frames = {
            name: JsonCodec.decodeFrame(data, f"/frames/{name}", module)
            for name, data in document.get("frames", {}).items()
        }
        generators = {
            name: JsonCodec.decodeGenerators(data, module, f"/generators/{name}")
            for name, data in document.get("generators", {}).items()
        }
        vectors = {
            name: JsonCodec.decodeElement(data, module, f"/vectors/{name}")
            for name, data in document.get("vectors", {}).items()
        }
        operators = {
            name: JsonCodec.decodeOperator(data, module, module, f"/operators/{name}")
            for name, data in document.get("operators", {}).items()
        }

        seed = document.get("seed")
        if seed is not None and (not isinstance(seed, int) or isinstance(seed, bool)):
            raise SchemaError("the seed must be an integer", "/seed")

        metadata = document.get("metadata", {})
        if not isinstance(metadata, dict):
            raise SchemaError("expected an object", "/metadata")

        return InstanceBundle(
            spectrum=spectrum,
            module=module,
            group=group,
            representation=representation,
            frames=frames,
            generators=generators,
            vectors=vectors,
            operators=operators,
            metadata=metadata,
            version=version,
            seed=seed,
        )

    @staticmethod
    def encodeBundle(bundle: InstanceBundle) -> Dict[str, Any]:
        document: Dict[str, Any] = {
            "version": bundle.version,
            "spectrum": JsonCodec.encodeSpectrum(bundle.spectrum),
            "module": JsonCodec.encodeShape(bundle.module),
        }

        if bundle.seed is not None:
            document["seed"] = bundle.seed

        if bundle.group is not None:
            document["group"] = JsonCodec.encodeGroup(bundle.group)

        if bundle.representation is not None:
            document["representation"] = JsonCodec.encodeRepresentation(bundle.representation)

        document["frames"] = {name: JsonCodec.encodeFrame(frame) for name, frame in bundle.frames.items()}
        document["generators"] = {name: JsonCodec.encodeGenerators(gen) for name, gen in bundle.generators.items()}
        document["vectors"] = {name: JsonCodec.encodeElement(vector) for name, vector in bundle.vectors.items()}
        document["operators"] = {name: JsonCodec.encodeOperator(op) for name, op in bundle.operators.items()}
        document["metadata"] = dict(bundle.metadata)

        return document

    @staticmethod
    def dumps(document: Any) -> str:
        # repr floats are the shortest strings that read back to the same double
        return json.dumps(document, indent=2, ensure_ascii=False, allow_nan=False) + "\n"

    @staticmethod
    def saveBundle(bundle: InstanceBundle, path: Path) -> None:
        Path(path).write_text(BundleIO.dumps(BundleIO.encodeBundle(bundle)), encoding="utf-8")

    @staticmethod
    def saveReport(report: RunReport, path: Path, includeTiming: bool = False) -> None:
        Path(path).write_text(BundleIO.dumps(JsonCodec.encodeReport(report, includeTiming)), encoding="utf-8")
