import json
import numpy as np
import pytest

from model.RunReport import RunReport

from controller.BundleIO import BundleIO
from controller.JsonCodec import JsonCodec

from utils.errors import SchemaError
from utils.errors import BundleParseError
from utils.errors import BundleValidationError

from conftest import scalarBundle


def test_minimal_bundle_loads(writeBundle):
    bundle = BundleIO.loadBundle(writeBundle(scalarBundle(groupName="Z2")))

    assert bundle.spectrum.points == ("t1",)
    assert bundle.module.fiberDims == (1,)
    assert bundle.group.order == 2
    assert len(bundle.representation) == 2
    assert np.allclose(bundle.generators["phi"][0].fibers[0], [2.0])
    assert np.allclose(bundle.vectors["xi"].fibers[0], [-np.sqrt(0.5)])
    assert len(bundle.frames["pair"]) == 2
    assert bundle.seed is None


def test_missing_file_is_an_os_error(tmp_path):
    with pytest.raises(FileNotFoundError):
        BundleIO.loadBundle(tmp_path / "absent.json")


@pytest.mark.parametrize("data", [b"{", b"\xff\xfe", b"[1, 2"])
def test_unparsable_bytes(data):
    with pytest.raises(BundleParseError):
        BundleIO.parseBundle(data)


def test_version_is_checked():
    document = scalarBundle()
    document["version"] = "2"

    with pytest.raises(SchemaError) as error:
        BundleIO.decodeBundle(document)

    assert error.value.location == "/version"


def test_non_associative_table_is_a_validation_error():
    document = scalarBundle()
    document["group"] = {"name": "broken", "elements": ["e", "a", "b"], "table": [[0, 1, 2], [1, 0, 1], [2, 2, 0]]}
    del document["representation"]

    with pytest.raises(BundleValidationError) as error:
        BundleIO.decodeBundle(document)

    assert error.value.location == "/group/table"
    assert "(ab)c != a(bc) for (a, b, c) = " in str(error.value)


def test_group_table_may_use_labels():
    document = scalarBundle(groupName="Z2")
    document["group"]["table"] = [["e", "g"], ["g", "e"]]

    assert BundleIO.decodeBundle(document).group.table == ((0, 1), (1, 0))


def test_representation_axioms_are_validated():
    document = scalarBundle(groupName="Z2")
    document["representation"]["images"]["g"] = {"fibers": [[[[2.0, 0.0]]]]}

    with pytest.raises(BundleValidationError) as error:
        BundleIO.decodeBundle(document)

    assert error.value.location == "/representation/images"


def test_representation_must_cover_the_group():
    document = scalarBundle(groupName="Z2")
    del document["representation"]["images"]["g"]

    with pytest.raises(SchemaError, match="missing"):
        BundleIO.decodeBundle(document)


def test_representation_needs_a_group():
    document = scalarBundle()
    del document["group"]

    with pytest.raises(SchemaError) as error:
        BundleIO.decodeBundle(document)

    assert error.value.location == "/representation"


@pytest.mark.parametrize(
    "section, value, location",
    [
        ("vectors", {"eta": {"fibers": [[1.0, 2.0]]}}, "/vectors/eta/fibers/0"),
        ("vectors", {"eta": {"fibers": [[True]]}}, "/vectors/eta/fibers/0/0"),
        ("vectors", {"eta": {"values": []}}, "/vectors/eta"),
        ("generators", {"phi": []}, "/generators/phi"),
        ("frames", {"pair": {"vectors": []}}, "/frames/pair/vectors"),
        ("operators", {"A": {"fibers": [[[1.0], [2.0]]]}}, "/operators/A/fibers/0"),
        ("vectors", {"eta": {"fibers": [[float("nan")]]}}, "/vectors/eta/fibers/0/0"),
        ("vectors", {"eta": {"fibers": [[[1.0, float("inf")]]]}}, "/vectors/eta/fibers/0/0"),
        ("operators", {"A": {"fibers": [[[[float("-inf"), 0.0]]]]}}, "/operators/A/fibers/0/0/0"),
        ("frames", [], "/frames"),
    ],
)
def test_schema_errors_are_located(section, value, location):
    document = scalarBundle()
    document[section] = value

    with pytest.raises(SchemaError) as error:
        BundleIO.decodeBundle(document)

    assert error.value.location == location
    assert str(error.value).startswith(f"{location}: ")


def test_non_finite_literals_are_schema_errors():
    text = json.dumps(scalarBundle()).replace("[[2.0, 0.0]]", "[[NaN, 0.0]]")

    with pytest.raises(SchemaError) as error:
        BundleIO.parseBundle(text.encode("utf-8"))

    assert error.value.location == "/generators/phi/0/fibers/0/0"


def test_module_spectrum_must_match():
    document = scalarBundle()
    document["module"]["spectrum"] = ["t2"]

    with pytest.raises(SchemaError) as error:
        BundleIO.decodeBundle(document)

    assert error.value.location == "/module/spectrum"


def test_seed_and_metadata_types():
    document = scalarBundle()
    document["seed"] = "7"

    with pytest.raises(SchemaError):
        BundleIO.decodeBundle(document)

    document["seed"] = 7
    document["metadata"] = {"source": "hand"}

    bundle = BundleIO.decodeBundle(document)
    assert bundle.seed == 7 and bundle.metadata == {"source": "hand"}


def test_complex_entries():
    assert JsonCodec.decodeComplex(2, "/x") == 2
    assert JsonCodec.decodeComplex([0.5, -1], "/x") == complex(0.5, -1)

    for bad in (True, [1.0], [1, 2, 3], "1", None):
        with pytest.raises(SchemaError):
            JsonCodec.decodeComplex(bad, "/x")


def test_save_and_load_keep_every_entry(tmp_path, writeBundle):
    bundle = BundleIO.loadBundle(writeBundle(scalarBundle(generator=0.1, groupName="S3")))
    target = tmp_path / "copy.json"

    BundleIO.saveBundle(bundle, target)
    reloaded = BundleIO.loadBundle(target)

    assert reloaded.group.table == bundle.group.table
    assert reloaded.generators["phi"][0].fibers[0][0] == 0.1
    assert reloaded.vectors["eta"].distance(bundle.vectors["eta"]) == 0
    assert BundleIO.dumps(BundleIO.encodeBundle(reloaded)) == target.read_text(encoding="utf-8")


def test_digest_is_sha256():
    assert BundleIO.digest(b"") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855"


def test_report_encoding():
    report = RunReport(
        command="frame analyze",
        inputsDigest="abc",
        verdicts={"frameInequality": np.bool_(True)},
        residuals={"reconstruction": np.float64(1e-15), "condition": float("inf")},
        payload={"dims": (np.int64(2), 3), "value": 1j},
        wallTime=0.25,
    )

    document = JsonCodec.encodeReport(report)

    assert document["passed"] is True
    assert document["residuals"]["condition"] == "inf"
    assert document["payload"] == {"dims": [2, 3], "value": [0.0, 1.0]}
    assert "wall_time" not in document
    assert JsonCodec.encodeReport(report, includeTiming=True)["wall_time"] == 0.25

    json.loads(BundleIO.dumps(document))


def test_failed_report():
    report = RunReport(command="validate", verdicts={"representation": False})

    assert JsonCodec.encodeReport(report)["passed"] is False

    report = RunReport(command="validate", errors=["NotAFrameError: lower frame bound"])
    assert not report.passed
