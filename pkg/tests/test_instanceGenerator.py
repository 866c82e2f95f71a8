import pytest

from model.RandSpec import RandSpec
from model.VectorClassification import COMPLETE_PARSEVAL

from controller.BundleIO import BundleIO
from controller.InstanceGenerator import InstanceGenerator

from engine.groupSystem import classifyVector
from engine.groupSystem import validateRepresentation

from utils.errors import CapsExceededError
from utils.errors import ConfigurationError


def rendered(spec: RandSpec) -> str:
    return BundleIO.dumps(BundleIO.encodeBundle(InstanceGenerator.randInstance(spec)))


def test_same_seed_same_bundle():
    assert rendered(RandSpec(seed=0)) == rendered(RandSpec(seed=0))


def test_other_seed_other_bundle():
    assert rendered(RandSpec(seed=0)) != rendered(RandSpec(seed=1))


@pytest.mark.parametrize("group", ["Z2", "Z3", "S3", "Z2xZ2"])
@pytest.mark.parametrize("seed", range(3))
def test_generated_instances_are_consistent(group, seed):
    bundle = InstanceGenerator.randInstance(RandSpec(seed=seed, points=2, group=group, maxFiberDim=3))

    validateRepresentation(bundle.representation)

    assert max(bundle.module.fiberDims) <= 3
    assert bundle.seed == seed
    assert bundle.metadata["group"] == group
    assert classifyVector(bundle.representation, bundle.vectors["eta"]).satisfies(COMPLETE_PARSEVAL)
    assert classifyVector(bundle.representation, bundle.vectors["xi"]).satisfies(COMPLETE_PARSEVAL)
    assert len(bundle.generators["phi"]) == 2
    assert len(bundle.frames["frame"]) == 4


def test_generated_bundle_reads_back(tmp_path):
    path = tmp_path / "rand.json"
    BundleIO.saveBundle(InstanceGenerator.randInstance(RandSpec(seed=4, group="S3")), path)

    assert BundleIO.loadBundle(path).group.name == "S3"


@pytest.mark.parametrize(
    "sizes",
    [{"points": 0}, {"points": 9}, {"maxFiberDim": 9}, {"generators": 5}, {"generators": 0}, {"frameVectors": 0}],
)
def test_caps(sizes):
    with pytest.raises(CapsExceededError):
        RandSpec(**sizes)


def test_unknown_group():
    with pytest.raises(ConfigurationError):
        InstanceGenerator.randInstance(RandSpec(group="Q8"))
