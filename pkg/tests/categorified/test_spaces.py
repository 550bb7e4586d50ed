import pytest

from categorified.spaces import TwoVectorSpace, two_vs_from_complex, verify_two_vector_space
from core.exceptions import ShapeError
from core.modules import ConfModule, ModValue, SesqMap

SPACE_IDS = {
    "2vs.source-unit",
    "2vs.target-unit",
    "2vs.unit",
    "2vs.compose-source",
    "2vs.compose-target",
    "2vs.associativity",
}


@pytest.fixture
def line():
    """
    h ↦ x, so t(x, h) = x + h
    """
    c0, k = ConfModule("C0", ["x"]), ConfModule("K", ["h"])
    return two_vs_from_complex(k, c0, SesqMap([k], c0, {("h",): ModValue.basis(c0, "x")}))


def test_zero_complex():
    c0, k = ConfModule("C0", ["x", "y"]), ConfModule("K", ["h"])
    space = two_vs_from_complex(k, c0)
    for element in space.c1.basis:
        f = ModValue.basis(space.c1, element)
        assert space.s(f) == space.t(f)
    report = verify_two_vector_space(space)
    assert report.ok
    assert set(report.counters) == SPACE_IDS


def test_source_and_target(line):
    h = ModValue.basis(line.c1, "h")
    x = ModValue.basis(line.c1, "x")
    assert line.s(h).is_zero
    assert line.t(h) == ModValue.basis(line.c0, "x")
    assert line.t(x + h) == ModValue.basis(line.c0, "x") * 2
    assert line.kernel_part(x + h) == ModValue.basis(line.k, "h")


def test_composition(line):
    x = ModValue.basis(line.c0, "x")
    ix = line.unit(x)
    assert line.compose(ix, ix) == ix
    h = ModValue.basis(line.c1, "h")
    # (0, h) : 0 → x followed by (x, h) : x → 2x
    assert line.compose(h, ix + h) == h * 2
    with pytest.raises(ShapeError):
        line.compose(ix, h)


def test_laws(line):
    report = verify_two_vector_space(line)
    assert report.ok
    assert report.counters["2vs.associativity"] == len(line.c1.basis) * 4


def test_shapes():
    c0 = ConfModule("C0", ["x"])
    with pytest.raises(ShapeError):
        TwoVectorSpace(c0, ConfModule("K", ["x"]))
    with pytest.raises(ShapeError):
        TwoVectorSpace(c0, ConfModule("K", ["h"]), SesqMap.identity(c0))
