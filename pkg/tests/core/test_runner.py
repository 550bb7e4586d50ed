import pytest

from core.modules import ConfModule, ModValue
from core.ring import Poly, VarCtx
from core.runner import CheckRunner, IdentityCheck, run_checks

MODULE = ConfModule("g", ["x", "y"])
CTX = VarCtx()


def residual(index: int) -> ModValue:
    if index % 3:
        return ModValue.zero(MODULE, CTX)
    return ModValue(MODULE, CTX, {"x": Poly.constant(CTX, index + 1)})


def make_checks(count: int):
    return [
        IdentityCheck("test.identity", (str(i),), lambda i=i: residual(i))
        for i in range(count)
    ]


def test_inline_run():
    report = run_checks(make_checks(7), jobs=1)
    assert report.counters == {"test.identity": 7}
    assert [f.location for f in report.failures] == [("0",), ("3",), ("6",)]
    assert report.status == "fail"
    assert report.failures[1].printed == "4 x"


def test_parallel_run_is_deterministic():
    """
    Worker threads merge results in submission order
    """
    inline = run_checks(make_checks(20), jobs=1)
    parallel = CheckRunner(jobs=4).run(make_checks(20))
    assert [f.as_dict() for f in parallel.failures] == [f.as_dict() for f in inline.failures]
    assert parallel.counters == inline.counters


def test_errors_propagate():
    def broken():
        raise ValueError("nope")

    with pytest.raises(ValueError):
        run_checks([IdentityCheck("test.identity", (), broken)], jobs=1)


def test_empty_run_passes():
    report = run_checks([], jobs=2)
    assert report.ok
    assert report.status == "pass"
