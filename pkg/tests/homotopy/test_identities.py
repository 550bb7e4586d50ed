import pytest

from core.exceptions import DegreeOverflowError, ShapeError
from core.modules import ConfModule, ModValue, SesqMap
from core.ring import Poly, VarCtx
from core.sampling import Sampler
from homotopy.decalage import shift
from homotopy.identities import leibnizator_sum, shuffle_terms, verify_leib_infty
from homotopy.operations import GradedConfModule, HomotopyOps, from_dg_leibniz, from_leibniz
from leibniz.algebras import leibniz_residual
from tests.conftest import value

THREE = VarCtx.standard(3)


def test_shuffle_terms():
    """
    k = 3, j = 2: one term for i = 1, two for i = 2, three for i = 3
    """
    terms = list(shuffle_terms(3, 2))
    assert [t.i for t in terms] == [1, 2, 2, 3, 3, 3]
    assert terms[2].outer_front == (1,)
    assert terms[2].inner_front == (0,)
    assert terms[2].inner_last == 2


def test_square_of_the_differential():
    """
    n = 1 is (ρ₁)² = 0
    """
    module = GradedConfModule("G", ["a", "b", "c"], {"b": 1, "c": 2})
    d = SesqMap(
        [module],
        module,
        {("c",): ModValue.basis(module, "b"), ("b",): ModValue.basis(module, "a")},
    )
    ops = HomotopyOps(module, {1: d})
    assert leibnizator_sum(ops, ("c",)) == ModValue.basis(module, "a")
    assert leibnizator_sum(ops, ("b",)).is_zero


@pytest.mark.parametrize("seed", range(8))
def test_degree_zero_is_the_leibniz_identity(seed):
    """
    On a module in degree 0 with only ρ₂, n = 3 is minus the Leibniz defect
    """
    sampler = Sampler(seed)
    module = GradedConfModule("g", ["a", "b"])
    bracket = sampler.sesq([module, module], module, density=0.6, max_ddeg=1, max_ldeg=1, terms=2)
    ops = from_dg_leibniz(module, bracket)
    for key in [("a", "a", "b"), ("b", "a", "a"), ("a", "b", "b")]:
        assert leibnizator_sum(ops, key) == -leibniz_residual(ops.op(2), *key)


def test_virasoro_passes(vir):
    report = verify_leib_infty(from_leibniz(vir), 4)
    assert report.ok
    assert report.counters == {f"leib-infty.n{n}": 1 for n in range(1, 5)}


def test_current_algebras_pass(central_current, left_current):
    for alg in [central_current, left_current]:
        report = verify_leib_infty(from_leibniz(alg), 4)
        assert report.ok
        assert report.counters["leib-infty.n4"] == 16


def test_failing_bracket(bad_bracket):
    module, bracket = bad_bracket
    report = verify_leib_infty(from_dg_leibniz(module, bracket), 4)
    assert report.failed_identities() == ["leib-infty.n3"]


def test_skeletal_passes(skeletal_ops):
    assert verify_leib_infty(skeletal_ops, 4).ok


def test_perturbed_skeletal_fails_at_four(skeletal_ops, skeletal_module):
    """
    Adding the constant v to ρ₃ leaves n ≤ 3 intact and breaks n = 4
    """
    g = skeletal_module
    two = VarCtx.standard(2)
    bump = SesqMap([g, g, g], g, {("L", "L", "L"): ModValue.basis(g, "v", two)})
    perturbed = HomotopyOps(g, {2: skeletal_ops.op(2), 3: skeletal_ops.op(3) + bump})
    report = verify_leib_infty(perturbed, 4)
    assert report.failed_identities() == ["leib-infty.n4"]
    (failure,) = report.failures
    assert failure.location == ("L", "L", "L", "L")
    l2, l3 = Poly.var(THREE, "l2"), Poly.var(THREE, "l3")
    assert failure.residual == value(g, THREE, v=Poly.derivation(THREE) + 2 * l2 + 2 * l3)


def test_random_current_algebras(sampler):
    """
    Only the n = 3 identity can fail for a bracket in degree 0
    """
    for _ in range(5):
        size = sampler.choice([1, 2])
        module = ConfModule("g", ["a", "b"][:size])
        bracket = sampler.sesq([module, module], module, density=0.5, max_ddeg=1, max_ldeg=1)
        report = verify_leib_infty(from_dg_leibniz(module, bracket), 4)
        assert report.failed_identities() in ([], ["leib-infty.n3"])


def test_wrong_flavor(vir):
    with pytest.raises(ShapeError):
        verify_leib_infty(shift(from_leibniz(vir)), 2)
    with pytest.raises(ShapeError):
        leibnizator_sum(shift(from_leibniz(vir)), ("L",))


def test_arity_cap(vir, settings):
    settings.CONFBENCH_MAX_ARITY = 3
    with pytest.raises(DegreeOverflowError):
        verify_leib_infty(from_leibniz(vir), 4)
