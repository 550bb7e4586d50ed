import pytest

from core.exceptions import DegreeOverflowError, ShapeError
from core.modules import ModValue, SesqMap
from core.sampling import Sampler
from homotopy.convolution import (
    DEGREE_ZERO_SIGNS,
    ConvolutionElement,
    diamond,
    embed_cochain,
    gla_bracket,
    is_maurer_cartan,
    linfty_coboundary,
    verify_maurer_cartan,
)
from homotopy.decalage import shift
from homotopy.identities import verify_leib_infty
from homotopy.operations import SHIFTED, GradedConfModule, HomotopyOps, from_leibniz
from leibniz.cohomology import Cochain, coboundary
from leibniz.constructions import adjoint

BOUNDS = dict(max_ddeg=1, max_ldeg=1, terms=2)


def random_element(sampler: Sampler, module, degree: int, arities=(1, 2)) -> ConvolutionElement:
    return ConvolutionElement(
        module,
        degree,
        {k: sampler.sesq([module] * k, module, degree=degree, density=0.6, **BOUNDS) for k in arities},
    )


def random_ops(sampler: Sampler) -> HomotopyOps:
    """
    Unstructured operations on a 2-term module: ρ₁, ρ₂ and ρ₃ of degrees −1, 0, 1
    """
    module = GradedConfModule("G", ["a", "b", "u"], {"u": 1})
    return HomotopyOps(
        module,
        {k: sampler.sesq([module] * k, module, degree=k - 2, density=0.5, **BOUNDS) for k in (1, 2, 3)},
    )


def failing_locations(report, prefix: str) -> set:
    return {(f.identity.removeprefix(prefix), f.location) for f in report.failures}


def test_skeletal_is_maurer_cartan(skeletal_ops):
    report = verify_maurer_cartan(shift(skeletal_ops), 4)
    assert report.ok
    assert set(report.counters) == {f"mc.n{p}" for p in range(1, 5)}


def test_zero_is_maurer_cartan(skeletal_module):
    assert is_maurer_cartan(HomotopyOps(skeletal_module.shifted(1), {}, SHIFTED), 3)


def test_perturbed_skeletal_is_not(skeletal_ops, skeletal_module):
    g = skeletal_module
    bump = SesqMap([g, g, g], g, {("L", "L", "L"): ModValue.basis(g, "v", skeletal_ops.op(3).ctx)})
    perturbed = HomotopyOps(g, {2: skeletal_ops.op(2), 3: skeletal_ops.op(3) + bump})
    report = verify_maurer_cartan(shift(perturbed), 4)
    assert report.failed_identities() == ["mc.n4"]
    assert [f.location for f in report.failures] == [("L", "L", "L", "L")]


@pytest.mark.slow
@pytest.mark.parametrize("seed", range(100))
def test_identities_match_maurer_cartan(seed):
    """
    The Leib∞ identities and ⟦ϱ, ϱ⟧ = 0 fail on exactly the same tuples
    """
    ops = random_ops(Sampler(seed))
    direct = verify_leib_infty(ops, 4)
    shifted = verify_maurer_cartan(shift(ops), 4)
    assert failing_locations(direct, "leib-infty.") == failing_locations(shifted, "mc.")


def test_satisfying_samples_match(skeletal_ops, left_current, vir):
    for ops in [skeletal_ops, from_leibniz(left_current), from_leibniz(vir)]:
        assert verify_leib_infty(ops, 4).ok
        assert is_maurer_cartan(shift(ops), 4)


@pytest.mark.parametrize("seed", range(4))
def test_graded_antisymmetry(seed):
    sampler = Sampler(seed)
    module = GradedConfModule("H", ["x", "y"], {"x": 1, "y": 2})
    phi = random_element(sampler, module, -1)
    psi = random_element(sampler, module, 0)
    chi = random_element(sampler, module, 1)
    assert gla_bracket(phi, psi, 3) == -gla_bracket(psi, phi, 3)
    assert gla_bracket(phi, chi, 3) == gla_bracket(chi, phi, 3)


@pytest.mark.parametrize("seed", range(3))
def test_jacobi(seed):
    """
    ⟦φ, ⟦ψ, χ⟧⟧ = ⟦⟦φ, ψ⟧, χ⟧ + (−1)^(mn) ⟦ψ, ⟦φ, χ⟧⟧ up to arity 3
    """
    sampler = Sampler(seed)
    module = GradedConfModule("H", ["x", "y"], {"x": 1, "y": 2})
    phi = random_element(sampler, module, -1)
    psi = random_element(sampler, module, -1)
    chi = random_element(sampler, module, 0)
    left = gla_bracket(phi, gla_bracket(psi, chi, 3), 3)
    right = gla_bracket(gla_bracket(phi, psi, 3), chi, 3) - gla_bracket(psi, gla_bracket(phi, chi, 3), 3)
    assert left == right


@pytest.mark.parametrize("seed", range(4))
def test_coboundary_squares_to_zero(seed, skeletal_ops):
    ops = shift(skeletal_ops)
    sampler = Sampler(seed)
    for degree in (-1, 0):
        phi = random_element(sampler, ops.module, degree)
        twice = linfty_coboundary(ops, linfty_coboundary(ops, phi, 3), 3)
        assert twice.is_zero


def test_zero_structure_has_zero_coboundary(sampler, skeletal_module):
    module = skeletal_module.shifted(1)
    phi = random_element(sampler, module, 0)
    assert linfty_coboundary(HomotopyOps(module, {}, SHIFTED), phi, 3).is_zero


@pytest.mark.parametrize("degree", [1, 2, 3])
@pytest.mark.parametrize("seed", range(9))
@pytest.mark.parametrize("fixture", ["vir", "central_current"])
def test_degree_zero_coboundary(seed, degree, fixture, request):
    """
    On a degree-0 algebra the convolution coboundary is the Leibniz one with
    adjoint coefficients, up to the recorded sign
    """
    alg = request.getfixturevalue(fixture)
    rep = adjoint(alg)
    ops = shift(from_leibniz(alg))
    sampler = Sampler(100 * degree + seed)
    cochain = Cochain(
        degree,
        map=sampler.sesq([alg.module] * degree, alg.module, density=0.6, **BOUNDS),
    )
    expected = embed_cochain(coboundary(alg, rep, cochain), ops.module)
    got = linfty_coboundary(ops, embed_cochain(cochain, ops.module), degree + 1)
    assert got == expected.scale(DEGREE_ZERO_SIGNS[degree])


def test_embedding_needs_positive_degree(vir_adjoint, skeletal_module):
    zero = Cochain(0, element=ModValue.basis(vir_adjoint.module, "L"))
    with pytest.raises(ShapeError):
        embed_cochain(zero, skeletal_module)


def test_diamond_arity_cap(skeletal_ops, settings):
    ops = shift(skeletal_ops)
    assert diamond(ops.op(2), ops.op(2)).degree == -2
    settings.CONFBENCH_MAX_ARITY = 2
    with pytest.raises(DegreeOverflowError):
        diamond(ops.op(2), ops.op(2))


def test_unshifted_operations_are_refused(vir):
    with pytest.raises(ShapeError):
        ConvolutionElement.from_ops(from_leibniz(vir))
