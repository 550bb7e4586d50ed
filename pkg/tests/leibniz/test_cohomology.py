import pytest

from core.exceptions import DegreeOverflowError, ShapeError
from core.modules import ConfModule, ModValue, SesqMap
from core.ring import Poly, VarCtx
from core.sampling import Sampler
from leibniz.algebras import LeibnizConfAlg
from leibniz.cohomology import (
    Cochain,
    coboundary,
    find_coboundary_preimage,
    is_coboundary_of,
    is_cocycle,
)
from leibniz.constructions import adjoint, semidirect
from leibniz.representations import ConfRep
from tests.conftest import ONE, value

PLAIN = VarCtx()
TWO = VarCtx.standard(2)


def random_cochain(sampler: Sampler, alg, rep, degree: int) -> Cochain:
    if degree == 0:
        return Cochain(0, element=sampler.value(rep.module, PLAIN, density=1.0, max_ddeg=0))
    return Cochain(
        degree,
        map=sampler.sesq([alg.module] * degree, rep.module, density=0.6, max_ddeg=2, max_ldeg=2, terms=2),
    )


def test_degree_zero(vir_adjoint):
    """
    δv(x) = -(v_λ x) at λ = 0
    """
    v = Cochain(0, element=ModValue.basis(vir_adjoint.module, "L"))
    dv = coboundary(vir_adjoint.alg, vir_adjoint, v)
    assert dv.map.entry(("L",)) == value(vir_adjoint.module, PLAIN, L=-Poly.derivation(PLAIN))


def test_degree_zero_keeps_constant_part(vir_adjoint):
    element = value(vir_adjoint.module, PLAIN, L=Poly.derivation(PLAIN) + 3)
    assert Cochain(0, element=element).element == value(vir_adjoint.module, PLAIN, L=Poly.constant(PLAIN, 3))


def test_degree_one_virasoro(vir_adjoint, d, lam):
    """
    φ(L) = L gives (δφ)_λ(L, L) = (∂ + 2λ) L
    """
    phi = Cochain(1, map=SesqMap.identity(vir_adjoint.module))
    dphi = coboundary(vir_adjoint.alg, vir_adjoint, phi)
    assert dphi.map.entry(("L", "L")) == value(vir_adjoint.module, L=d + 2 * lam)
    assert is_cocycle(vir_adjoint.alg, vir_adjoint, dphi)
    assert is_coboundary_of(vir_adjoint.alg, vir_adjoint, dphi, phi)


def test_abelian_trivial_is_zero(sampler):
    g = ConfModule("A", ["a", "b"])
    m = ConfModule("M", ["u"])
    alg = LeibnizConfAlg(g, SesqMap.zero([g, g], g))
    rep = ConfRep(alg, m, SesqMap.zero([g, m], m), SesqMap.zero([m, g], m))
    for degree in range(3):
        assert coboundary(alg, rep, random_cochain(sampler, alg, rep, degree)).is_zero


def test_degree_two_constant(vir_adjoint, d):
    """
    ψ_λ(L, L) = L is not a cocycle: δψ = (-∂ - 2λ - 2μ) L
    """
    table = {("L", "L"): ModValue.basis(vir_adjoint.module, "L", ONE)}
    psi = Cochain(2, map=SesqMap([vir_adjoint.module] * 2, vir_adjoint.module, table))
    dpsi = coboundary(vir_adjoint.alg, vir_adjoint, psi)
    l1, l2 = Poly.var(TWO, "l1"), Poly.var(TWO, "l2")
    assert dpsi.map.entry(("L", "L", "L")) == value(
        vir_adjoint.module, TWO, L=-Poly.derivation(TWO) - 2 * l1 - 2 * l2
    )
    assert find_coboundary_preimage(vir_adjoint.alg, vir_adjoint, psi) is None


def test_degree_overflow(vir_adjoint, settings):
    settings.CONFBENCH_MAX_COCHAIN_DEGREE = 1
    table = {("L", "L"): ModValue.basis(vir_adjoint.module, "L", ONE)}
    psi = Cochain(2, map=SesqMap([vir_adjoint.module] * 2, vir_adjoint.module, table))
    with pytest.raises(DegreeOverflowError):
        coboundary(vir_adjoint.alg, vir_adjoint, psi)


def fixture_pairs(vir, vir_module, central_current, left_current):
    semi = semidirect(vir, vir_module)
    return [
        (vir, adjoint(vir)),
        (central_current, adjoint(central_current)),
        (left_current, adjoint(left_current)),
        (semi, adjoint(semi)),
    ]


@pytest.mark.parametrize("degree", [0, 1, 2])
@pytest.mark.parametrize("seed", range(50))
def test_delta_squared(degree, seed, vir, vir_module, central_current, left_current):
    """
    δ∘δ = 0 on random cochains over every fixture
    """
    sampler = Sampler(seed)
    for alg, rep in fixture_pairs(vir, vir_module, central_current, left_current):
        phi = random_cochain(sampler, alg, rep, degree)
        assert coboundary(alg, rep, coboundary(alg, rep, phi)).is_zero, alg.name


@pytest.mark.slow
@pytest.mark.parametrize("seed", range(50))
def test_delta_squared_degree_three(seed, vir_adjoint, central_current):
    sampler = Sampler(seed)
    for alg, rep in [(vir_adjoint.alg, vir_adjoint), (central_current, adjoint(central_current))]:
        phi = random_cochain(sampler, alg, rep, 3)
        assert coboundary(alg, rep, coboundary(alg, rep, phi)).is_zero


@pytest.mark.parametrize("seed", range(4))
def test_preimage_found(seed, vir_adjoint, central_current):
    """
    ψ = δτ₀ with τ₀ inside the bounds always has a preimage
    """
    sampler = Sampler(seed)
    for alg, rep in [(vir_adjoint.alg, vir_adjoint), (central_current, adjoint(central_current))]:
        tau0 = Cochain(
            1 + seed % 2,
            map=sampler.sesq(
                [alg.module] * (1 + seed % 2), rep.module, density=0.7, max_ddeg=1, max_ldeg=1, terms=2
            ),
        )
        psi = coboundary(alg, rep, tau0)
        tau = find_coboundary_preimage(alg, rep, psi, max_ddeg=1, max_ldeg=1)
        assert tau is not None
        assert coboundary(alg, rep, tau) == psi


def test_preimage_of_zero(vir_adjoint):
    psi = Cochain.zero(2, vir_adjoint.alg, vir_adjoint)
    assert find_coboundary_preimage(vir_adjoint.alg, vir_adjoint, psi).is_zero


def test_preimage_bounds(vir_adjoint):
    psi = Cochain.zero(2, vir_adjoint.alg, vir_adjoint)
    with pytest.raises(ShapeError):
        find_coboundary_preimage(vir_adjoint.alg, vir_adjoint, psi, max_ddeg=0)
