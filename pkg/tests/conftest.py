import pytest

from core.modules import ConfModule, ModValue, SesqMap
from core.ring import Poly, VarCtx
from core.sampling import Sampler
from homotopy.operations import GradedConfModule, HomotopyOps
from leibniz.cohomology import Cochain, coboundary
from leibniz.constructions import adjoint, current_algebra, virasoro, virasoro_module
from twoterm.algebras import TwoTermAlg
from twoterm.crossed import CrossedModule

ONE = VarCtx.standard(1)


def value(module: ConfModule, ctx: VarCtx = ONE, **coeffs: Poly) -> ModValue:
    """
    Testing shorthand for a module value
    """
    return ModValue(module, ctx, coeffs)


@pytest.fixture
def d():
    return Poly.derivation(ONE)


@pytest.fixture
def lam():
    return Poly.var(ONE, "l1")


@pytest.fixture
def vir():
    """
    The Virasoro conformal algebra [L_λ L] = (∂ + 2λ) L
    """
    return virasoro()


@pytest.fixture
def vir_adjoint(vir):
    return adjoint(vir)


@pytest.fixture
def central_current():
    """
    Current algebra of the Leibniz algebra [a, a] = b
    """
    return current_algebra(["a", "b"], {("a", "a"): {"b": 1}}, name="N")


@pytest.fixture
def left_current():
    """
    Current algebra of the (non-Lie) Leibniz algebra [a, b] = b
    """
    return current_algebra(["a", "b"], {("a", "b"): {"b": 1}}, name="S")


@pytest.fixture
def sl2_current():
    return current_algebra(
        ["e", "f", "h"],
        {
            ("e", "f"): {"h": 1},
            ("f", "e"): {"h": -1},
            ("h", "e"): {"e": 2},
            ("e", "h"): {"e": -2},
            ("h", "f"): {"f": -2},
            ("f", "h"): {"f": 2},
        },
        name="sl2",
    )


@pytest.fixture
def vir_module(vir):
    """
    The rank-one Virasoro module L_λ v = (∂ + λ) v
    """
    return virasoro_module(vir)


@pytest.fixture
def bad_bracket():
    """
    [e_λ e] = e, which is not Leibniz
    """
    module = ConfModule("E", ["e"])
    table = {("e", "e"): ModValue.basis(module, "e", ONE)}
    return module, SesqMap([module, module], module, table)


@pytest.fixture
def sampler():
    return Sampler(seed=7)


@pytest.fixture
def skeletal_module():
    return GradedConfModule("G", ["L", "v"], {"v": 1})


@pytest.fixture
def skeletal_ops(skeletal_module):
    """
    A skeletal 2-term Leib∞-conformal algebra: Virasoro in degree 0, its
    adjoint copy in degree 1, and ρ₃ = δτ for τ(L, L) = v
    """
    g = skeletal_module
    d, lam = Poly.derivation(ONE), Poly.var(ONE, "l1")
    rho2 = SesqMap(
        [g, g],
        g,
        {
            ("L", "L"): value(g, L=d + 2 * lam),
            ("L", "v"): value(g, v=d + 2 * lam),
            ("v", "L"): value(g, v=d + 2 * lam),
        },
    )
    two = VarCtx.standard(2)
    l1, l2 = Poly.var(two, "l1"), Poly.var(two, "l2")
    rho3 = SesqMap([g, g, g], g, {("L", "L", "L"): value(g, two, v=-Poly.derivation(two) - 2 * l1 - 2 * l2)})
    return HomotopyOps(g, {2: rho2, 3: rho3})


def random_two_term(sampler: Sampler) -> TwoTermAlg:
    """
    Random degree-respecting operations on a(0), b(0), u(1); most samples
    fail some of the identities
    """
    module = GradedConfModule("G", ["a", "b", "u"], {"u": 1})
    ops = HomotopyOps(
        module,
        {
            k: sampler.sesq([module] * k, module, degree=k - 2, density=0.5, max_ddeg=1, max_ldeg=1, terms=2)
            for k in (1, 2, 3)
        },
    )
    return TwoTermAlg.from_ops(ops)


def moved(alg: TwoTermAlg, tau: SesqMap) -> TwoTermAlg:
    """
    The same algebra with ρ₃ replaced by ρ₃ + δτ
    """
    shift = coboundary(alg.leibniz(), alg.representation(), Cochain(2, map=tau)).map
    return TwoTermAlg(alg.g0, alg.g1, alg.d, alg.rho2, alg.rho3 + shift, name=alg.name)


def perturbed(alg: TwoTermAlg) -> TwoTermAlg:
    """
    ρ₃ plus the constant table (L, L, L) ↦ v, which is not a cocycle
    """
    bump = SesqMap([alg.g0] * 3, alg.g1, {("L", "L", "L"): ModValue.basis(alg.g1, "v", VarCtx.standard(2))})
    return TwoTermAlg(alg.g0, alg.g1, alg.d, alg.rho2, alg.rho3 + bump, name=alg.name)


@pytest.fixture
def skeletal_alg(skeletal_ops):
    return TwoTermAlg.from_ops(skeletal_ops)


@pytest.fixture
def crossed():
    """
    [p, p] = q mapped onto [a, a] = b, with a acting on p from both sides by q
    """
    h = current_algebra(["a", "b"], {("a", "a"): {"b": 1}}, name="H")
    g = current_algebra(["p", "q"], {("p", "p"): {"q": 1}}, name="K")
    d = SesqMap(
        [g.module],
        h.module,
        {("p",): ModValue.basis(h.module, "a"), ("q",): ModValue.basis(h.module, "b")},
    )
    q = ModValue.basis(g.module, "q", ONE)
    phi_l = SesqMap([h.module, g.module], g.module, {("a", "p"): q})
    phi_r = SesqMap([g.module, h.module], g.module, {("p", "a"): q})
    return CrossedModule(g, h, d, phi_l, phi_r)
