import pytest

from core.exceptions import ShapeError
from core.modules import ModValue, SesqMap
from core.sampling import Sampler
from homotopy.convolution import is_maurer_cartan
from homotopy.decalage import decalage_sign, shift, unshift
from homotopy.identities import verify_leib_infty
from homotopy.operations import SHIFTED, UNSHIFTED, GradedConfModule, HomotopyOps, from_dg_leibniz, from_leibniz


@pytest.mark.parametrize(
    "degrees,sign",
    [
        ([0], 1),
        ([1], 1),
        ([0, 0], -1),
        ([1, 0], 1),
        ([0, 1], -1),
        ([0, 0, 0], 1),
        ([1, 1, 0], -1),
    ],
)
def test_decalage_sign(degrees, sign):
    assert decalage_sign(degrees) == sign


def test_shift_in_degree_zero(vir):
    """
    Binary operations on degree-0 elements change sign: the first argument
    sits in degree 1 after the shift
    """
    shifted = shift(from_leibniz(vir))
    assert shifted.flavor == SHIFTED
    assert shifted.module.degrees == {"L": 1}
    assert shifted.op(2).degree == -1
    assert shifted.op(2).entry(("L", "L")) == -vir.bracket.entry(("L", "L"))


def test_shift_signs(skeletal_ops):
    shifted = shift(skeletal_ops)
    original = skeletal_ops.op(2)
    assert shifted.op(2).entry(("L", "v")) == -original.entry(("L", "v"))
    assert shifted.op(2).entry(("v", "L")) == original.entry(("v", "L"))
    assert shifted.op(3).entry(("L", "L", "L")) == skeletal_ops.op(3).entry(("L", "L", "L"))


def test_dg_shift(skeletal_module, skeletal_ops):
    """
    A dg Leibniz conformal algebra shifts to ϱ₁ = s d s⁻¹ and
    ϱ₂(x, y) = (−1)^|x| s[s⁻¹x, s⁻¹y], with |x| the shifted degree
    """
    g = skeletal_module
    bracket = skeletal_ops.op(2)
    d = SesqMap([g], g, {("v",): ModValue.basis(g, "L")})
    ops = from_dg_leibniz(g, bracket, d)
    shifted = shift(ops)
    assert shifted.op(1).entry(("v",)) == ModValue.basis(g, "L")
    assert shifted.op(1).entry(("L",)).is_zero
    for key, entry in bracket.table.items():
        sign = -1 if (g.degrees[key[0]] + 1) % 2 else 1
        assert shifted.op(2).entry(key) == entry * sign, key
    assert is_maurer_cartan(shifted, 3) == verify_leib_infty(ops, 3).ok


def test_skeletal_round_trip(skeletal_ops):
    assert unshift(shift(skeletal_ops)) == skeletal_ops


@pytest.mark.parametrize("seed", range(100))
def test_random_round_trip(seed):
    sampler = Sampler(seed)
    module = GradedConfModule("G", ["a", "b", "u"], {"u": 1})
    ops = HomotopyOps(
        module,
        {
            k: sampler.sesq([module] * k, module, degree=k - 2, density=0.6, max_ddeg=1, max_ldeg=1)
            for k in (1, 2, 3)
        },
    )
    shifted = shift(ops)
    assert shifted.module.degrees == {"a": 1, "b": 1, "u": 2}
    back = unshift(shifted)
    assert back.flavor == UNSHIFTED
    assert back == ops


def test_wrong_flavor(vir):
    ops = from_leibniz(vir)
    with pytest.raises(ShapeError):
        unshift(ops)
    with pytest.raises(ShapeError):
        shift(shift(ops))


def test_shift_of_a_differential():
    """
    k = 1 carries no sign
    """
    module = GradedConfModule("G", ["a", "u"], {"u": 1})
    d = {("u",): ModValue.basis(module, "a")}
    ops = HomotopyOps(module, {1: SesqMap([module], module, d)})
    assert shift(ops).op(1).entry(("u",)) == ModValue.basis(module, "a")
