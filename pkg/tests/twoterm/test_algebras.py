import pytest

from core.exceptions import ShapeError, VerificationError
from core.modules import ConfModule, ModValue, SesqMap
from core.ring import Poly, VarCtx
from core.sampling import Sampler
from homotopy.decalage import shift
from homotopy.identities import verify_leib_infty
from homotopy.operations import GradedConfModule, HomotopyOps
from tests.conftest import ONE, perturbed, random_two_term, value
from twoterm.algebras import (
    IDENTITY_ARITIES,
    TwoTermAlg,
    verify_symmetry_identities,
    verify_two_term,
)
from twoterm.crossed import crossed_to_strict

TWO = VarCtx.standard(2)
ONE_POLY = Poly.one(ONE)


def test_skeletal_passes(skeletal_alg):
    report = verify_two_term(skeletal_alg)
    assert report.ok
    assert report.counters == {identity: 1 for identity in IDENTITY_ARITIES}


def test_components(skeletal_alg, vir):
    assert skeletal_alg.g0.basis == ("L",)
    assert skeletal_alg.g1.basis == ("v",)
    assert skeletal_alg.is_skeletal
    assert not skeletal_alg.is_strict
    assert skeletal_alg.bracket == vir.bracket
    assert skeletal_alg.left.entry(("L", "v")) == vir.bracket.entry(("L", "L")).embed(skeletal_alg.g1, {"L": "v"})


def test_operations_round_trip(skeletal_ops, skeletal_alg):
    assert skeletal_alg.ops == skeletal_ops
    assert TwoTermAlg.from_ops(skeletal_alg.ops) == skeletal_alg


def test_from_pieces(skeletal_alg):
    rebuilt = TwoTermAlg.from_pieces(
        skeletal_alg.g0,
        skeletal_alg.g1,
        None,
        skeletal_alg.bracket,
        skeletal_alg.left,
        skeletal_alg.right,
        skeletal_alg.rho3,
    )
    assert rebuilt == skeletal_alg


def test_perturbed_fails_only_at_the_last_identity(skeletal_alg):
    """
    With d = 0 the quaternary identity is the cocycle condition on ρ₃
    """
    report = verify_two_term(perturbed(skeletal_alg))
    assert report.failed_identities() == ["2term.ix"]
    assert [f.location for f in report.failures] == [("L", "L", "L", "L")]


def test_validated_refuses(skeletal_alg):
    bad = perturbed(skeletal_alg)
    with pytest.raises(VerificationError) as info:
        TwoTermAlg.validated(bad.g0, bad.g1, bad.d, bad.rho2, bad.rho3)
    assert info.value.report.failed_identities() == ["2term.ix"]


def test_strict_from_crossed_passes(crossed):
    alg = crossed_to_strict(crossed)
    assert alg.is_strict
    assert not alg.is_skeletal
    assert verify_two_term(alg).ok


def test_unequivariant_differential(crossed):
    """
    Sending q to 0 breaks the identities that move d across ρ₂
    """
    alg = crossed_to_strict(crossed)
    d = SesqMap([alg.g1], alg.g0, {("p",): ModValue.basis(alg.g0, "a")})
    report = verify_two_term(TwoTermAlg(alg.g0, alg.g1, d, alg.rho2))
    assert set(report.failed_identities()) == {"2term.ii", "2term.iii"}
    assert {f.location for f in report.failures} == {("a", "p"), ("p", "a")}


@pytest.mark.parametrize("seed", range(50))
def test_matches_leib_infty(seed):
    """
    The nine identities fail exactly where the Leibnizator identities of the
    same graded data fail
    """
    alg = random_two_term(Sampler(seed))
    direct = {(f"n{IDENTITY_ARITIES[f.identity]}", f.location) for f in verify_two_term(alg).failures}
    graded = {
        (f.identity.removeprefix("leib-infty."), f.location) for f in verify_leib_infty(alg.ops, 4).failures
    }
    assert direct == graded


def test_verified_samples_match(skeletal_alg, crossed):
    for alg in [skeletal_alg, crossed_to_strict(crossed)]:
        assert verify_leib_infty(alg.ops, 4).ok


def test_symmetry_identities(skeletal_alg, crossed):
    for alg in [skeletal_alg, crossed_to_strict(crossed)]:
        report = verify_symmetry_identities(alg)
        assert report.ok
        assert set(report.counters) == {"2term.sym-bracket", "2term.sym-action"}


def test_symmetry_needs_strict_or_skeletal(crossed):
    alg = crossed_to_strict(crossed)
    rho3 = SesqMap([alg.g0] * 3, alg.g1, {("a", "a", "a"): ModValue.basis(alg.g1, "q", TWO)})
    with pytest.raises(ShapeError):
        verify_symmetry_identities(TwoTermAlg(alg.g0, alg.g1, alg.d, alg.rho2, rho3))


def test_shape_errors():
    g0, g1 = ConfModule("G0", ["x"]), ConfModule("G1", ["u"])
    with pytest.raises(ShapeError):
        TwoTermAlg(g0, g1, d=SesqMap.identity(g0))
    with pytest.raises(ShapeError):
        TwoTermAlg(g0, g1, rho3=SesqMap.zero([g0, g0, g0], g0))
    with pytest.raises(ShapeError):
        TwoTermAlg(g0, ConfModule("G1", ["x"]))


def test_inhomogeneous_rho2_is_refused():
    g0, g1 = ConfModule("G0", ["x"]), ConfModule("G1", ["u"])
    total = GradedConfModule("G", ["x", "u"], {"u": 1})
    rho2 = SesqMap([total, total], total, {("x", "x"): value(total, ONE, u=ONE_POLY)})
    with pytest.raises(ShapeError):
        TwoTermAlg(g0, g1, rho2=rho2, name="G")


def test_from_ops_refuses(skeletal_ops):
    with pytest.raises(ShapeError):
        TwoTermAlg.from_ops(shift(skeletal_ops))
    wide = GradedConfModule("W", ["x", "w"], {"w": 2})
    with pytest.raises(ShapeError):
        TwoTermAlg.from_ops(HomotopyOps(wide, {}))
