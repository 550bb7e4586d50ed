import pytest

from core.exceptions import NotCocycleError, NotSkeletalError, ShapeError, VerificationError
from core.modules import ModValue, SesqMap
from leibniz.cohomology import Cochain, coboundary
from tests.conftest import ONE, perturbed
from twoterm.algebras import TwoTermAlg, verify_two_term
from twoterm.crossed import crossed_to_strict
from twoterm.skeletal import (
    equivalence_defect,
    equivalence_hom,
    find_equivalence,
    skeletal_equivalent,
    skeletal_to_triple,
    triple_to_skeletal,
)


def tau_of(alg: TwoTermAlg) -> SesqMap:
    return SesqMap([alg.g0, alg.g0], alg.g1, {("L", "L"): ModValue.basis(alg.g1, "v", ONE)})


def with_rho3(alg: TwoTermAlg, rho3: SesqMap) -> TwoTermAlg:
    return TwoTermAlg(alg.g0, alg.g1, alg.d, alg.rho2, rho3, name=alg.name)


def test_triple_round_trip(skeletal_alg):
    g, rep, theta = skeletal_to_triple(skeletal_alg)
    assert g.module.basis == ("L",)
    assert rep.module.basis == ("v",)
    assert theta.map == skeletal_alg.rho3
    rebuilt = triple_to_skeletal(g, rep, theta, name=skeletal_alg.name)
    assert rebuilt == skeletal_alg
    assert skeletal_to_triple(rebuilt) == (g, rep, theta)


def test_zero_cocycle(skeletal_alg):
    """
    θ = 0 gives an algebra that is both skeletal and strict
    """
    g, rep, _ = skeletal_to_triple(skeletal_alg)
    alg = triple_to_skeletal(g, rep, Cochain.zero(3, g, rep))
    assert alg.is_skeletal
    assert alg.is_strict
    assert verify_two_term(alg).ok


def test_coboundary_fixture(skeletal_alg):
    """
    The fixture's ρ₃ is δτ for τ(L, L) = v
    """
    g, rep, theta = skeletal_to_triple(skeletal_alg)
    assert coboundary(g, rep, Cochain(2, map=tau_of(skeletal_alg))) == theta


def test_not_skeletal(crossed):
    with pytest.raises(NotSkeletalError):
        skeletal_to_triple(crossed_to_strict(crossed))


def test_not_a_cocycle(skeletal_alg):
    bad = perturbed(skeletal_alg)
    assert verify_two_term(bad).failed_identities() == ["2term.ix"]
    with pytest.raises(NotCocycleError):
        skeletal_to_triple(bad)
    g, rep, _ = skeletal_to_triple(skeletal_alg)
    with pytest.raises(NotCocycleError):
        triple_to_skeletal(g, rep, Cochain(3, map=bad.rho3))


def test_triple_needs_degree_three(skeletal_alg):
    g, rep, _ = skeletal_to_triple(skeletal_alg)
    with pytest.raises(ShapeError):
        triple_to_skeletal(g, rep, Cochain(2, map=tau_of(skeletal_alg)))


def test_equivalent_to_itself(skeletal_alg):
    zero = SesqMap.zero([skeletal_alg.g0] * 2, skeletal_alg.g1)
    assert skeletal_equivalent(skeletal_alg, skeletal_alg, zero)


def test_equivalent_to_its_strict_form(skeletal_alg):
    strict = with_rho3(skeletal_alg, SesqMap.zero([skeletal_alg.g0] * 3, skeletal_alg.g1))
    tau = tau_of(skeletal_alg)
    assert skeletal_equivalent(strict, skeletal_alg, tau)
    assert not skeletal_equivalent(skeletal_alg, strict, tau)
    assert skeletal_equivalent(skeletal_alg, strict, -tau)
    assert equivalence_defect(skeletal_alg, strict, tau) == "ρ₃' − ρ₃ is not the coboundary of τ"


def test_find_equivalence(skeletal_alg):
    strict = with_rho3(skeletal_alg, SesqMap.zero([skeletal_alg.g0] * 3, skeletal_alg.g1))
    tau = find_equivalence(strict, skeletal_alg)
    assert tau is not None
    assert skeletal_equivalent(strict, skeletal_alg, tau)


def test_no_equivalence_to_a_non_cocycle(skeletal_alg):
    assert find_equivalence(skeletal_alg, perturbed(skeletal_alg)) is None
    zero = SesqMap.zero([skeletal_alg.g0] * 2, skeletal_alg.g1)
    assert not skeletal_equivalent(skeletal_alg, perturbed(skeletal_alg), zero)
    with pytest.raises(VerificationError):
        equivalence_hom(skeletal_alg, perturbed(skeletal_alg), zero)


def test_binary_operations_must_agree(skeletal_alg):
    other = TwoTermAlg(skeletal_alg.g0, skeletal_alg.g1, None, skeletal_alg.rho2.scale(2), skeletal_alg.rho3)
    zero = SesqMap.zero([skeletal_alg.g0] * 2, skeletal_alg.g1)
    assert equivalence_defect(skeletal_alg, other, zero) == "the binary operations differ"
    assert find_equivalence(skeletal_alg, other) is None


def test_equivalence_needs_skeletal(skeletal_alg, crossed):
    strict = crossed_to_strict(crossed)
    zero = SesqMap.zero([strict.g0] * 2, strict.g1)
    with pytest.raises(NotSkeletalError):
        skeletal_equivalent(strict, strict, zero)
