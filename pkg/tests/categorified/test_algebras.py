import pytest

from categorified.algebras import TwoAlg, verify_two_alg
from categorified.functors import functor_S, functor_T
from categorified.spaces import TwoVectorSpace
from core.exceptions import VerificationError
from core.modules import ConfModule, ModValue, SesqMap
from core.sampling import Sampler
from tests.conftest import ONE, moved, perturbed, random_two_term
from twoterm.algebras import verify_two_term
from twoterm.crossed import crossed_to_strict

TWO_ALG_IDS = {
    "2alg.source",
    "2alg.target",
    "2alg.unit",
    "2alg.composition",
    "2alg.leibnizator-target",
    "2alg.naturality",
    "2alg.hexagon",
}


def random_tau(alg, seed: int) -> SesqMap:
    return Sampler(seed).sesq([alg.g0, alg.g0], alg.g1, density=1, max_ddeg=1, max_ldeg=1, terms=2)


def test_images_pass(skeletal_alg, crossed):
    for alg in [skeletal_alg, crossed_to_strict(crossed)]:
        report = verify_two_alg(functor_T(alg))
        assert report.ok
        assert set(report.counters) == TWO_ALG_IDS


def test_strict_image_has_trivial_leibnizator(crossed):
    assert functor_T(crossed_to_strict(crossed)).leibnizator.is_zero


def test_morphism_bracket(crossed):
    """
    [(x, h)_λ (y, k)] = ([x_λ y], ρ₂(x, k) + ρ₂(h, y) + ρ₂(dh, k)) on the
    crossed example, where d p = a and a acts on p by q from both sides
    """
    two = functor_T(crossed_to_strict(crossed))
    q = ModValue.basis(two.c1, "q", ONE)
    assert two.bracket1.entry(("a", "p")) == q
    assert two.bracket1.entry(("p", "a")) == q
    assert two.bracket1.entry(("p", "p")) == q
    assert two.bracket1.entry(("a", "a")) == ModValue.basis(two.c1, "b", ONE)
    assert two.bracket1.entry(("q", "p")).is_zero


def test_trivial_two_algebra():
    space = TwoVectorSpace(ConfModule("C0", ["x"]), ConfModule("K", ["h"]))
    alg = TwoAlg(space)
    assert verify_two_alg(alg).ok
    two_term = functor_S(alg)
    assert two_term.is_strict and two_term.is_skeletal
    assert two_term.rho2.is_zero


def test_hexagon_fails_for_a_non_cocycle(skeletal_alg):
    bad = perturbed(skeletal_alg)
    with pytest.raises(VerificationError):
        functor_T(bad)
    report = verify_two_alg(functor_T(bad, check=False))
    assert report.failed_identities() == ["2alg.hexagon"]
    assert [f.location for f in report.failures] == [("L", "L", "L", "L")]


@pytest.mark.parametrize("seed", range(8))
def test_hexagon_matches_the_last_identity(seed):
    """
    The hexagon of T(A) fails exactly where the quaternary identity of A
    does, whether or not A is verified
    """
    alg = random_two_term(Sampler(seed))
    quaternary = {f.location for f in verify_two_term(alg).failures_for("2term.ix")}
    hexagon = {f.location for f in verify_two_alg(functor_T(alg, check=False)).failures_for("2alg.hexagon")}
    assert hexagon == quaternary


def test_broken_morphism_bracket(crossed):
    two = functor_T(crossed_to_strict(crossed))
    table = {key: value for key, value in two.bracket1.table.items() if key != ("p", "p")}
    broken = TwoAlg(two.space, two.bracket0, SesqMap([two.c1, two.c1], two.c1, table), two.leibnizator)
    failed = verify_two_alg(broken).failed_identities()
    assert "2alg.target" in failed
    assert "2alg.source" not in failed
    with pytest.raises(VerificationError):
        functor_S(broken)
    with pytest.raises(VerificationError):
        TwoAlg.validated(broken.space, broken.bracket0, broken.bracket1, broken.leibnizator)


def test_s_after_t(skeletal_alg, crossed):
    for alg in [skeletal_alg, crossed_to_strict(crossed)]:
        assert functor_S(functor_T(alg)) == alg


@pytest.mark.parametrize("seed", range(20))
def test_s_after_t_on_cohomologous_algebras(skeletal_alg, seed):
    alg = moved(skeletal_alg, random_tau(skeletal_alg, seed))
    assert verify_two_term(alg).ok
    two = functor_T(alg)
    assert verify_two_alg(two).ok
    assert functor_S(two) == alg
    assert functor_T(functor_S(two)) == two
