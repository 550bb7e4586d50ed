import pytest

from categorified.functors import functor_T, functor_T_hom
from categorified.homs import TwoAlgHom, compose_two_alg_hom, identity_two_alg_hom, verify_two_alg_hom
from core.exceptions import ShapeError, VerificationError
from core.modules import ModValue, SesqMap
from tests.conftest import ONE, moved
from twoterm.algebras import TwoTermAlg
from twoterm.crossed import crossed_to_strict
from twoterm.homs import TwoTermHom
from twoterm.skeletal import equivalence_hom

HOM_IDS = {
    "2hom.source",
    "2hom.target",
    "2hom.unit",
    "2hom.composition",
    "2hom.f2-target",
    "2hom.naturality",
    "2hom.square",
}


def basic_tau(alg: TwoTermAlg) -> SesqMap:
    return SesqMap([alg.g0, alg.g0], alg.g1, {("L", "L"): ModValue.basis(alg.g1, "v", ONE)})


def test_identity_passes(skeletal_alg, crossed):
    for alg in [skeletal_alg, crossed_to_strict(crossed)]:
        report = verify_two_alg_hom(identity_two_alg_hom(functor_T(alg)))
        assert report.ok
        assert set(report.counters) == HOM_IDS


def test_image_of_an_equivalence_passes(skeletal_alg):
    tau = basic_tau(skeletal_alg)
    hom = functor_T_hom(equivalence_hom(skeletal_alg, moved(skeletal_alg, tau), tau))
    assert verify_two_alg_hom(hom).ok
    assert hom.f2 == -tau


def test_wrong_sign_fails_at_the_square(skeletal_alg):
    """
    The ternary homomorphism condition becomes the Leibnizator square
    """
    tau = basic_tau(skeletal_alg)
    other = moved(skeletal_alg, tau)
    wrong = TwoTermHom(skeletal_alg, other, SesqMap.identity(other.g0), SesqMap.identity(other.g1), -tau)
    with pytest.raises(VerificationError):
        functor_T_hom(wrong)
    image = functor_T_hom(wrong, check=False)
    assert verify_two_alg_hom(image).failed_identities() == ["2hom.square"]
    with pytest.raises(VerificationError):
        TwoAlgHom.validated(image.source, image.target, image.f0, image.f1, image.f2)


def test_functoriality_conditions(crossed):
    two = functor_T(crossed_to_strict(crossed))
    doubled = TwoAlgHom(two, two, SesqMap.identity(two.c0), SesqMap.identity(two.c1).scale(2))
    failed = verify_two_alg_hom(doubled).failed_identities()
    assert {"2hom.source", "2hom.target", "2hom.unit"} <= set(failed)


def test_composition(skeletal_alg):
    tau = basic_tau(skeletal_alg)
    middle = moved(skeletal_alg, tau)
    last = moved(middle, tau)
    f = functor_T_hom(equivalence_hom(skeletal_alg, middle, tau))
    g = functor_T_hom(equivalence_hom(middle, last, tau))
    composite = compose_two_alg_hom(g, f)
    assert verify_two_alg_hom(composite).ok
    assert composite.f2 == (f.f2 + g.f2)
    assert compose_two_alg_hom(identity_two_alg_hom(g.source), f) == f
    assert compose_two_alg_hom(f, identity_two_alg_hom(f.source)) == f


def test_composition_shape(skeletal_alg, crossed):
    with pytest.raises(ShapeError):
        compose_two_alg_hom(
            identity_two_alg_hom(functor_T(skeletal_alg)),
            identity_two_alg_hom(functor_T(crossed_to_strict(crossed))),
        )


def test_hom_shapes(skeletal_alg, crossed):
    source, target = functor_T(skeletal_alg), functor_T(crossed_to_strict(crossed))
    with pytest.raises(ShapeError):
        TwoAlgHom(source, target, SesqMap.identity(source.c0), SesqMap.identity(source.c1))
