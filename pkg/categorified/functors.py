from categorified.algebras import TwoAlg, require_two_alg
from categorified.homs import TwoAlgHom, verify_two_alg_hom
from categorified.spaces import TwoVectorSpace
from core.exceptions import VerificationError
from core.modules import ModValue, SesqMap, apply_linear
from core.ring import Poly
from leibniz.algebras import bracket
from leibniz.representations import BINARY
from twoterm.algebras import TwoTermAlg, require_two_term
from twoterm.homs import TwoTermHom, verify_hom


def functor_T(alg: TwoTermAlg, check: bool = True, jobs: int | None = None) -> TwoAlg:
    """
    The 2-algebra of a 2-term algebra: objects G0, morphisms G0 ⊕ G1,

      [(x, h)_λ (y, k)] = ([x_λ y], ρ₂(x, k) + ρ₂(h, y) + ρ₂(dh, k)),

    and the Leibnizator with K-component −ρ₃.
    """
    if check:
        require_two_term(alg, jobs=jobs)
    space = TwoVectorSpace(alg.g0, alg.g1, alg.d, name=alg.name)
    c1 = space.c1
    lam = Poly.var(BINARY, "l1")
    table = {}
    for piece in (alg.bracket, alg.left, alg.right):
        for key, value in piece.table.items():
            table[key] = value.embed(c1)
    for h in alg.g1.basis:
        dh = apply_linear(alg.d, ModValue.basis(alg.g1, h, BINARY))
        for k in alg.g1.basis:
            table[(h, k)] = bracket(alg.left, dh, ModValue.basis(alg.g1, k, BINARY), lam).embed(c1)
    return TwoAlg(
        space,
        alg.bracket,
        SesqMap([c1, c1], c1, table),
        (-alg.rho3).with_modules([space.c0] * 3, space.k),
    )


def functor_S(alg: TwoAlg, check: bool = True, jobs: int | None = None) -> TwoTermAlg:
    """
    The 2-term algebra K --d--> C0 of a 2-algebra, with the actions read off
    the morphism bracket, ρ₂(x, h) = [(1_x)_λ h] and ρ₂(h, x) = [h_λ 1_x],
    and ρ₃ = −L.
    """
    if check:
        require_two_alg(alg, jobs=jobs)
    c0, k = alg.c0, alg.k
    return TwoTermAlg.from_pieces(
        c0,
        k,
        alg.d,
        alg.bracket0,
        alg.bracket1.restrict([c0, k], k),
        alg.bracket1.restrict([k, c0], k),
        -alg.leibnizator,
        name=alg.name,
    )


def functor_T_hom(hom: TwoTermHom, check: bool = True, jobs: int | None = None) -> TwoAlgHom:
    """
    (f0, f1, f2) ↦ (f0, f0 ⊕ f1, −f2)
    """
    if check:
        report = verify_hom(hom, jobs=jobs)
        if not report.ok:
            raise VerificationError(f"{hom!r} is not a homomorphism", report)
    source = functor_T(hom.source, check=check, jobs=jobs)
    target = functor_T(hom.target, check=check, jobs=jobs)
    return TwoAlgHom(
        source,
        target,
        hom.f0,
        hom.total.with_modules([source.c1], target.c1),
        (-hom.f2).with_modules(None, target.k),
    )


def functor_S_hom(hom: TwoAlgHom, check: bool = True, jobs: int | None = None) -> TwoTermHom:
    """
    F ↦ (F0, F1 on K, −(F2 − 1_{s F2})); the last term is minus the
    K-component of F2.
    """
    if check:
        report = verify_two_alg_hom(hom, jobs=jobs)
        if not report.ok:
            raise VerificationError(f"{hom!r} is not a homomorphism", report)
    source = functor_S(hom.source, check=check, jobs=jobs)
    target = functor_S(hom.target, check=check, jobs=jobs)
    return TwoTermHom(
        source,
        target,
        hom.f0,
        hom.f1.restrict([hom.source.k], hom.target.k),
        -hom.f2,
    )


def alpha_iso(alg: TwoAlg, jobs: int | None = None) -> TwoAlgHom:
    """
    α : T(S(A)) → A, (x, h) ↦ 1_x + h. In split form this is the identity
    table on objects and morphisms, with trivial F2.
    """
    round_trip = functor_T(functor_S(alg, jobs=jobs), check=False)
    return TwoAlgHom(round_trip, alg, SesqMap.identity(alg.c0), SesqMap.identity(alg.c1))


def alpha_inverse(alg: TwoAlg, jobs: int | None = None) -> TwoAlgHom:
    round_trip = functor_T(functor_S(alg, jobs=jobs), check=False)
    return TwoAlgHom(alg, round_trip, SesqMap.identity(alg.c0), SesqMap.identity(alg.c1))
