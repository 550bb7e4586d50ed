from core.exceptions import NotCocycleError, NotSkeletalError, ShapeError, VerificationError
from core.modules import SesqMap
from leibniz.algebras import LeibnizConfAlg
from leibniz.cohomology import Cochain, coboundary, find_coboundary_preimage, is_cocycle
from leibniz.representations import ConfRep
from twoterm.algebras import TwoTermAlg
from twoterm.homs import TwoTermHom


def skeletal_to_triple(
    alg: TwoTermAlg, jobs: int | None = None
) -> tuple[LeibnizConfAlg, ConfRep, Cochain]:
    """
    Reads a skeletal algebra as G0, its representation G1 and the 3-cocycle
    ρ₃. Each piece is verified on the way out.
    """
    if not alg.is_skeletal:
        raise NotSkeletalError()
    g = LeibnizConfAlg.validated(alg.g0, alg.bracket, jobs=jobs)
    rep = ConfRep.validated(g, alg.g1, alg.left, alg.right, jobs=jobs)
    theta = Cochain(3, map=alg.rho3)
    if not is_cocycle(g, rep, theta):
        raise NotCocycleError(f"ρ₃ of {alg.name} is not a cocycle")
    return g, rep, theta


def triple_to_skeletal(
    g: LeibnizConfAlg,
    rep: ConfRep,
    theta: Cochain,
    name: str | None = None,
) -> TwoTermAlg:
    if theta.degree != 3:
        raise ShapeError("a skeletal algebra is classified by a 3-cochain")
    if not is_cocycle(g, rep, theta):
        raise NotCocycleError()
    return TwoTermAlg.from_pieces(
        g.module, rep.module, None, g.bracket, rep.left, rep.right, theta.map, name=name
    )


def common_structure(alg: TwoTermAlg, other: TwoTermAlg) -> tuple[LeibnizConfAlg, ConfRep]:
    if not (alg.is_skeletal and other.is_skeletal):
        raise NotSkeletalError()
    if alg.g0.basis != other.g0.basis or alg.g1.basis != other.g1.basis:
        raise ShapeError(f"{alg.name} and {other.name} live on different complexes")
    return alg.leibniz(), alg.representation()


def equivalence_defect(alg: TwoTermAlg, other: TwoTermAlg, tau: SesqMap) -> str | None:
    """
    Why ρ₃' ≠ ρ₃ + δτ, or None when the two skeletal algebras are equivalent
    through τ.
    """
    g, rep = common_structure(alg, other)
    if alg.rho2 != other.rho2:
        return "the binary operations differ"
    if tau.arity != 2:
        raise ShapeError("τ is binary")
    shift = coboundary(g, rep, Cochain(2, map=tau)).map
    if other.rho3 != alg.rho3 + shift:
        return "ρ₃' − ρ₃ is not the coboundary of τ"
    return None


def skeletal_equivalent(alg: TwoTermAlg, other: TwoTermAlg, tau: SesqMap) -> bool:
    return equivalence_defect(alg, other, tau) is None


def find_equivalence(
    alg: TwoTermAlg,
    other: TwoTermAlg,
    max_ddeg: int | None = None,
    max_ldeg: int | None = None,
) -> SesqMap | None:
    """
    Searches for τ with ρ₃' = ρ₃ + δτ within the given coefficient bounds.
    """
    g, rep = common_structure(alg, other)
    if alg.rho2 != other.rho2:
        return None
    difference = Cochain(3, map=other.rho3 - alg.rho3)
    found = find_coboundary_preimage(g, rep, difference, max_ddeg, max_ldeg)
    return None if found is None else found.map


def equivalence_hom(alg: TwoTermAlg, other: TwoTermAlg, tau: SesqMap) -> TwoTermHom:
    """
    The homomorphism (id, id, τ) from alg to other.
    """
    defect = equivalence_defect(alg, other, tau)
    if defect is not None:
        raise VerificationError(defect)
    return TwoTermHom(alg, other, SesqMap.identity(alg.g0), SesqMap.identity(alg.g1), tau)
