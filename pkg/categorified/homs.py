from categorified.algebras import TwoAlg
from core.exceptions import ShapeError, VerificationError
from core.modules import ModValue, SesqMap, apply_linear, compose_linear, evaluate, postcompose, precompose
from core.reports import CheckReport
from core.ring import Poly, VarCtx
from core.runner import IdentityCheck, run_checks
from leibniz.algebras import TERNARY, bracket
from leibniz.representations import BINARY
from twoterm.algebras import check_linear, check_piece


class TwoAlgHom:
    """
    A homomorphism F = (F0, F1, F2) of Leibniz conformal 2-algebras: a
    linear functor (F0, F1) and the natural isomorphism

      F2^{x,y} : [F0x_λ F0y]' → F0[x_λ y],

    stored as its K'-component, as the Leibnizator is.
    """

    def __init__(
        self,
        source: TwoAlg,
        target: TwoAlg,
        f0: SesqMap,
        f1: SesqMap,
        f2: SesqMap | None = None,
    ):
        check_linear(f0, source.c0, target.c0, "F0")
        check_linear(f1, source.c1, target.c1, "F1")
        f2 = f2 if f2 is not None else SesqMap.zero([source.c0, source.c0], target.k)
        if f2.arity != 2:
            raise ShapeError("F2 is binary")
        check_piece(f2, [source.c0, source.c0], target.k, "F2")
        self.source = source
        self.target = target
        self.f0 = f0.with_modules([source.c0], target.c0, 0)
        self.f1 = f1.with_modules([source.c1], target.c1, 0)
        self.f2 = f2.with_modules([source.c0, source.c0], target.k, 0)

    @classmethod
    def validated(cls, *args, jobs: int | None = None, **kwargs) -> "TwoAlgHom":
        hom = cls(*args, **kwargs)
        report = verify_two_alg_hom(hom, jobs=jobs)
        if not report.ok:
            raise VerificationError(
                f"not a homomorphism of 2-algebras {hom.source.name} -> {hom.target.name}", report
            )
        return hom

    def f2_k(self, a: ModValue, b: ModValue, lam: Poly) -> ModValue:
        return evaluate(self.f2, [a, b], [lam], lam.ctx)

    def f2_morphism(self, a: ModValue, b: ModValue, lam: Poly) -> ModValue:
        """
        F2^{a,b} as a morphism of the target.
        """
        space = self.target.space
        source = bracket(self.target.bracket0, apply_linear(self.f0, a), apply_linear(self.f0, b), lam)
        return space.unit(source) + space.embed(self.f2_k(a, b, lam))

    def __eq__(self, other):
        return (
            isinstance(other, TwoAlgHom)
            and self.f0 == other.f0
            and self.f1 == other.f1
            and self.f2 == other.f2
        )

    def __repr__(self):
        return f"<TwoAlgHom {self.source.name} -> {self.target.name}>"


def functor_residual(hom: TwoAlgHom, identity: str, element: str) -> ModValue:
    """
      2hom.source  s'(F1 f) − F0(s f)
      2hom.target  t'(F1 f) − F0(t f)
      2hom.unit    F1(i x) − i'(F0 x)
    """
    plain = VarCtx()
    space, space_ = hom.source.space, hom.target.space
    if identity == "2hom.unit":
        vx = ModValue.basis(hom.source.c0, element, plain)
        return apply_linear(hom.f1, space.unit(vx)) - space_.unit(apply_linear(hom.f0, vx))
    vf = ModValue.basis(hom.source.c1, element, plain)
    if identity == "2hom.source":
        return space_.s(apply_linear(hom.f1, vf)) - apply_linear(hom.f0, space.s(vf))
    if identity == "2hom.target":
        return space_.t(apply_linear(hom.f1, vf)) - apply_linear(hom.f0, space.t(vf))
    raise ShapeError(f"{identity} is not a functoriality condition")


def composition_residual(hom: TwoAlgHom, f: str, k: str) -> ModValue:
    """
    F1(m(f, f')) − m'(F1 f, F1 f')
    """
    space, space_ = hom.source.space, hom.target.space
    first, second = space.composable(f, k)
    return apply_linear(hom.f1, space.compose(first, second)) - space_.compose(
        apply_linear(hom.f1, first), apply_linear(hom.f1, second), check=False
    )


def f2_target_residual(hom: TwoAlgHom, x: str, y: str) -> ModValue:
    """
    t'(F2^{x,y}) − F0[x_λ y]
    """
    lam = Poly.var(BINARY, "l1")
    vx, vy = (ModValue.basis(hom.source.c0, e, BINARY) for e in (x, y))
    return hom.target.space.t(hom.f2_morphism(vx, vy, lam)) - apply_linear(
        hom.f0, bracket(hom.source.bracket0, vx, vy, lam)
    )


def naturality_residual(hom: TwoAlgHom, slot: int, key: tuple[str, str]) -> ModValue:
    """
    Naturality of F2 against (0, h) in one slot and an identity in the
    other, read on K'.
    """
    lam = Poly.var(BINARY, "l1")
    source, target = hom.source, hom.target
    morphisms, targets = [], []
    for position, element in enumerate(key):
        if position == slot:
            h = ModValue.basis(source.k, element, BINARY)
            morphisms.append(source.space.embed(h))
            targets.append(apply_linear(source.d, h))
        else:
            v = ModValue.basis(source.c0, element, BINARY)
            morphisms.append(source.space.unit(v))
            targets.append(v)
    images = [apply_linear(hom.f1, m) for m in morphisms]
    before = target.space.kernel_part(bracket(target.bracket1, *images, lam))
    after = target.space.kernel_part(apply_linear(hom.f1, bracket(source.bracket1, *morphisms, lam)))
    return before + hom.f2_k(*targets, lam) - after


def square_residual(hom: TwoAlgHom, x: str, y: str, z: str) -> ModValue:
    """
    The two composites [F0x_λ [F0y_μ F0z]]' → F0([[x_λ y]_{λ+μ} z] + [y_μ [x_λ z]]),
    one through F2 and F1(L), the other through L' and F2, read on K'.
    """
    lam, mu = Poly.var(TERNARY, "l1"), Poly.var(TERNARY, "l2")
    source, target = hom.source, hom.target
    b0 = source.bracket0
    space_ = target.space
    k_part, unit_ = space_.kernel_part, space_.unit
    vx, vy, vz = (ModValue.basis(source.c0, e, TERNARY) for e in (x, y, z))
    fx, fy, fz = (apply_linear(hom.f0, v) for v in (vx, vy, vz))
    b1_ = target.bracket1
    through_f1 = (
        k_part(bracket(b1_, unit_(fx), hom.f2_morphism(vy, vz, mu), lam))
        + hom.f2_k(vx, bracket(b0, vy, vz, mu), lam)
        + k_part(apply_linear(hom.f1, source.leibnizator_morphism(vx, vy, vz, lam, mu)))
    )
    through_l = (
        target.leibnizator_k(fx, fy, fz, lam, mu)
        + k_part(bracket(b1_, hom.f2_morphism(vx, vy, lam), unit_(fz), lam + mu))
        + k_part(bracket(b1_, unit_(fy), hom.f2_morphism(vx, vz, lam), mu))
        + hom.f2_k(bracket(b0, vx, vy, lam), vz, lam + mu)
        + hom.f2_k(vy, bracket(b0, vx, vz, lam), mu)
    )
    return through_f1 - through_l


def verify_two_alg_hom(hom: TwoAlgHom, jobs: int | None = None) -> CheckReport:
    """
    Checks that (F0, F1) is a functor, that F2 has the right target and is
    natural, and that F2 is compatible with both Leibnizators.
    """
    source = hom.source
    c0, c1 = source.c0.basis, source.c1.basis
    checks = []
    for identity, elements in [("2hom.source", c1), ("2hom.target", c1), ("2hom.unit", c0)]:
        checks += [
            IdentityCheck(identity, (e,), lambda identity=identity, e=e: functor_residual(hom, identity, e))
            for e in elements
        ]
    checks += [
        IdentityCheck("2hom.composition", (f, k), lambda f=f, k=k: composition_residual(hom, f, k))
        for f in c1
        for k in source.space.kernel_choices()
    ]
    checks += [
        IdentityCheck("2hom.f2-target", (x, y), lambda x=x, y=y: f2_target_residual(hom, x, y))
        for x in c0
        for y in c0
    ]
    for slot in range(2):
        for h in source.k.basis:
            for a in c0:
                key = (h, a) if slot == 0 else (a, h)
                checks.append(
                    IdentityCheck(
                        "2hom.naturality", key, lambda slot=slot, key=key: naturality_residual(hom, slot, key)
                    )
                )
    checks += [
        IdentityCheck("2hom.square", (x, y, z), lambda x=x, y=y, z=z: square_residual(hom, x, y, z))
        for x in c0
        for y in c0
        for z in c0
    ]
    return run_checks(checks, jobs=jobs, name="verify_two_alg_hom")


def kernel_map(phi: SesqMap, alg: TwoAlg) -> SesqMap:
    """
    A map valued in K as a map valued in morphisms.
    """
    table = {key: alg.space.embed(value) for key, value in phi.table.items()}
    return SesqMap(phi.sources, alg.c1, table, phi.degree)


def compose_two_alg_hom(g: TwoAlgHom, f: TwoAlgHom) -> TwoAlgHom:
    """
    g ∘ f = (G0 F0, G1 F1, G2 ∘ (F0 ⊗ F0) + K''-part of G1 ∘ F2)
    """
    if f.target.c1.basis != g.source.c1.basis:
        raise ShapeError(f"cannot compose through {f.target.name} and {g.source.name}")
    through = postcompose(g.f1, kernel_map(f.f2, f.target))
    return TwoAlgHom(
        f.source,
        g.target,
        compose_linear(g.f0, f.f0),
        compose_linear(g.f1, f.f1),
        precompose(g.f2, [f.f0, f.f0]) + through.restrict(through.sources, g.target.k),
    )


def identity_two_alg_hom(alg: TwoAlg) -> TwoAlgHom:
    return TwoAlgHom(alg, alg, SesqMap.identity(alg.c0), SesqMap.identity(alg.c1))

