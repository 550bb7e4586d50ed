from categorified.spaces import TwoVectorSpace
from core.exceptions import ShapeError, VerificationError
from core.modules import ModValue, SesqMap, apply_linear, evaluate
from core.reports import CheckReport
from core.ring import Poly, VarCtx
from core.runner import IdentityCheck, run_checks
from leibniz.algebras import TERNARY, bracket, leibniz_residual
from leibniz.representations import BINARY
from twoterm.algebras import check_piece

#: λ, μ and ν of the coherence hexagon are l1, l2 and l3.
QUATERNARY = VarCtx.standard(3)


def nested(phi: SesqMap, a: ModValue, b: ModValue, c: ModValue, lam: Poly, mu: Poly) -> ModValue:
    """
    [a_λ [b_μ c]]
    """
    return bracket(phi, a, bracket(phi, b, c, mu), lam)


def rebracketed(phi: SesqMap, a: ModValue, b: ModValue, c: ModValue, lam: Poly, mu: Poly) -> ModValue:
    """
    [[a_λ b]_{λ+μ} c] + [b_μ [a_λ c]]
    """
    return bracket(phi, bracket(phi, a, b, lam), c, lam + mu) + bracket(phi, b, bracket(phi, a, c, lam), mu)


class TwoAlg:
    """
    A Leibniz conformal 2-algebra on a split 2-vector space: a bracket on
    objects, a bracket on morphisms, and the Leibnizator

      L_{x,y,z} : [x_λ [y_μ z]] → [[x_λ y]_{λ+μ} z] + [y_μ [x_λ z]],

    stored as its K-component, so that the morphism itself is
    i([x_λ [y_μ z]]) + L(x, y, z).
    """

    def __init__(
        self,
        space: TwoVectorSpace,
        bracket0: SesqMap | None = None,
        bracket1: SesqMap | None = None,
        leibnizator: SesqMap | None = None,
    ):
        c0, c1, k = space.c0, space.c1, space.k
        bracket0 = bracket0 if bracket0 is not None else SesqMap.zero([c0, c0], c0)
        bracket1 = bracket1 if bracket1 is not None else SesqMap.zero([c1, c1], c1)
        leibnizator = leibnizator if leibnizator is not None else SesqMap.zero([c0, c0, c0], k)
        if bracket0.arity != 2 or bracket1.arity != 2:
            raise ShapeError("brackets are binary")
        if leibnizator.arity != 3:
            raise ShapeError("the Leibnizator is ternary")
        check_piece(bracket0, [c0, c0], c0, "the object bracket")
        check_piece(bracket1, [c1, c1], c1, "the morphism bracket")
        check_piece(leibnizator, [c0, c0, c0], k, "the Leibnizator")
        self.space = space
        self.bracket0 = bracket0.with_modules([c0, c0], c0)
        self.bracket1 = bracket1.with_modules([c1, c1], c1)
        self.leibnizator = leibnizator.with_modules([c0, c0, c0], k)

    @classmethod
    def validated(cls, *args, jobs: int | None = None, **kwargs) -> "TwoAlg":
        alg = cls(*args, **kwargs)
        require_two_alg(alg, jobs=jobs)
        return alg

    @property
    def name(self) -> str:
        return self.space.name

    @property
    def c0(self):
        return self.space.c0

    @property
    def c1(self):
        return self.space.c1

    @property
    def k(self):
        return self.space.k

    @property
    def d(self) -> SesqMap:
        return self.space.d

    def leibnizator_morphism(self, a: ModValue, b: ModValue, c: ModValue, lam: Poly, mu: Poly) -> ModValue:
        """
        L_{a,b,c} as a morphism, on object values sharing the parameters'
        context.
        """
        source = nested(self.bracket0, a, b, c, lam, mu)
        return self.space.unit(source) + self.space.embed(self.leibnizator_k(a, b, c, lam, mu))

    def leibnizator_k(self, a: ModValue, b: ModValue, c: ModValue, lam: Poly, mu: Poly) -> ModValue:
        return evaluate(self.leibnizator, [a, b, c], [lam, mu], lam.ctx)

    def __eq__(self, other):
        return (
            isinstance(other, TwoAlg)
            and self.space == other.space
            and self.bracket0 == other.bracket0
            and self.bracket1 == other.bracket1
            and self.leibnizator == other.leibnizator
        )

    def __repr__(self):
        return f"<TwoAlg {self.name}>"


def functor_residual(alg: TwoAlg, identity: str, f: str, g: str) -> ModValue:
    """
    The bracket of morphisms against s, t and i:

      2alg.source  s[f_λ g] − [sf_λ sg]
      2alg.target  t[f_λ g] − [tf_λ tg]
      2alg.unit    [if_λ ig] − i[f_λ g]    (f, g objects)
    """
    space = alg.space
    lam = Poly.var(BINARY, "l1")
    if identity == "2alg.unit":
        vf, vg = (ModValue.basis(alg.c0, e, BINARY) for e in (f, g))
        return bracket(alg.bracket1, space.unit(vf), space.unit(vg), lam) - space.unit(
            bracket(alg.bracket0, vf, vg, lam)
        )
    vf, vg = (ModValue.basis(alg.c1, e, BINARY) for e in (f, g))
    if identity == "2alg.source":
        end = space.s
    elif identity == "2alg.target":
        end = space.t
    else:
        raise ShapeError(f"{identity} is not a functoriality condition")
    return end(bracket(alg.bracket1, vf, vg, lam)) - bracket(alg.bracket0, end(vf), end(vg), lam)


def composition_residual(alg: TwoAlg, f: str, g: str, k: str, k2: str) -> ModValue:
    """
    [m(f, f')_λ m(g, g')] − m([f_λ g], [f'_λ g']) with f' = i(tf) + k and
    g' = i(tg) + k2.
    """
    space = alg.space
    lam = Poly.var(BINARY, "l1")
    f1, f2 = space.composable(f, k, BINARY)
    g1, g2 = space.composable(g, k2, BINARY)
    composed = bracket(alg.bracket1, space.compose(f1, f2, check=False), space.compose(g1, g2, check=False), lam)
    return composed - space.compose(
        bracket(alg.bracket1, f1, g1, lam), bracket(alg.bracket1, f2, g2, lam), check=False
    )


def leibnizator_target_residual(alg: TwoAlg, x: str, y: str, z: str) -> ModValue:
    """
    t(L_{x,y,z}) − [[x_λ y]_{λ+μ} z] − [y_μ [x_λ z]]
    """
    lam, mu = Poly.var(TERNARY, "l1"), Poly.var(TERNARY, "l2")
    vx, vy, vz = (ModValue.basis(alg.c0, e, TERNARY) for e in (x, y, z))
    return leibniz_residual(alg.bracket0, x, y, z) + apply_linear(
        alg.d, alg.leibnizator_k(vx, vy, vz, lam, mu)
    )


def naturality_residual(alg: TwoAlg, slot: int, key: tuple[str, str, str]) -> ModValue:
    """
    Naturality of L against the morphism (0, h) in one slot and identities
    in the others, read on K:

      [·_λ [·_μ ·]] applied to the morphisms, then L at the targets, equals
      L at the sources (zero), then the rebracketed morphisms.
    """
    space = alg.space
    lam, mu = Poly.var(TERNARY, "l1"), Poly.var(TERNARY, "l2")
    morphisms, targets = [], []
    for position, element in enumerate(key):
        if position == slot:
            h = ModValue.basis(alg.k, element, TERNARY)
            morphisms.append(space.embed(h))
            targets.append(apply_linear(alg.d, h))
        else:
            v = ModValue.basis(alg.c0, element, TERNARY)
            morphisms.append(space.unit(v))
            targets.append(v)
    before = space.kernel_part(nested(alg.bracket1, *morphisms, lam, mu))
    after = space.kernel_part(rebracketed(alg.bracket1, *morphisms, lam, mu))
    return before + alg.leibnizator_k(*targets, lam, mu) - after


def hexagon_residual(alg: TwoAlg, x: str, y: str, z: str, w: str) -> ModValue:
    """
    The coherence hexagon for L on four objects, read on K. Both paths run
    from [x_λ [y_μ [z_ν w]]] to the fully rebracketed sum; the K-part of a
    composite is the sum of the K-parts.
    """
    space = alg.space
    lam, mu, nu = (Poly.var(QUATERNARY, name) for name in ("l1", "l2", "l3"))
    vx, vy, vz, vw = (ModValue.basis(alg.c0, e, QUATERNARY) for e in (x, y, z, w))
    b0, b1 = alg.bracket0, alg.bracket1
    unit, k_part = space.unit, space.kernel_part

    big_l, morphism = alg.leibnizator_k, alg.leibnizator_morphism

    one_side = (
        k_part(bracket(b1, unit(vx), morphism(vy, vz, vw, mu, nu), lam))
        + big_l(vx, bracket(b0, vy, vz, mu), vw, lam, mu + nu)
        + big_l(vx, vz, bracket(b0, vy, vw, mu), lam, nu)
        + k_part(bracket(b1, morphism(vx, vy, vz, lam, mu), unit(vw), lam + mu + nu))
        + k_part(bracket(b1, unit(vz), morphism(vx, vy, vw, lam, mu), nu))
    )
    other_side = (
        big_l(vx, vy, bracket(b0, vz, vw, nu), lam, mu)
        + k_part(bracket(b1, unit(vy), morphism(vx, vz, vw, lam, nu), mu))
        + big_l(bracket(b0, vx, vy, lam), vz, vw, lam + mu, nu)
        + big_l(vy, bracket(b0, vx, vz, lam), vw, mu, lam + nu)
        + big_l(vy, vz, bracket(b0, vx, vw, lam), mu, nu)
    )
    return one_side - other_side


def two_alg_checks(alg: TwoAlg) -> list[IdentityCheck]:
    c0, c1 = alg.c0.basis, alg.c1.basis
    choices = alg.space.kernel_choices()
    checks = []
    for identity, elements in [("2alg.source", c1), ("2alg.target", c1), ("2alg.unit", c0)]:
        checks += [
            IdentityCheck(identity, (f, g), lambda identity=identity, f=f, g=g: functor_residual(alg, identity, f, g))
            for f in elements
            for g in elements
        ]
    checks += [
        IdentityCheck(
            "2alg.composition",
            (f, g, k, k2),
            lambda f=f, g=g, k=k, k2=k2: composition_residual(alg, f, g, k, k2),
        )
        for f in c1
        for g in c1
        for k in choices
        for k2 in choices
    ]
    checks += [
        IdentityCheck(
            "2alg.leibnizator-target",
            (x, y, z),
            lambda x=x, y=y, z=z: leibnizator_target_residual(alg, x, y, z),
        )
        for x in c0
        for y in c0
        for z in c0
    ]
    for slot in range(3):
        for h in alg.k.basis:
            for a in c0:
                for b in c0:
                    key = (a, b)[:slot] + (h,) + (a, b)[slot:]
                    checks.append(
                        IdentityCheck(
                            "2alg.naturality", key, lambda slot=slot, key=key: naturality_residual(alg, slot, key)
                        )
                    )
    checks += [
        IdentityCheck("2alg.hexagon", (x, y, z, w), lambda x=x, y=y, z=z, w=w: hexagon_residual(alg, x, y, z, w))
        for x in c0
        for y in c0
        for z in c0
        for w in c0
    ]
    return checks


def verify_two_alg(alg: TwoAlg, jobs: int | None = None) -> CheckReport:
    """
    Checks that the bracket is a functor, that L has the right target and is
    natural, and that L is coherent, all on basis data.
    """
    return run_checks(two_alg_checks(alg), jobs=jobs, name="verify_two_alg")


def require_two_alg(alg: TwoAlg, jobs: int | None = None) -> CheckReport:
    report = verify_two_alg(alg, jobs=jobs)
    if not report.ok:
        raise VerificationError(f"{alg.name} is not a Leibniz conformal 2-algebra", report)
    return report
