from core.exceptions import NotStrictError, ShapeError, VerificationError
from core.modules import ModValue, SesqMap, apply_linear
from core.reports import CheckReport
from core.ring import Poly
from core.runner import IdentityCheck, run_checks
from leibniz.algebras import TERNARY, LeibnizConfAlg, bracket, leibniz_residual, verify_morphism
from leibniz.representations import BINARY, verify_rep
from twoterm.algebras import TwoTermAlg, check_linear, check_piece


class CrossedModule:
    """
    A crossed module (g, h, d, Φˡ, Φʳ): a morphism d : g → h of Leibniz
    conformal algebras and actions of h on g from both sides.

    g becomes the degree 1 part of the corresponding strict algebra and h
    the degree 0 part, so their basis names must be disjoint.
    """

    def __init__(
        self,
        g: LeibnizConfAlg,
        h: LeibnizConfAlg,
        d: SesqMap,
        phi_l: SesqMap,
        phi_r: SesqMap,
    ):
        check_linear(d, g.module, h.module, "d")
        if phi_l.arity != 2 or phi_r.arity != 2:
            raise ShapeError("actions are binary")
        check_piece(phi_l, [h.module, g.module], g.module, "Φˡ")
        check_piece(phi_r, [g.module, h.module], g.module, "Φʳ")
        self.g = g
        self.h = h
        self.d = d.with_modules([g.module], h.module, 0)
        self.phi_l = phi_l.with_modules([h.module, g.module], g.module)
        self.phi_r = phi_r.with_modules([g.module, h.module], g.module)

    @classmethod
    def validated(cls, *args, jobs: int | None = None, **kwargs) -> "CrossedModule":
        crossed = cls(*args, **kwargs)
        report = verify_crossed(crossed, jobs=jobs)
        if not report.ok:
            raise VerificationError(f"{crossed!r} is not a crossed module", report)
        return crossed

    def __eq__(self, other):
        return (
            isinstance(other, CrossedModule)
            and self.g == other.g
            and self.h == other.h
            and self.d == other.d
            and self.phi_l == other.phi_l
            and self.phi_r == other.phi_r
        )

    def __repr__(self):
        return f"<CrossedModule {self.g.name} -> {self.h.name}>"


def d_left_residual(crossed: CrossedModule, h: str, x: str) -> ModValue:
    """
    d Φˡ_λ(h, x) − [h_λ dx]^h
    """
    lam = Poly.var(BINARY, "l1")
    vh = ModValue.basis(crossed.h.module, h, BINARY)
    vx = ModValue.basis(crossed.g.module, x, BINARY)
    return apply_linear(crossed.d, bracket(crossed.phi_l, vh, vx, lam)) - bracket(
        crossed.h.bracket, vh, apply_linear(crossed.d, vx), lam
    )


def d_right_residual(crossed: CrossedModule, x: str, h: str) -> ModValue:
    """
    d Φʳ_λ(x, h) − [dx_λ h]^h
    """
    lam = Poly.var(BINARY, "l1")
    vx = ModValue.basis(crossed.g.module, x, BINARY)
    vh = ModValue.basis(crossed.h.module, h, BINARY)
    return apply_linear(crossed.d, bracket(crossed.phi_r, vx, vh, lam)) - bracket(
        crossed.h.bracket, apply_linear(crossed.d, vx), vh, lam
    )


def peiffer_residual(crossed: CrossedModule, side: str, x: str, y: str) -> ModValue:
    """
    Φˡ_λ(dx, y) − [x_λ y]^g on the left, Φʳ_λ(x, dy) − [x_λ y]^g on the right.
    """
    lam = Poly.var(BINARY, "l1")
    vx, vy = (ModValue.basis(crossed.g.module, e, BINARY) for e in (x, y))
    if side == "left":
        acted = bracket(crossed.phi_l, apply_linear(crossed.d, vx), vy, lam)
    else:
        acted = bracket(crossed.phi_r, vx, apply_linear(crossed.d, vy), lam)
    return acted - bracket(crossed.g.bracket, vx, vy, lam)


def right_compat_residual(crossed: CrossedModule, x: str, y: str, h: str) -> ModValue:
    """
    [x_λ Φʳ_μ(y, h)] − Φʳ_{λ+μ}([x_λ y], h) − [y_μ Φʳ_λ(x, h)]
    """
    lam, mu = Poly.var(TERNARY, "l1"), Poly.var(TERNARY, "l2")
    vx, vy = (ModValue.basis(crossed.g.module, e, TERNARY) for e in (x, y))
    vh = ModValue.basis(crossed.h.module, h, TERNARY)
    g, phi_r = crossed.g.bracket, crossed.phi_r
    return (
        bracket(g, vx, bracket(phi_r, vy, vh, mu), lam)
        - bracket(phi_r, bracket(g, vx, vy, lam), vh, lam + mu)
        - bracket(g, vy, bracket(phi_r, vx, vh, lam), mu)
    )


def left_compat_residual(crossed: CrossedModule, x: str, h: str, y: str) -> ModValue:
    """
    [x_λ Φˡ_μ(h, y)] − [Φʳ_λ(x, h)_{λ+μ} y] − Φˡ_μ(h, [x_λ y])
    """
    lam, mu = Poly.var(TERNARY, "l1"), Poly.var(TERNARY, "l2")
    vx, vy = (ModValue.basis(crossed.g.module, e, TERNARY) for e in (x, y))
    vh = ModValue.basis(crossed.h.module, h, TERNARY)
    g = crossed.g.bracket
    return (
        bracket(g, vx, bracket(crossed.phi_l, vh, vy, mu), lam)
        - bracket(g, bracket(crossed.phi_r, vx, vh, lam), vy, lam + mu)
        - bracket(crossed.phi_l, vh, bracket(g, vx, vy, lam), mu)
    )


def left_bracket_residual(crossed: CrossedModule, h: str, x: str, y: str) -> ModValue:
    """
    Φˡ_λ(h, [x_μ y]) − [Φˡ_λ(h, x)_{λ+μ} y] − [x_μ Φˡ_λ(h, y)]
    """
    lam, mu = Poly.var(TERNARY, "l1"), Poly.var(TERNARY, "l2")
    vx, vy = (ModValue.basis(crossed.g.module, e, TERNARY) for e in (x, y))
    vh = ModValue.basis(crossed.h.module, h, TERNARY)
    g, phi_l = crossed.g.bracket, crossed.phi_l
    return (
        bracket(phi_l, vh, bracket(g, vx, vy, mu), lam)
        - bracket(g, bracket(phi_l, vh, vx, lam), vy, lam + mu)
        - bracket(g, vx, bracket(phi_l, vh, vy, lam), mu)
    )


def verify_crossed(crossed: CrossedModule, jobs: int | None = None) -> CheckReport:
    """
    Checks that g and h are Leibniz, d is a morphism, Φˡ and Φʳ make g a
    representation of h, and the six compatibility equations, all on basis
    tuples.
    """
    g, h = crossed.g.module.basis, crossed.h.module.basis
    checks = []
    for alg, identity in [(crossed.g, "crossed.g-leibniz"), (crossed.h, "crossed.h-leibniz")]:
        basis = alg.module.basis
        checks += [
            IdentityCheck(identity, (x, y, z), lambda alg=alg, x=x, y=y, z=z: leibniz_residual(alg.bracket, x, y, z))
            for x in basis
            for y in basis
            for z in basis
        ]
    for x in g:
        for a in h:
            checks.append(IdentityCheck("crossed.d-left", (a, x), lambda a=a, x=x: d_left_residual(crossed, a, x)))
            checks.append(IdentityCheck("crossed.d-right", (x, a), lambda a=a, x=x: d_right_residual(crossed, x, a)))
    for side in ("left", "right"):
        checks += [
            IdentityCheck(
                f"crossed.peiffer-{side}", (x, y), lambda side=side, x=x, y=y: peiffer_residual(crossed, side, x, y)
            )
            for x in g
            for y in g
        ]
    ternary = [
        ("crossed.right-compat", lambda x, y, a: (x, y, a), right_compat_residual),
        ("crossed.left-compat", lambda x, y, a: (x, a, y), left_compat_residual),
        ("crossed.left-bracket", lambda x, y, a: (a, x, y), left_bracket_residual),
    ]
    for identity, arrange, residual in ternary:
        for x in g:
            for y in g:
                for a in h:
                    key = arrange(x, y, a)
                    checks.append(
                        IdentityCheck(identity, key, lambda residual=residual, key=key: residual(crossed, *key))
                    )
    report = run_checks(checks, jobs=jobs, name="verify_crossed")
    report.extend(verify_morphism(crossed.g, crossed.h, crossed.d, jobs=jobs, identity="crossed.morphism"))
    report.extend(verify_rep(crossed.h, crossed.g.module, crossed.phi_l, crossed.phi_r, jobs=jobs))
    return report


def strict_to_crossed(alg: TwoTermAlg) -> CrossedModule:
    """
    (G1, G0, d, ρ₂, ρ₂) with the bracket [u_λ v]¹ = ρ₂(du, v) on G1.
    """
    if not alg.is_strict:
        raise NotStrictError()
    lam = Poly.var(BINARY, "l1")
    table = {}
    for u in alg.g1.basis:
        du = apply_linear(alg.d_total, ModValue.basis(alg.module, u, BINARY))
        for v in alg.g1.basis:
            value = bracket(alg.rho2, du, ModValue.basis(alg.module, v, BINARY), lam)
            table[(u, v)] = value.project(alg.g1)
    g = LeibnizConfAlg(alg.g1, SesqMap([alg.g1, alg.g1], alg.g1, table))
    h = alg.leibniz()
    return CrossedModule(g, h, alg.d, alg.left, alg.right)


def crossed_to_strict(crossed: CrossedModule, name: str | None = None) -> TwoTermAlg:
    """
    The strict algebra g --d--> h with ρ₂ given by the bracket of h and the
    two actions, and ρ₃ = 0.
    """
    return TwoTermAlg.from_pieces(
        crossed.h.module,
        crossed.g.module,
        crossed.d,
        crossed.h.bracket,
        crossed.phi_l,
        crossed.phi_r,
        None,
        name=name,
    )
