from core.exceptions import ShapeError, VerificationError
from core.modules import ConfModule, ModValue, SesqMap
from core.reports import CheckReport
from core.ring import Poly, VarCtx
from core.runner import IdentityCheck, run_checks
from leibniz.algebras import TERNARY, LeibnizConfAlg, bracket

BINARY = VarCtx.standard(1)


class ConfRep:
    """
    A representation M of a Leibniz conformal algebra: a left λ-action
    g ⊗ M → M and a right λ-action M ⊗ g → M.
    """

    def __init__(self, alg: LeibnizConfAlg, module: ConfModule, left: SesqMap, right: SesqMap):
        g = alg.module
        if left.arity != 2 or right.arity != 2:
            raise ShapeError("actions are binary")
        if [s.basis for s in left.sources] != [g.basis, module.basis] or left.target.basis != module.basis:
            raise ShapeError(f"left action must map {g.name} ⊗ {module.name} -> {module.name}")
        if [s.basis for s in right.sources] != [module.basis, g.basis] or right.target.basis != module.basis:
            raise ShapeError(f"right action must map {module.name} ⊗ {g.name} -> {module.name}")
        self.alg = alg
        self.module = module
        self.left = left.with_modules([g, module], module)
        self.right = right.with_modules([module, g], module)

    @classmethod
    def validated(
        cls,
        alg: LeibnizConfAlg,
        module: ConfModule,
        left: SesqMap,
        right: SesqMap,
        jobs: int | None = None,
    ) -> "ConfRep":
        rep = cls(alg, module, left, right)
        report = verify_rep(alg, module, rep.left, rep.right, jobs=jobs)
        if not report.ok:
            raise VerificationError(f"{module.name} is not a representation of {alg.name}", report)
        return rep

    def __eq__(self, other):
        return (
            isinstance(other, ConfRep)
            and self.alg == other.alg
            and self.module == other.module
            and self.left == other.left
            and self.right == other.right
        )

    def __repr__(self):
        return f"<ConfRep {self.module.name} of {self.alg.name}>"


def left_left_residual(rep: ConfRep, x: str, y: str, v: str) -> ModValue:
    """
    x_λ(y_μ v) − [x_λ y]_{λ+μ} v − y_μ(x_λ v)
    """
    g, m, ctx = rep.alg.module, rep.module, TERNARY
    lam, mu = Poly.var(ctx, "l1"), Poly.var(ctx, "l2")
    vx, vy, vv = ModValue.basis(g, x, ctx), ModValue.basis(g, y, ctx), ModValue.basis(m, v, ctx)
    return (
        bracket(rep.left, vx, bracket(rep.left, vy, vv, mu), lam)
        - bracket(rep.left, bracket(rep.alg.bracket, vx, vy, lam), vv, lam + mu)
        - bracket(rep.left, vy, bracket(rep.left, vx, vv, lam), mu)
    )


def left_right_residual(rep: ConfRep, x: str, v: str, y: str) -> ModValue:
    """
    x_λ(v_μ y) − (x_λ v)_{λ+μ} y − v_μ[x_λ y]
    """
    g, m, ctx = rep.alg.module, rep.module, TERNARY
    lam, mu = Poly.var(ctx, "l1"), Poly.var(ctx, "l2")
    vx, vy, vv = ModValue.basis(g, x, ctx), ModValue.basis(g, y, ctx), ModValue.basis(m, v, ctx)
    return (
        bracket(rep.left, vx, bracket(rep.right, vv, vy, mu), lam)
        - bracket(rep.right, bracket(rep.left, vx, vv, lam), vy, lam + mu)
        - bracket(rep.right, vv, bracket(rep.alg.bracket, vx, vy, lam), mu)
    )


def right_bracket_residual(rep: ConfRep, v: str, x: str, y: str) -> ModValue:
    """
    v_λ[x_μ y] − (v_λ x)_{λ+μ} y − x_μ(v_λ y)
    """
    g, m, ctx = rep.alg.module, rep.module, TERNARY
    lam, mu = Poly.var(ctx, "l1"), Poly.var(ctx, "l2")
    vx, vy, vv = ModValue.basis(g, x, ctx), ModValue.basis(g, y, ctx), ModValue.basis(m, v, ctx)
    return (
        bracket(rep.right, vv, bracket(rep.alg.bracket, vx, vy, mu), lam)
        - bracket(rep.right, bracket(rep.right, vv, vx, lam), vy, lam + mu)
        - bracket(rep.left, vx, bracket(rep.right, vv, vy, lam), mu)
    )


def verify_rep(
    alg: LeibnizConfAlg,
    module: ConfModule,
    left: SesqMap,
    right: SesqMap,
    jobs: int | None = None,
) -> CheckReport:
    """
    Checks the three mixed identities of a representation on basis triples.
    The ∂-rules need no check: an action is stored as its table on basis
    pairs and only ever evaluated through its sesquilinear extension.
    """
    rep = ConfRep(alg, module, left, right)
    g, m = alg.module.basis, module.basis
    checks = []
    for x in g:
        for y in g:
            for v in m:
                checks.append(
                    IdentityCheck("rep.left-left", (x, y, v), lambda x=x, y=y, v=v: left_left_residual(rep, x, y, v))
                )
                checks.append(
                    IdentityCheck("rep.left-right", (x, v, y), lambda x=x, y=y, v=v: left_right_residual(rep, x, v, y))
                )
                checks.append(
                    IdentityCheck(
                        "rep.right-bracket", (v, x, y), lambda x=x, y=y, v=v: right_bracket_residual(rep, v, x, y)
                    )
                )
    return run_checks(checks, jobs=jobs, name="verify_rep")
