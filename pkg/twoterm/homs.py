from core.exceptions import ShapeError, VerificationError
from core.modules import ModValue, SesqMap, apply_linear, compose_linear, evaluate, postcompose, precompose
from core.reports import CheckReport
from core.ring import Poly, VarCtx
from core.runner import IdentityCheck, run_checks
from leibniz.algebras import TERNARY, bracket
from leibniz.representations import BINARY
from twoterm.algebras import TwoTermAlg, check_linear, check_piece, differential


class TwoTermHom:
    """
    A homomorphism f = (f0, f1, f2) of 2-term algebras: linear maps on both
    degrees and a binary map f2 : G0 ⊗ G0 → G1' absorbing the failure of f0
    to preserve brackets.
    """

    def __init__(
        self,
        source: TwoTermAlg,
        target: TwoTermAlg,
        f0: SesqMap,
        f1: SesqMap,
        f2: SesqMap | None = None,
    ):
        check_linear(f0, source.g0, target.g0, "f0")
        check_linear(f1, source.g1, target.g1, "f1")
        f2 = f2 if f2 is not None else SesqMap.zero([source.g0, source.g0], target.g1)
        if f2.arity != 2:
            raise ShapeError("f2 is binary")
        check_piece(f2, [source.g0, source.g0], target.g1, "f2")
        self.source = source
        self.target = target
        self.f0 = f0.with_modules([source.g0], target.g0, 0)
        self.f1 = f1.with_modules([source.g1], target.g1, 0)
        self.f2 = f2.with_modules([source.g0, source.g0], target.g1, 1)

    @classmethod
    def validated(cls, *args, jobs: int | None = None, **kwargs) -> "TwoTermHom":
        hom = cls(*args, **kwargs)
        report = verify_hom(hom, jobs=jobs)
        if not report.ok:
            raise VerificationError(
                f"not a homomorphism {hom.source.name} -> {hom.target.name}", report
            )
        return hom

    @property
    def total(self) -> SesqMap:
        """
        f0 ⊕ f1 as one linear map of the total modules.
        """
        module = self.target.module
        table = {}
        for f in (self.f0, self.f1):
            for key, value in f.table.items():
                table[key] = value.embed(module)
        return SesqMap([self.source.module], module, table)

    @property
    def f2_total(self) -> SesqMap:
        source, module = self.source.module, self.target.module
        return SesqMap(
            [source, source],
            module,
            {key: value.embed(module) for key, value in self.f2.table.items()},
            1,
        )

    def __eq__(self, other):
        return (
            isinstance(other, TwoTermHom)
            and self.f0 == other.f0
            and self.f1 == other.f1
            and self.f2 == other.f2
        )

    def __repr__(self):
        return f"<TwoTermHom {self.source.name} -> {self.target.name}>"


def chain_residual(f: TwoTermHom, v: str) -> ModValue:
    """
    d'(f1 v) − f0(d v)
    """
    total = f.total
    vv = ModValue.basis(f.source.module, v, VarCtx())
    return differential(f.target, apply_linear(total, vv)) - apply_linear(total, differential(f.source, vv))


def binary_residual(f: TwoTermHom, identity: str, a: str, b: str) -> ModValue:
    """
    ρ₂'(f a, f b) − f ρ₂(a, b) minus the f2 correction:
    d' f2(x, y) on G0 ⊗ G0, f2(x, dv) on G0 ⊗ G1 and f2(dv, x) on G1 ⊗ G0.
    """
    ctx = BINARY
    lam = Poly.var(ctx, "l1")
    total, f2 = f.total, f.f2_total
    source = f.source.module
    va, vb = ModValue.basis(source, a, ctx), ModValue.basis(source, b, ctx)
    defect = bracket(f.target.rho2, apply_linear(total, va), apply_linear(total, vb), lam) - apply_linear(
        total, bracket(f.source.rho2, va, vb, lam)
    )
    if identity == "hom.bracket":
        correction = differential(f.target, bracket(f2, va, vb, lam))
    elif identity == "hom.left":
        correction = bracket(f2, va, differential(f.source, vb), lam)
    elif identity == "hom.right":
        correction = bracket(f2, differential(f.source, va), vb, lam)
    else:
        raise ShapeError(f"{identity} is not a binary homomorphism condition")
    return defect - correction


def ternary_residual(f: TwoTermHom, x: str, y: str, z: str) -> ModValue:
    """
    ρ₃'(fx, fy, fz) − f1 ρ₃(x, y, z) minus the Leibniz defect of f2 against
    both brackets:

      ρ₂'_λ(fx, f2_μ(y, z)) − ρ₂'_{λ+μ}(f2_λ(x, y), fz) − ρ₂'_μ(fy, f2_λ(x, z))
      + f2_λ(x, ρ₂_μ(y, z)) − f2_{λ+μ}(ρ₂_λ(x, y), z) − f2_μ(y, ρ₂_λ(x, z))
    """
    ctx = TERNARY
    lam, mu = Poly.var(ctx, "l1"), Poly.var(ctx, "l2")
    total, f2 = f.total, f.f2_total
    rho2, rho2_ = f.source.rho2, f.target.rho2
    vx, vy, vz = (ModValue.basis(f.source.module, e, ctx) for e in (x, y, z))
    fx, fy, fz = (apply_linear(total, v) for v in (vx, vy, vz))
    homotopy = evaluate(f.target.rho3_total, [fx, fy, fz], [lam, mu], ctx) - apply_linear(
        total, evaluate(f.source.rho3_total, [vx, vy, vz], [lam, mu], ctx)
    )
    correction = (
        bracket(rho2_, fx, bracket(f2, vy, vz, mu), lam)
        - bracket(rho2_, bracket(f2, vx, vy, lam), fz, lam + mu)
        - bracket(rho2_, fy, bracket(f2, vx, vz, lam), mu)
        + bracket(f2, vx, bracket(rho2, vy, vz, mu), lam)
        - bracket(f2, bracket(rho2, vx, vy, lam), vz, lam + mu)
        - bracket(f2, vy, bracket(rho2, vx, vz, lam), mu)
    )
    return homotopy - correction


def verify_hom(f: TwoTermHom, jobs: int | None = None) -> CheckReport:
    """
    Checks the five homomorphism conditions on basis tuples.
    """
    g0, g1 = f.source.g0.basis, f.source.g1.basis
    checks = [IdentityCheck("hom.chain", (v,), lambda v=v: chain_residual(f, v)) for v in g1]
    for identity, pairs in [
        ("hom.bracket", [(x, y) for x in g0 for y in g0]),
        ("hom.left", [(x, v) for x in g0 for v in g1]),
        ("hom.right", [(v, x) for v in g1 for x in g0]),
    ]:
        checks += [
            IdentityCheck(identity, (a, b), lambda identity=identity, a=a, b=b: binary_residual(f, identity, a, b))
            for a, b in pairs
        ]
    checks += [
        IdentityCheck("hom.ternary", (x, y, z), lambda x=x, y=y, z=z: ternary_residual(f, x, y, z))
        for x in g0
        for y in g0
        for z in g0
    ]
    return run_checks(checks, jobs=jobs, name="verify_hom")


def compose_hom(g: TwoTermHom, f: TwoTermHom) -> TwoTermHom:
    """
    g ∘ f = (g0 f0, g1 f1, g2 ∘ (f0 ⊗ f0) + g1 ∘ f2)
    """
    if f.target.module.basis != g.source.module.basis:
        raise ShapeError(f"cannot compose through {f.target.name} and {g.source.name}")
    return TwoTermHom(
        f.source,
        g.target,
        compose_linear(g.f0, f.f0),
        compose_linear(g.f1, f.f1),
        precompose(g.f2, [f.f0, f.f0]) + postcompose(g.f1, f.f2),
    )


def id_hom(alg: TwoTermAlg) -> TwoTermHom:
    return TwoTermHom(alg, alg, SesqMap.identity(alg.g0), SesqMap.identity(alg.g1))
