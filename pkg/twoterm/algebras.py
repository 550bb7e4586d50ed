from core.exceptions import ShapeError, VerificationError
from core.modules import ConfModule, ModValue, SesqMap, apply_linear, evaluate
from core.reports import CheckReport
from core.ring import Poly
from core.runner import IdentityCheck, run_checks
from homotopy.operations import UNSHIFTED, GradedConfModule, HomotopyOps, check_homogeneous
from leibniz.algebras import TERNARY, LeibnizConfAlg, bracket, leibniz_residual
from leibniz.cohomology import coboundary_value
from leibniz.representations import BINARY, ConfRep

#: The nine defining identities and the arity of the tuples they run over.
IDENTITY_ARITIES = {
    "2term.i": 2,
    "2term.ii": 2,
    "2term.iii": 2,
    "2term.iv": 2,
    "2term.v": 3,
    "2term.vi": 3,
    "2term.vii": 3,
    "2term.viii": 3,
    "2term.ix": 4,
}


def total_module(g0: ConfModule, g1: ConfModule, name: str | None = None) -> GradedConfModule:
    """
    G0 ⊕ G1 with G0 in degree 0 and G1 in degree 1.
    """
    return GradedConfModule.from_components(name or g0.name, {0: g0, 1: g1})


def lift(op: SesqMap, module: ConfModule) -> SesqMap:
    """
    The same table viewed as a map on the total module.
    """
    return SesqMap(
        [module] * op.arity,
        module,
        {key: value.embed(module) for key, value in op.table.items()},
        op.degree,
    )


def check_linear(f: SesqMap, source: ConfModule, target: ConfModule, label: str):
    if f.arity != 1 or f.sources[0].basis != source.basis or f.target.basis != target.basis:
        raise ShapeError(f"{label} must be a linear map {source.name} -> {target.name}")


def check_piece(phi: SesqMap, sources: list[ConfModule], target: ConfModule, label: str):
    if [s.basis for s in phi.sources] != [s.basis for s in sources] or phi.target.basis != target.basis:
        names = " ⊗ ".join(s.name for s in sources)
        raise ShapeError(f"{label} must map {names} -> {target.name}")


class TwoTermAlg:
    """
    A 2-term Leib∞-conformal algebra G1 --d--> G0 with binary operation ρ₂
    and ternary operation ρ₃.

    ρ₂ is kept as one binary map on G = G0 ⊕ G1, so its G1 ⊗ G1 part is zero
    by degree; d and ρ₃ are kept on the components.
    """

    def __init__(
        self,
        g0: ConfModule,
        g1: ConfModule,
        d: SesqMap | None = None,
        rho2: SesqMap | None = None,
        rho3: SesqMap | None = None,
        name: str | None = None,
    ):
        g0 = ConfModule(g0.name, g0.basis)
        g1 = ConfModule(g1.name, g1.basis)
        module = total_module(g0, g1, name)
        d = d if d is not None else SesqMap.zero([g1], g0)
        rho2 = rho2 if rho2 is not None else SesqMap.zero([module, module], module)
        rho3 = rho3 if rho3 is not None else SesqMap.zero([g0, g0, g0], g1)
        check_linear(d, g1, g0, "d")
        if rho2.arity != 2:
            raise ShapeError("ρ₂ is binary")
        check_piece(rho2, [module, module], module, "ρ₂")
        if rho3.arity != 3:
            raise ShapeError("ρ₃ is ternary")
        check_piece(rho3, [g0, g0, g0], g1, "ρ₃")
        self.g0 = g0
        self.g1 = g1
        self.module = module
        self.d = d.with_modules([g1], g0, -1)
        self.rho2 = rho2.with_modules([module, module], module, 0)
        check_homogeneous(self.rho2)
        self.rho3 = rho3.with_modules([g0, g0, g0], g1, 1)
        self.ops = HomotopyOps(module, {1: lift(self.d, module), 2: self.rho2, 3: lift(self.rho3, module)})

    @classmethod
    def from_pieces(
        cls,
        g0: ConfModule,
        g1: ConfModule,
        d: SesqMap | None = None,
        bracket: SesqMap | None = None,
        left: SesqMap | None = None,
        right: SesqMap | None = None,
        rho3: SesqMap | None = None,
        name: str | None = None,
    ) -> "TwoTermAlg":
        """
        Assembles ρ₂ from its G0 ⊗ G0, G0 ⊗ G1 and G1 ⊗ G0 parts.
        """
        module = total_module(g0, g1, name)
        table = {}
        for piece, sources, target, label in [
            (bracket, [g0, g0], g0, "the bracket"),
            (left, [g0, g1], g1, "the left action"),
            (right, [g1, g0], g1, "the right action"),
        ]:
            if piece is None:
                continue
            check_piece(piece, sources, target, label)
            for key, value in piece.table.items():
                table[key] = value.embed(module)
        rho2 = SesqMap([module, module], module, table)
        return cls(g0, g1, d, rho2, rho3, name=name)

    @classmethod
    def from_ops(cls, ops: HomotopyOps, name: str | None = None) -> "TwoTermAlg":
        """
        Reads a Leib∞ structure concentrated in degrees 0 and 1.
        """
        if ops.flavor != UNSHIFTED:
            raise ShapeError("2-term algebras are read from unshifted operations")
        module = ops.module
        if not set(module.support) <= {0, 1}:
            raise ShapeError(f"{module.name} is not concentrated in degrees 0 and 1")
        g0 = ConfModule(f"{module.name}0", module.of_degree(0))
        g1 = ConfModule(f"{module.name}1", module.of_degree(1))
        total = total_module(g0, g1, name or module.name)
        rho2 = SesqMap([total, total], total, {key: value.embed(total) for key, value in ops.op(2).table.items()})
        return cls(
            g0,
            g1,
            ops.op(1).restrict([g1], g0),
            rho2,
            ops.op(3).restrict([g0, g0, g0], g1),
            name=total.name,
        )

    @classmethod
    def validated(cls, *args, jobs: int | None = None, **kwargs) -> "TwoTermAlg":
        alg = cls(*args, **kwargs)
        require_two_term(alg, jobs=jobs)
        return alg

    @property
    def name(self) -> str:
        return self.module.name

    @property
    def bracket(self) -> SesqMap:
        return self.rho2.restrict([self.g0, self.g0], self.g0)

    @property
    def left(self) -> SesqMap:
        return self.rho2.restrict([self.g0, self.g1], self.g1)

    @property
    def right(self) -> SesqMap:
        return self.rho2.restrict([self.g1, self.g0], self.g1)

    @property
    def d_total(self) -> SesqMap:
        return self.ops.op(1)

    @property
    def rho3_total(self) -> SesqMap:
        return self.ops.op(3)

    @property
    def is_skeletal(self) -> bool:
        return self.d.is_zero

    @property
    def is_strict(self) -> bool:
        return self.rho3.is_zero

    def leibniz(self) -> LeibnizConfAlg:
        """
        G0 with the bracket part of ρ₂, taken as given.
        """
        return LeibnizConfAlg(self.g0, self.bracket)

    def representation(self) -> ConfRep:
        """
        G1 with the mixed parts of ρ₂ as actions of G0, taken as given.
        """
        return ConfRep(self.leibniz(), self.g1, self.left, self.right)

    def __eq__(self, other):
        return (
            isinstance(other, TwoTermAlg)
            and self.g0.basis == other.g0.basis
            and self.g1.basis == other.g1.basis
            and self.d == other.d
            and self.rho2 == other.rho2
            and self.rho3 == other.rho3
        )

    def __repr__(self):
        return f"<TwoTermAlg {self.name}: {list(self.g1.basis)} -> {list(self.g0.basis)}>"


def differential(alg: TwoTermAlg, value: ModValue) -> ModValue:
    return apply_linear(alg.d_total, value)


def binary_residual(alg: TwoTermAlg, identity: str, a: str, b: str) -> ModValue:
    """
    The binary identities, with λ = l1:

      i    ρ₂(u, v)
      ii   d ρ₂(x, u) − ρ₂(x, du)
      iii  d ρ₂(u, x) − ρ₂(du, x)
      iv   ρ₂(du, v) − ρ₂(u, dv)
    """
    ctx = BINARY
    lam = Poly.var(ctx, "l1")
    va, vb = ModValue.basis(alg.module, a, ctx), ModValue.basis(alg.module, b, ctx)
    if identity == "2term.i":
        return bracket(alg.rho2, va, vb, lam)
    if identity == "2term.ii":
        return differential(alg, bracket(alg.rho2, va, vb, lam)) - bracket(
            alg.rho2, va, differential(alg, vb), lam
        )
    if identity == "2term.iii":
        return differential(alg, bracket(alg.rho2, va, vb, lam)) - bracket(
            alg.rho2, differential(alg, va), vb, lam
        )
    if identity == "2term.iv":
        return bracket(alg.rho2, differential(alg, va), vb, lam) - bracket(
            alg.rho2, va, differential(alg, vb), lam
        )
    raise ShapeError(f"{identity} is not a binary identity")


def ternary_residual(alg: TwoTermAlg, a: str, b: str, c: str) -> ModValue:
    """
    ρ₃ with d applied to its G1 argument (d ρ₃ when all three lie in G0),
    minus the Leibniz defect of ρ₂; λ = l1, μ = l2.
    """
    ctx = TERNARY
    params = [Poly.var(ctx, "l1"), Poly.var(ctx, "l2")]
    values = [ModValue.basis(alg.module, element, ctx) for element in (a, b, c)]
    if all(alg.module.degrees[element] == 0 for element in (a, b, c)):
        homotopy = differential(alg, evaluate(alg.rho3_total, values, params, ctx))
    else:
        lowered = [differential(alg, v) if alg.module.degrees[e] == 1 else v for e, v in zip((a, b, c), values)]
        homotopy = evaluate(alg.rho3_total, lowered, params, ctx)
    return homotopy - leibniz_residual(alg.rho2, a, b, c)


def leibnizator_residual(alg: TwoTermAlg, key: tuple[str, ...]) -> ModValue:
    """
    The quaternary identity on G0⁴. It says that ρ₃ is closed under the
    Leibniz coboundary of G0 acting on G1.
    """
    return coboundary_value(alg.leibniz(), alg.representation(), alg.rho3, key)


def two_term_checks(alg: TwoTermAlg) -> list[IdentityCheck]:
    g0, g1 = alg.g0.basis, alg.g1.basis
    checks = []

    def binary(identity, pairs):
        for a, b in pairs:
            checks.append(
                IdentityCheck(identity, (a, b), lambda a=a, b=b: binary_residual(alg, identity, a, b))
            )

    binary("2term.i", [(u, v) for u in g1 for v in g1])
    binary("2term.ii", [(x, u) for x in g0 for u in g1])
    binary("2term.iii", [(u, x) for u in g1 for x in g0])
    binary("2term.iv", [(u, v) for u in g1 for v in g1])

    def ternary(identity, triples):
        for key in triples:
            checks.append(IdentityCheck(identity, key, lambda key=key: ternary_residual(alg, *key)))

    ternary("2term.v", [(x, y, z) for x in g0 for y in g0 for z in g0])
    ternary("2term.vi", [(x, y, v) for x in g0 for y in g0 for v in g1])
    ternary("2term.vii", [(x, v, y) for x in g0 for v in g1 for y in g0])
    ternary("2term.viii", [(v, x, y) for v in g1 for x in g0 for y in g0])
    for key in ((x, y, z, w) for x in g0 for y in g0 for z in g0 for w in g0):
        checks.append(IdentityCheck("2term.ix", key, lambda key=key: leibnizator_residual(alg, key)))
    return checks


def verify_two_term(alg: TwoTermAlg, jobs: int | None = None) -> CheckReport:
    """
    Checks the nine defining identities of a 2-term Leib∞-conformal algebra
    on basis tuples.
    """
    return run_checks(two_term_checks(alg), jobs=jobs, name="verify_two_term")


def require_two_term(alg: TwoTermAlg, jobs: int | None = None) -> CheckReport:
    report = verify_two_term(alg, jobs=jobs)
    if not report.ok:
        raise VerificationError(f"{alg.name} is not a 2-term Leib∞-conformal algebra", report)
    return report


def symmetry_residual(alg: TwoTermAlg, a: str, b: str, c: str) -> ModValue:
    """
    ρ₂_{λ+μ}(ρ₂_λ(a, b), c) + ρ₂_{λ+μ}(ρ₂_μ(b, a), c)
    """
    ctx = TERNARY
    lam, mu = Poly.var(ctx, "l1"), Poly.var(ctx, "l2")
    va, vb, vc = (ModValue.basis(alg.module, element, ctx) for element in (a, b, c))
    return bracket(alg.rho2, bracket(alg.rho2, va, vb, lam), vc, lam + mu) + bracket(
        alg.rho2, bracket(alg.rho2, vb, va, mu), vc, lam + mu
    )


def verify_symmetry_identities(alg: TwoTermAlg, jobs: int | None = None) -> CheckReport:
    """
    The symmetric consequences of the ternary identities when both sides'
    ρ₃ terms drop out, as they do for strict and skeletal algebras.
    """
    if not (alg.is_strict or alg.is_skeletal):
        raise ShapeError(f"{alg.name} is neither strict nor skeletal")
    g0, g1 = alg.g0.basis, alg.g1.basis
    checks = [
        IdentityCheck("2term.sym-bracket", (x, y, z), lambda x=x, y=y, z=z: symmetry_residual(alg, x, y, z))
        for x in g0
        for y in g0
        for z in g0
    ]
    checks += [
        IdentityCheck("2term.sym-action", (x, v, y), lambda x=x, v=v, y=y: symmetry_residual(alg, x, v, y))
        for x in g0
        for v in g1
        for y in g0
    ]
    return run_checks(checks, jobs=jobs, name="verify_symmetry_identities")
