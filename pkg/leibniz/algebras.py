from core.exceptions import ShapeError, VerificationError
from core.modules import ConfModule, ModValue, SesqMap, apply_linear, eval_sesq, evaluate
from core.reports import CheckReport
from core.ring import Poly, VarCtx, jproducts_to_lambda, lambda_to_jproducts
from core.runner import IdentityCheck, run_checks

#: λ and μ of the ternary identities are l1 and l2 of this context.
TERNARY = VarCtx.standard(2)


def basis_values(module: ConfModule, ctx: VarCtx, *elements: str) -> list[ModValue]:
    return [ModValue.basis(module, element, ctx) for element in elements]


def bracket(phi: SesqMap, left: ModValue, right: ModValue, parameter: Poly) -> ModValue:
    """
    left_Λ right for a binary map, in the parameter's context.
    """
    return evaluate(phi, [left, right], [parameter], parameter.ctx)


class LeibnizConfAlg:
    """
    A C[∂]-module with an endomorphic λ-bracket. The plain constructor takes
    the data as given; `validated` refuses brackets failing the Leibniz
    conformal identity.
    """

    def __init__(self, module: ConfModule, bracket: SesqMap):
        if bracket.arity != 2:
            raise ShapeError("a λ-bracket is binary")
        if any(source.basis != module.basis for source in bracket.sources) or bracket.target.basis != module.basis:
            raise ShapeError(f"bracket is not an endomorphic map of {module.name}")
        self.module = module
        self.bracket = bracket.with_modules([module, module], module)

    @classmethod
    def validated(cls, module: ConfModule, bracket: SesqMap, jobs: int | None = None) -> "LeibnizConfAlg":
        report = verify_leibniz(module, bracket, jobs=jobs)
        if not report.ok:
            raise VerificationError(f"{module.name} is not a Leibniz conformal algebra", report)
        return cls(module, bracket)

    @property
    def name(self) -> str:
        return self.module.name

    def __eq__(self, other):
        return (
            isinstance(other, LeibnizConfAlg)
            and self.module == other.module
            and self.bracket == other.bracket
        )

    def __repr__(self):
        return f"<LeibnizConfAlg {self.name}>"


def leibniz_residual(phi: SesqMap, x: str, y: str, z: str) -> ModValue:
    """
    [x_λ[y_μ z]] − [[x_λ y]_{λ+μ} z] − [y_μ[x_λ z]] on basis elements.
    """
    module = phi.target
    ctx = TERNARY
    lam, mu = Poly.var(ctx, "l1"), Poly.var(ctx, "l2")
    vx, vy, vz = basis_values(module, ctx, x, y, z)
    left = bracket(phi, vx, bracket(phi, vy, vz, mu), lam)
    middle = bracket(phi, bracket(phi, vx, vy, lam), vz, lam + mu)
    right = bracket(phi, vy, bracket(phi, vx, vz, lam), mu)
    return left - middle - right


def verify_leibniz(module: ConfModule, bracket_map: SesqMap, jobs: int | None = None) -> CheckReport:
    """
    Checks the Leibniz conformal identity on every basis triple.
    """
    phi = bracket_map.with_modules([module, module], module)
    checks = [
        IdentityCheck(
            "leibniz.identity",
            (x, y, z),
            lambda x=x, y=y, z=z: leibniz_residual(phi, x, y, z),
        )
        for x in module.basis
        for y in module.basis
        for z in module.basis
    ]
    return run_checks(checks, jobs=jobs, name="verify_leibniz")


def jproducts(phi: SesqMap) -> dict[tuple[str, str], list[ModValue]]:
    """
    The j-th products x_(j) y of a binary bracket, per basis pair; pairs with
    zero bracket are omitted.
    """
    if phi.arity != 2:
        raise ShapeError("j-th products are defined for binary brackets")
    plain = VarCtx()
    result = {}
    for key, value in phi.table.items():
        per_element = {e: lambda_to_jproducts(c) for e, c in value.coeffs.items()}
        top = max(len(products) for products in per_element.values())
        result[key] = [
            ModValue(
                phi.target,
                plain,
                {e: products[j] for e, products in per_element.items() if j < len(products)},
            )
            for j in range(top)
        ]
    return result


def from_jproducts(
    module: ConfModule,
    products: dict[tuple[str, str], list[ModValue]],
) -> SesqMap:
    """
    Reassembles the λ-bracket Σ_j λ^j/j! x_(j) y from its j-th products.
    """
    ctx = VarCtx.standard(1)
    table = {}
    for key, values in products.items():
        coeffs = {}
        for element in module.basis:
            series = [value.coeff(element) for value in values]
            coeffs[element] = jproducts_to_lambda(series, ctx)
        table[key] = ModValue(module, ctx, coeffs)
    return SesqMap([module, module], module, table)


def morphism_residual(g: LeibnizConfAlg, h: LeibnizConfAlg, f: SesqMap, x: str, y: str) -> ModValue:
    ctx = VarCtx.standard(1)
    image = apply_linear(f, eval_sesq(g.bracket, basis_values(g.module, VarCtx(), x, y)))
    fx, fy = (apply_linear(f, v).to_ctx(ctx) for v in basis_values(g.module, VarCtx(), x, y))
    return image - bracket(h.bracket, fx, fy, Poly.var(ctx, "l1"))


def verify_morphism(
    g: LeibnizConfAlg,
    h: LeibnizConfAlg,
    f: SesqMap,
    jobs: int | None = None,
    identity: str = "morphism.bracket",
) -> CheckReport:
    """
    Checks f([x_λ y]) = [f(x)_λ f(y)] on basis pairs for a C[∂]-linear f.
    """
    if f.arity != 1 or f.sources[0].basis != g.module.basis or f.target.basis != h.module.basis:
        raise ShapeError(f"map is not a linear map {g.name} -> {h.name}")
    f = f.with_modules([g.module], h.module)
    checks = [
        IdentityCheck(identity, (x, y), lambda x=x, y=y: morphism_residual(g, h, f, x, y))
        for x in g.module.basis
        for y in g.module.basis
    ]
    return run_checks(checks, jobs=jobs, name="verify_morphism")
