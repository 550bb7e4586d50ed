from collections.abc import Mapping, Sequence

from core.exceptions import RequiresLieError, ShapeError
from core.modules import ConfModule, ModValue, SesqMap, check_skew, direct_sum
from core.ring import Poly, VarCtx, format_rational, rational
from leibniz.algebras import LeibnizConfAlg
from leibniz.representations import ConfRep

ScalarProducts = Mapping[tuple[str, str], Mapping[str, object]]


def adjoint(alg: LeibnizConfAlg) -> ConfRep:
    """
    The algebra as a representation of itself, both actions the bracket.
    """
    return ConfRep(alg, alg.module, alg.bracket, alg.bracket)


def semidirect(lie_alg: LeibnizConfAlg, rep_left: SesqMap, name: str | None = None) -> LeibnizConfAlg:
    """
    The Leibniz conformal algebra on g ⊕ M with
    (x, u)_λ (y, v) = ([x_λ y], x_λ v). Nothing acts on M from the right.
    """
    if not check_skew(lie_alg.bracket):
        raise RequiresLieError()
    g = lie_alg.module
    if rep_left.arity != 2 or rep_left.sources[0].basis != g.basis:
        raise ShapeError(f"the action must have {g.name} as its first source")
    m = rep_left.target
    if rep_left.sources[1].basis != m.basis:
        raise ShapeError("the action must be an endomorphism of its module")
    total = direct_sum(name or f"{g.name}_{m.name}", g, m)
    table = {}
    for key, value in lie_alg.bracket.table.items():
        table[key] = value.embed(total)
    for key, value in rep_left.table.items():
        table[key] = value.embed(total)
    return LeibnizConfAlg(total, SesqMap([total, total], total, table))


def current_algebra(
    basis: Sequence[str],
    products: ScalarProducts,
    name: str = "g",
) -> LeibnizConfAlg:
    """
    The current conformal algebra C[∂] ⊗ A of a finite-dimensional algebra A,
    with the λ-independent bracket [a_λ b] = [a, b].
    """
    module = ConfModule(name, basis)
    ctx = VarCtx.standard(1)
    table = {}
    for (a, b), image in products.items():
        table[(a, b)] = ModValue(
            module,
            ctx,
            {c: Poly.constant(ctx, coefficient) for c, coefficient in image.items()},
        )
    return LeibnizConfAlg(module, SesqMap([module, module], module, table))


def virasoro(name: str = "Vir", element: str = "L") -> LeibnizConfAlg:
    """
    [L_λ L] = (∂ + 2λ) L.
    """
    module = ConfModule(name, [element])
    ctx = VarCtx.standard(1)
    value = ModValue(module, ctx, {element: Poly.derivation(ctx) + Poly.var(ctx, "l1").scale(2)})
    return LeibnizConfAlg(module, SesqMap([module, module], module, {(element, element): value}))


def virasoro_module(
    alg: LeibnizConfAlg,
    name: str = "V",
    element: str = "v",
    weight=1,
    shift=0,
) -> SesqMap:
    """
    The rank-one module L_λ v = (∂ + weight·λ + shift) v of the Virasoro
    conformal algebra.
    """
    (generator,) = alg.module.basis
    module = ConfModule(name, [element])
    ctx = VarCtx.standard(1)
    coefficient = Poly.derivation(ctx) + Poly.var(ctx, "l1").scale(weight) + Poly.constant(ctx, shift)
    return SesqMap(
        [alg.module, module],
        module,
        {(generator, element): ModValue(module, ctx, {element: coefficient})},
    )


class FiniteLeibnizAlgebra:
    """
    A finite-dimensional algebra given by scalar structure constants, with a
    direct check of the left Leibniz identity [a,[b,c]] = [[a,b],c] + [b,[a,c]].
    """

    def __init__(self, basis: Sequence[str], products: ScalarProducts):
        self.basis = tuple(basis)
        self.products = {
            key: {c: rational(v) for c, v in image.items() if v}
            for key, image in products.items()
        }

    @classmethod
    def from_array(cls, basis: Sequence[str], constants) -> "FiniteLeibnizAlgebra":
        """
        constants[i][j][k] is the coefficient of basis k in [basis i, basis j].
        """
        products = {}
        for i, a in enumerate(basis):
            for j, b in enumerate(basis):
                image = {c: constants[i][j][k] for k, c in enumerate(basis) if constants[i][j][k]}
                if image:
                    products[(a, b)] = image
        return cls(basis, products)

    def multiply(self, left: Mapping[str, object], right: Mapping[str, object]) -> dict[str, object]:
        result: dict[str, object] = {}
        for a, ca in left.items():
            for b, cb in right.items():
                for c, cc in self.products.get((a, b), {}).items():
                    result[c] = result.get(c, 0) + ca * cb * cc
        return {c: v for c, v in result.items() if v}

    def leibniz_defects(self) -> dict[tuple[str, str, str], dict[str, object]]:
        defects = {}
        one = rational(1)
        for a in self.basis:
            for b in self.basis:
                for c in self.basis:
                    ea, eb, ec = {a: one}, {b: one}, {c: one}
                    left = self.multiply(ea, self.multiply(eb, ec))
                    right = self.multiply(self.multiply(ea, eb), ec)
                    for key, value in self.multiply(eb, self.multiply(ea, ec)).items():
                        right[key] = right.get(key, 0) + value
                    defect = {k: left.get(k, 0) - right.get(k, 0) for k in {*left, *right}}
                    defect = {k: v for k, v in defect.items() if v}
                    if defect:
                        defects[(a, b, c)] = defect
        return defects

    def is_leibniz(self) -> bool:
        return not self.leibniz_defects()

    def current_algebra(self, name: str = "g") -> LeibnizConfAlg:
        return current_algebra(self.basis, self.products, name)

    def __repr__(self):
        shown = ", ".join(
            f"[{a},{b}]=" + "+".join(f"{format_rational(v)}*{c}" for c, v in image.items())
            for (a, b), image in self.products.items()
        )
        return f"<FiniteLeibnizAlgebra {shown or 'abelian'}>"
