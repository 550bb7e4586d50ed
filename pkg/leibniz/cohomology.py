from collections.abc import Iterator
from itertools import combinations_with_replacement, product

from django.conf import settings

from core.exceptions import DegreeOverflowError, ShapeError
from core.linalg import solve_combination
from core.modules import ModValue, SesqMap, evaluate, standard_params
from core.ring import Poly, VarCtx
from leibniz.algebras import LeibnizConfAlg
from leibniz.representations import ConfRep


class Cochain:
    """
    An element of C^n(g, M). Degree 0 holds a constant representative of
    M/∂M; higher degrees hold an n-ary sesquilinear map g^n → M.
    """

    def __init__(self, degree: int, map: SesqMap | None = None, element: ModValue | None = None):
        if degree < 0:
            raise ShapeError("cochain degrees are non-negative")
        self.degree = degree
        if degree == 0:
            if element is None or map is not None:
                raise ShapeError("0-cochains are module elements")
            if element.ctx.lambda_vars:
                raise ShapeError("0-cochains carry no λ-variables")
            self.element = element.constant_part()
            self.map = None
        else:
            if map is None or element is not None:
                raise ShapeError("cochains of positive degree are sesquilinear maps")
            if map.arity != degree:
                raise ShapeError(f"a {degree}-cochain needs an arity {degree} map")
            self.map = map
            self.element = None

    @classmethod
    def zero(cls, degree: int, alg: LeibnizConfAlg, rep: ConfRep) -> "Cochain":
        if degree == 0:
            return cls(0, element=ModValue.zero(rep.module, VarCtx()))
        return cls(degree, map=SesqMap.zero([alg.module] * degree, rep.module))

    @property
    def is_zero(self) -> bool:
        return self.element.is_zero if self.degree == 0 else self.map.is_zero

    def __add__(self, other: "Cochain") -> "Cochain":
        if other.degree != self.degree:
            raise ShapeError("cochains of different degrees")
        if self.degree == 0:
            return Cochain(0, element=self.element + other.element)
        return Cochain(self.degree, map=self.map + other.map)

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other: "Cochain") -> "Cochain":
        return self + (-other)

    def scale(self, factor) -> "Cochain":
        if self.degree == 0:
            return Cochain(0, element=self.element * factor)
        return Cochain(self.degree, map=self.map.scale(factor))

    def __eq__(self, other):
        if not isinstance(other, Cochain) or other.degree != self.degree:
            return False
        if self.degree == 0:
            return self.element == other.element
        return self.map == other.map

    def __repr__(self):
        return f"<Cochain degree {self.degree}>"


def check_degree(degree: int):
    limit = getattr(settings, "CONFBENCH_MAX_COCHAIN_DEGREE", 4)
    if degree > limit:
        raise DegreeOverflowError(f"cochain degree {degree} exceeds the configured maximum {limit}")


def coboundary_value(alg: LeibnizConfAlg, rep: ConfRep, phi: SesqMap, xs: tuple[str, ...]) -> ModValue:
    """
    (δφ)_{λ1..λn}(x1, …, x(n+1)) for φ of degree n ≥ 1, on basis elements.
    """
    n = phi.arity
    g = alg.module
    ctx = VarCtx.standard(n)
    lambdas = standard_params(ctx)
    args = [ModValue.basis(g, x, ctx) for x in xs]
    result = ModValue.zero(rep.module, ctx)
    # x_i acting from the left on φ with x_i removed
    for i in range(n):
        inner = evaluate(phi, args[:i] + args[i + 1 :], lambdas[:i] + lambdas[i + 1 :], ctx)
        term = evaluate(rep.left, [args[i], inner], [lambdas[i]], ctx)
        result = result + (term if i % 2 == 0 else -term)
    # x_(n+1) acting from the right
    total = Poly.zero(ctx)
    for lam in lambdas:
        total = total + lam
    inner = evaluate(phi, args[:n], lambdas[: n - 1], ctx)
    term = evaluate(rep.right, [inner, args[n]], [total], ctx)
    result = result + (term if (n + 1) % 2 == 0 else -term)
    # [x_i x_j] inserted at position j-1
    for i in range(n + 1):
        for j in range(i + 1, n + 1):
            inserted = evaluate(alg.bracket, [args[i], args[j]], [lambdas[i]], ctx)
            new_args = args[:i] + args[i + 1 : j] + [inserted] + args[j + 1 :]
            if j < n:
                params = lambdas[:i] + lambdas[i + 1 : j] + [lambdas[i] + lambdas[j]] + lambdas[j + 1 :]
            else:
                params = lambdas[:i] + lambdas[i + 1 :]
            term = evaluate(phi, new_args, params, ctx)
            # sign (-1)^(i+1) with i counted from 0
            result = result + (term if i % 2 == 1 else -term)
    return result


def coboundary(alg: LeibnizConfAlg, rep: ConfRep, phi: Cochain) -> Cochain:
    check_degree(phi.degree)
    g = alg.module
    if phi.degree == 0:
        ctx = VarCtx()
        zero = Poly.zero(ctx)
        table = {
            (x,): -evaluate(rep.right, [phi.element, ModValue.basis(g, x, ctx)], [zero], ctx)
            for x in g.basis
        }
        return Cochain(1, map=SesqMap([g], rep.module, table))
    cochain = phi.map.with_modules([g] * phi.degree, rep.module)
    n = phi.degree
    table = {xs: coboundary_value(alg, rep, cochain, xs) for xs in product(g.basis, repeat=n + 1)}
    return Cochain(n + 1, map=SesqMap([g] * (n + 1), rep.module, table))


def is_cocycle(alg: LeibnizConfAlg, rep: ConfRep, phi: Cochain) -> bool:
    return coboundary(alg, rep, phi).is_zero


def is_coboundary_of(alg: LeibnizConfAlg, rep: ConfRep, psi: Cochain, tau: Cochain) -> bool:
    if psi.degree != tau.degree + 1:
        return False
    return coboundary(alg, rep, tau) == psi


def monomials(width: int, max_ddeg: int, max_ldeg: int) -> Iterator[tuple[int, ...]]:
    """
    Exponent vectors (D first) with D-degree ≤ max_ddeg and total λ-degree
    ≤ max_ldeg over `width` λ-variables.
    """
    for d_exp in range(max_ddeg + 1):
        for total in range(max_ldeg + 1 if width else 1):
            for chosen in combinations_with_replacement(range(width), total):
                exps = [0] * width
                for index in chosen:
                    exps[index] += 1
                yield (d_exp, *exps)


def coordinates(cochain: Cochain) -> dict:
    """
    The cochain as a sparse vector over (basis tuple, element, monomial).
    """
    if cochain.degree == 0:
        return {((), e, m): c for e, p in cochain.element.coeffs.items() for m, c in p.terms.items()}
    return {
        (key, e, m): c
        for key, value in cochain.map.table.items()
        for e, p in value.coeffs.items()
        for m, c in p.terms.items()
    }


def unit_cochains(
    alg: LeibnizConfAlg,
    rep: ConfRep,
    degree: int,
    max_ddeg: int,
    max_ldeg: int,
) -> list[Cochain]:
    g, m = alg.module, rep.module
    if degree == 0:
        return [Cochain(0, element=ModValue.basis(m, e)) for e in m.basis]
    ctx = VarCtx.standard(degree - 1)
    units = []
    for key in product(g.basis, repeat=degree):
        for element in m.basis:
            for monom in monomials(degree - 1, max_ddeg, max_ldeg):
                value = ModValue(m, ctx, {element: Poly.from_terms(ctx, {monom: 1})})
                units.append(Cochain(degree, map=SesqMap([g] * degree, m, {key: value})))
    return units


def find_coboundary_preimage(
    alg: LeibnizConfAlg,
    rep: ConfRep,
    psi: Cochain,
    max_ddeg: int | None = None,
    max_ldeg: int | None = None,
) -> Cochain | None:
    """
    Searches for τ with δτ = ψ among cochains whose coefficients have
    D-degree ≤ max_ddeg and total λ-degree ≤ max_ldeg. None means there is
    no such τ within the bounds, not that ψ is not a coboundary.
    """
    if max_ddeg is None:
        max_ddeg = getattr(settings, "CONFBENCH_PREIMAGE_MAX_DDEG", 2)
    if max_ldeg is None:
        max_ldeg = getattr(settings, "CONFBENCH_PREIMAGE_MAX_LDEG", 2)
    if max_ddeg < 1 or max_ldeg < 1:
        raise ShapeError("preimage bounds must be positive")
    if psi.degree < 1:
        raise ShapeError("0-cochains are never coboundaries")
    degree = psi.degree - 1
    if psi.is_zero:
        return Cochain.zero(degree, alg, rep)
    if not is_cocycle(alg, rep, psi):
        return None
    units = unit_cochains(alg, rep, degree, max_ddeg, max_ldeg)
    columns = [coordinates(coboundary(alg, rep, unit)) for unit in units]
    solution = solve_combination(columns, coordinates(psi))
    if solution is None:
        return None
    tau = Cochain.zero(degree, alg, rep)
    for unit, coefficient in zip(units, solution):
        if coefficient:
            tau = tau + unit.scale(coefficient)
    return tau

