from collections.abc import Iterable, Mapping, Sequence
from itertools import product

from core.exceptions import ContextMismatchError, ModuleMismatchError, ShapeError
from core.ring import DERIVATION, IDENTIFIER, Poly, VarCtx, format_poly


class ConfModule:
    """
    A finite free C[∂]-module given by a named, ordered basis.

    Basis elements may carry an integer degree; ungraded modules simply have
    every element in degree 0.
    """

    __slots__ = ("name", "basis", "degrees", "_index")

    def __init__(
        self,
        name: str,
        basis: Iterable[str] = (),
        degrees: Mapping[str, int] | None = None,
    ):
        self.name = name
        self.basis = tuple(basis)
        if len(set(self.basis)) != len(self.basis):
            raise ShapeError(f"module {name} has duplicate basis names")
        for element in self.basis:
            if not IDENTIFIER.match(element) or element == DERIVATION:
                raise ShapeError(f"invalid basis name {element!r}")
        degrees = degrees or {}
        for element in degrees:
            if element not in self.basis:
                raise ShapeError(f"degree given for unknown basis element {element}")
        self.degrees = {element: int(degrees.get(element, 0)) for element in self.basis}
        self._index = {element: i for i, element in enumerate(self.basis)}

    def __repr__(self):
        return f"<ConfModule {self.name} {list(self.basis)}>"

    def __eq__(self, other):
        return (
            isinstance(other, ConfModule)
            and self.name == other.name
            and self.basis == other.basis
            and self.degrees == other.degrees
        )

    def __hash__(self):
        return hash((self.name, self.basis))

    def __contains__(self, element: str) -> bool:
        return element in self._index

    def __len__(self):
        return len(self.basis)

    @property
    def rank(self) -> int:
        return len(self.basis)

    @property
    def is_zero(self) -> bool:
        return not self.basis

    @property
    def is_graded(self) -> bool:
        return any(self.degrees.values())

    def index(self, element: str) -> int:
        try:
            return self._index[element]
        except KeyError:
            raise ModuleMismatchError(f"{element} is not a basis element of {self.name}")

    def degree(self, element: str) -> int:
        self.index(element)
        return self.degrees[element]

    def of_degree(self, degree: int) -> tuple[str, ...]:
        return tuple(b for b in self.basis if self.degrees[b] == degree)

    def shifted(self, by: int, name: str | None = None) -> "ConfModule":
        return ConfModule(
            name or self.name,
            self.basis,
            {b: d + by for b, d in self.degrees.items()},
        )

    def restricted(self, elements: Iterable[str], name: str) -> "ConfModule":
        keep = set(elements)
        return ConfModule(
            name,
            [b for b in self.basis if b in keep],
            {b: d for b, d in self.degrees.items() if b in keep},
        )


def direct_sum(name: str, *modules: ConfModule) -> ConfModule:
    basis: list[str] = []
    degrees: dict[str, int] = {}
    for module in modules:
        for element in module.basis:
            if element in degrees:
                raise ShapeError(f"basis name {element} appears in more than one summand")
            basis.append(element)
            degrees[element] = module.degrees[element]
    return ConfModule(name, basis, degrees)


class ModValue:
    """
    A module element whose coefficients are polynomials in D and the
    λ-variables of a shared context. Stored sparsely: only nonzero
    coefficients are kept.
    """

    __slots__ = ("module", "ctx", "coeffs")

    def __init__(self, module: ConfModule, ctx: VarCtx, coeffs: Mapping[str, Poly] | None = None):
        self.module = module
        self.ctx = ctx
        cleaned: dict[str, Poly] = {}
        for element, coeff in (coeffs or {}).items():
            module.index(element)
            if coeff.ctx != ctx:
                raise ContextMismatchError()
            if coeff:
                cleaned[element] = coeff
        self.coeffs = cleaned

    @classmethod
    def zero(cls, module: ConfModule, ctx: VarCtx) -> "ModValue":
        return cls(module, ctx)

    @classmethod
    def basis(cls, module: ConfModule, element: str, ctx: VarCtx | None = None) -> "ModValue":
        ctx = ctx or VarCtx()
        return cls(module, ctx, {element: Poly.one(ctx)})

    def coeff(self, element: str) -> Poly:
        self.module.index(element)
        return self.coeffs.get(element) or Poly.zero(self.ctx)

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def _check(self, other: "ModValue"):
        if other.module.basis != self.module.basis:
            raise ModuleMismatchError(
                f"cannot combine values of {self.module.name} and {other.module.name}"
            )
        if other.ctx != self.ctx:
            raise ContextMismatchError()

    def __add__(self, other: "ModValue") -> "ModValue":
        self._check(other)
        coeffs = dict(self.coeffs)
        for element, coeff in other.coeffs.items():
            coeffs[element] = coeffs[element] + coeff if element in coeffs else coeff
        return ModValue(self.module, self.ctx, coeffs)

    def __sub__(self, other: "ModValue") -> "ModValue":
        return self + (-other)

    def __neg__(self) -> "ModValue":
        return ModValue(self.module, self.ctx, {e: -c for e, c in self.coeffs.items()})

    def __mul__(self, factor) -> "ModValue":
        """
        Multiplies every coefficient by a polynomial (same context) or a
        rational scalar.
        """
        if isinstance(factor, Poly):
            if factor.ctx != self.ctx:
                raise ContextMismatchError()
            return ModValue(self.module, self.ctx, {e: c * factor for e, c in self.coeffs.items()})
        return ModValue(self.module, self.ctx, {e: c.scale(factor) for e, c in self.coeffs.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, ModValue):
            return NotImplemented
        return (
            self.module.basis == other.module.basis
            and self.ctx == other.ctx
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.module.basis, self.ctx, frozenset(self.coeffs.items())))

    def __repr__(self):
        return f"<ModValue {self.module.name}: {self}>"

    def __str__(self):
        return format_value(self)

    def substitute(self, assignments: Mapping[str, Poly], ctx: VarCtx | None = None) -> "ModValue":
        if ctx is None:
            ctx = next(iter(assignments.values())).ctx if assignments else self.ctx
        return ModValue(
            self.module,
            ctx,
            {e: c.substitute(assignments, ctx) for e, c in self.coeffs.items()},
        )

    def to_ctx(self, ctx: VarCtx) -> "ModValue":
        if ctx == self.ctx:
            return self
        return ModValue(self.module, ctx, {e: c.to_ctx(ctx) for e, c in self.coeffs.items()})

    def rename(self, ctx: VarCtx) -> "ModValue":
        return ModValue(self.module, ctx, {e: c.rename(ctx) for e, c in self.coeffs.items()})

    def embed(self, target: ConfModule, names: Mapping[str, str] | None = None) -> "ModValue":
        """
        Views the value inside a module whose basis contains ours (after an
        optional renaming of basis elements).
        """
        names = names or {}
        return ModValue(target, self.ctx, {names.get(e, e): c for e, c in self.coeffs.items()})

    def project(self, target: ConfModule, names: Mapping[str, str] | None = None) -> "ModValue":
        """
        Keeps only the components that exist in the target module.
        """
        names = names or {}
        coeffs = {}
        for element, coeff in self.coeffs.items():
            renamed = names.get(element, element)
            if renamed in target:
                coeffs[renamed] = coeff
        return ModValue(target, self.ctx, coeffs)

    def rebase(self, module: ConfModule) -> "ModValue":
        if module.basis != self.module.basis:
            raise ModuleMismatchError(f"{module.name} and {self.module.name} differ")
        return ModValue(module, self.ctx, self.coeffs)

    def constant_part(self) -> "ModValue":
        """
        Sets D = 0 in every coefficient.
        """
        return self.substitute({DERIVATION: Poly.zero(self.ctx)}, self.ctx)

    def homogeneous_degree(self) -> int | None:
        degrees = {self.module.degrees[e] for e in self.coeffs}
        if len(degrees) > 1:
            raise ShapeError("value is not homogeneous")
        return degrees.pop() if degrees else None


def format_value(value: ModValue) -> str:
    """
    Canonical surface syntax for a module value, e.g. `(D + 2*l1) L - v`.
    """
    pieces: list[str] = []
    for element in value.module.basis:
        coeff = value.coeffs.get(element)
        if coeff is None:
            continue
        terms = coeff.terms
        if len(terms) > 1:
            body, negative = f"({format_poly(coeff)}) {element}", False
        else:
            negative = coeff.leading_sign() < 0
            printed = format_poly(-coeff if negative else coeff)
            body = element if printed == "1" else f"{printed} {element}"
        if not pieces:
            pieces.append(f"-{body}" if negative else body)
        else:
            pieces.append(f" - {body}" if negative else f" + {body}")
    return "".join(pieces) or "0"


def standard_params(ctx: VarCtx) -> list[Poly]:
    return [Poly.var(ctx, name) for name in ctx.lambda_vars]


class SesqMap:
    """
    An n-ary conformal sesquilinear map, stored as the table of its values
    on basis n-tuples. Values live in the canonical context l1..l(n-1);
    absent entries are zero.
    """

    __slots__ = ("sources", "target", "degree", "table", "ctx")

    def __init__(
        self,
        sources: Sequence[ConfModule],
        target: ConfModule,
        table: Mapping[tuple[str, ...], ModValue] | None = None,
        degree: int = 0,
    ):
        if not sources:
            raise ShapeError("sesquilinear maps need arity at least 1")
        self.sources = tuple(sources)
        self.target = target
        self.degree = degree
        self.ctx = VarCtx.standard(len(self.sources) - 1)
        cleaned: dict[tuple[str, ...], ModValue] = {}
        for key, value in (table or {}).items():
            key = tuple(key)
            if len(key) != len(self.sources):
                raise ShapeError(f"entry {key} does not have arity {len(self.sources)}")
            for module, element in zip(self.sources, key):
                module.index(element)
            if value.module.basis != target.basis:
                raise ModuleMismatchError(f"entry {key} is not valued in {target.name}")
            if value.ctx != self.ctx:
                if len(value.ctx) != len(self.ctx):
                    raise ContextMismatchError(f"entry {key} uses the wrong number of variables")
                value = value.rename(self.ctx)
            if value:
                cleaned[key] = value.rebase(target)
        self.table = cleaned

    @property
    def arity(self) -> int:
        return len(self.sources)

    @classmethod
    def zero(cls, sources: Sequence[ConfModule], target: ConfModule, degree: int = 0) -> "SesqMap":
        return cls(sources, target, {}, degree)

    @classmethod
    def identity(cls, module: ConfModule) -> "SesqMap":
        return cls([module], module, {(b,): ModValue.basis(module, b) for b in module.basis})

    def keys(self) -> Iterable[tuple[str, ...]]:
        return product(*(module.basis for module in self.sources))

    def entry(self, key: Sequence[str]) -> ModValue:
        key = tuple(key)
        value = self.table.get(key)
        if value is None:
            for module, element in zip(self.sources, key):
                module.index(element)
            return ModValue.zero(self.target, self.ctx)
        return value

    @property
    def is_zero(self) -> bool:
        return not self.table

    def same_shape(self, other: "SesqMap") -> bool:
        return (
            [m.basis for m in self.sources] == [m.basis for m in other.sources]
            and self.target.basis == other.target.basis
        )

    def _check(self, other: "SesqMap"):
        if not self.same_shape(other):
            raise ShapeError("maps have different sources or targets")

    def __add__(self, other: "SesqMap") -> "SesqMap":
        self._check(other)
        table = dict(self.table)
        for key, value in other.table.items():
            table[key] = table[key] + value if key in table else value
        return SesqMap(self.sources, self.target, table, self.degree)

    def __sub__(self, other: "SesqMap") -> "SesqMap":
        return self + other.scale(-1)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, factor) -> "SesqMap":
        return SesqMap(
            self.sources,
            self.target,
            {key: value * factor for key, value in self.table.items()},
            self.degree,
        )

    def __eq__(self, other):
        if not isinstance(other, SesqMap):
            return NotImplemented
        return self.same_shape(other) and self.table == other.table

    def __hash__(self):
        return hash((self.arity, self.target.basis, frozenset(self.table.items())))

    def __repr__(self):
        sources = " * ".join(m.name for m in self.sources)
        return f"<SesqMap {sources} -> {self.target.name}, {len(self.table)} entries>"

    def with_modules(
        self,
        sources: Sequence[ConfModule] | None = None,
        target: ConfModule | None = None,
        degree: int | None = None,
    ) -> "SesqMap":
        """
        Re-labels the modules (same bases) without touching the table.
        """
        target = target or self.target
        return SesqMap(
            sources or self.sources,
            target,
            {k: v.rebase(target) for k, v in self.table.items()},
            self.degree if degree is None else degree,
        )

    def restrict(self, sources: Sequence[ConfModule], target: ConfModule | None = None) -> "SesqMap":
        """
        Restricts to sub-bases of the sources and, optionally, projects the
        values onto a target with a sub-basis.
        """
        target = target or self.target
        table = {}
        for key in product(*(m.basis for m in sources)):
            value = self.table.get(key)
            if value is not None:
                table[key] = value.project(target)
        return SesqMap(sources, target, table, self.degree)

    def substitute_values(self, assignments: Mapping[str, Poly]) -> "SesqMap":
        return SesqMap(
            self.sources,
            self.target,
            {k: v.substitute(assignments, self.ctx) for k, v in self.table.items()},
            self.degree,
        )


def evaluate(
    phi: SesqMap,
    args: Sequence[ModValue],
    params: Sequence[Poly],
    ctx: VarCtx,
) -> ModValue:
    """
    Evaluates φ on module values with λ-parameters Λ_1..Λ_(n-1), all in ctx.

    A coefficient p(D) on slot k < n becomes p(-Λ_k); on the last slot it
    becomes p(D + ΣΛ). The table value has its l_j replaced by Λ_j.
    """
    n = phi.arity
    if len(args) != n:
        raise ShapeError(f"expected {n} arguments, got {len(args)}")
    if len(params) != n - 1:
        raise ShapeError(f"expected {n - 1} parameters, got {len(params)}")
    for module, arg in zip(phi.sources, args):
        if arg.module.basis != module.basis:
            raise ModuleMismatchError(f"argument from {arg.module.name}, expected {module.name}")
        if arg.ctx != ctx:
            raise ContextMismatchError()
    for param in params:
        if param.ctx != ctx:
            raise ContextMismatchError()
    result = ModValue.zero(phi.target, ctx)
    if phi.is_zero or any(arg.is_zero for arg in args):
        return result
    total = Poly.zero(ctx)
    for param in params:
        total = total + param
    slot_terms: list[list[tuple[str, Poly]]] = []
    for k, arg in enumerate(args):
        if k < n - 1:
            assignment = {DERIVATION: -params[k]}
        else:
            assignment = {DERIVATION: Poly.derivation(ctx) + total}
        slot_terms.append(
            [(element, coeff.substitute(assignment, ctx)) for element, coeff in arg.coeffs.items()]
        )
    value_assignment = {name: params[j] for j, name in enumerate(phi.ctx.lambda_vars)}
    value_assignment[DERIVATION] = Poly.derivation(ctx)
    cache: dict[tuple[str, ...], ModValue] = {}
    for combination in product(*slot_terms):
        key = tuple(element for element, _ in combination)
        entry = phi.table.get(key)
        if entry is None:
            continue
        value = cache.get(key)
        if value is None:
            value = cache[key] = entry.substitute(value_assignment, ctx)
        factor = Poly.one(ctx)
        for _, coeff in combination:
            factor = factor * coeff
        result = result + value * factor
    return result


def eval_sesq(phi: SesqMap, args: Sequence[ModValue]) -> ModValue:
    """
    Evaluates φ on plain module elements (coefficients in ℚ[D] only); the
    result is expressed in φ's canonical context.
    """
    for arg in args:
        if arg.ctx.lambda_vars:
            raise ContextMismatchError("arguments must only involve D")
    ctx = phi.ctx
    return evaluate(phi, [arg.to_ctx(ctx) for arg in args], standard_params(ctx), ctx)


def as_value(x: str | ModValue, module: ConfModule, ctx: VarCtx) -> ModValue:
    if isinstance(x, ModValue):
        return x.to_ctx(ctx)
    return ModValue.basis(module, x, ctx)


def transport_left(
    x: str | ModValue,
    v: ModValue,
    action: SesqMap,
    lambda_name: str,
) -> ModValue:
    """
    x_λ v for a value v that may already carry outer λ-variables; D-powers in
    v's coefficients are transported by D ↦ D + λ.
    """
    if action.arity != 2:
        raise ShapeError("actions are binary")
    ctx = v.ctx.extend(lambda_name)
    left = as_value(x, action.sources[0], ctx)
    return evaluate(action, [left, v.to_ctx(ctx)], [Poly.var(ctx, lambda_name)], ctx)


def transport_right(
    v: ModValue,
    x: str | ModValue,
    action: SesqMap,
    parameter: Poly,
) -> ModValue:
    """
    v_Λ x: each D-power a in v's coefficients contributes (-Λ)^a.
    """
    if action.arity != 2:
        raise ShapeError("actions are binary")
    ctx = parameter.ctx
    right = as_value(x, action.sources[1], ctx)
    return evaluate(action, [v.to_ctx(ctx), right], [parameter], ctx)


def check_skew(bracket: SesqMap) -> bool:
    if bracket.arity != 2:
        raise ShapeError("skew-symmetry is a property of binary brackets")
    ctx = bracket.ctx
    flipped = {"l1": -Poly.derivation(ctx) - Poly.var(ctx, "l1")}
    for x, y in bracket.keys():
        forward = bracket.entry((x, y))
        backward = bracket.entry((y, x)).substitute(flipped, ctx)
        if forward != -backward:
            return False
    return True


def apply_linear(f: SesqMap, value: ModValue) -> ModValue:
    """
    Applies a C[∂]-linear map (an arity-1 table) to a value in any context.
    """
    if f.arity != 1:
        raise ShapeError("linear maps have arity 1")
    return evaluate(f, [value], [], value.ctx)


def compose_linear(g: SesqMap, f: SesqMap) -> SesqMap:
    if g.sources[0].basis != f.target.basis:
        raise ShapeError(f"cannot compose through {f.target.name} and {g.sources[0].name}")
    return SesqMap(
        f.sources,
        g.target,
        {key: apply_linear(g, value) for key, value in f.table.items()},
        f.degree + g.degree,
    )


def postcompose(f: SesqMap, phi: SesqMap) -> SesqMap:
    """
    f ∘ φ for a linear map f.
    """
    if f.sources[0].basis != phi.target.basis:
        raise ShapeError(f"cannot compose through {phi.target.name} and {f.sources[0].name}")
    return SesqMap(
        phi.sources,
        f.target,
        {key: apply_linear(f, value) for key, value in phi.table.items()},
        phi.degree + f.degree,
    )


def precompose(phi: SesqMap, maps: Sequence[SesqMap]) -> SesqMap:
    """
    φ ∘ (f_1 ⊗ … ⊗ f_n) for linear maps f_k.
    """
    if len(maps) != phi.arity:
        raise ShapeError("need one linear map per slot")
    ctx = phi.ctx
    params = standard_params(ctx)
    table = {}
    for key in product(*(f.sources[0].basis for f in maps)):
        args = [
            apply_linear(f, ModValue.basis(f.sources[0], element)).to_ctx(ctx)
            for f, element in zip(maps, key)
        ]
        table[key] = evaluate(phi, args, params, ctx)
    return SesqMap([f.sources[0] for f in maps], phi.target, table, phi.degree)
