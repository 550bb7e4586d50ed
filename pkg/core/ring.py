import math
import re
import threading
from collections.abc import Iterable, Mapping, Sequence
from fractions import Fraction

from cachetools import LRUCache, cached
from sympy.polys.domains import QQ
from sympy.polys.orderings import grlex
from sympy.polys.rings import PolyElement, PolyRing

from core.exceptions import ContextMismatchError, ShapeError, UnknownVariableError

#: Surface name of the derivation symbol ∂.
DERIVATION = "D"

IDENTIFIER = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")


def rational(value) -> "QQ.dtype":
    """
    Coerces ints, Fractions, "p/q" strings and domain elements into QQ.
    """
    if isinstance(value, str):
        value = Fraction(value)
    if isinstance(value, Fraction):
        return QQ(value.numerator, value.denominator)
    if isinstance(value, int):
        return QQ(value)
    return QQ.convert(value)


def format_rational(value) -> str:
    numerator, denominator = int(value.numerator), int(value.denominator)
    if denominator == 1:
        return str(numerator)
    return f"{numerator}/{denominator}"


@cached(cache=LRUCache(maxsize=256), lock=threading.Lock())
def poly_ring(lambda_vars: tuple[str, ...]) -> PolyRing:
    return PolyRing((DERIVATION, *lambda_vars), QQ, grlex)


class VarCtx:
    """
    An ordered list of λ-variables. The derivation D is always present as
    generator 0 of the underlying ring.
    """

    __slots__ = ("lambda_vars", "ring", "_positions")

    def __init__(self, lambda_vars: Iterable[str] = ()):
        names = tuple(lambda_vars)
        if len(set(names)) != len(names):
            raise ShapeError(f"duplicate variable names in {names}")
        for name in names:
            if name == DERIVATION:
                raise ShapeError(f"{DERIVATION} is reserved for the derivation")
            if not IDENTIFIER.match(name):
                raise ShapeError(f"invalid variable name {name!r}")
        self.lambda_vars = names
        self.ring = poly_ring(names)
        self._positions = {DERIVATION: 0}
        for index, name in enumerate(names):
            self._positions[name] = index + 1

    @classmethod
    def standard(cls, count: int) -> "VarCtx":
        """
        The canonical context l1..l<count> used by every stored table.
        """
        return cls(f"l{index}" for index in range(1, count + 1))

    def __eq__(self, other):
        return isinstance(other, VarCtx) and self.lambda_vars == other.lambda_vars

    def __hash__(self):
        return hash(self.lambda_vars)

    def __len__(self):
        return len(self.lambda_vars)

    def __contains__(self, name: str) -> bool:
        return name in self._positions

    def __repr__(self):
        return f"VarCtx({list(self.lambda_vars)})"

    def position(self, name: str) -> int:
        try:
            return self._positions[name]
        except KeyError:
            raise UnknownVariableError(f"unknown variable {name!r}")

    def extend(self, *names: str) -> "VarCtx":
        return VarCtx(self.lambda_vars + tuple(n for n in names if n not in self))

    def union(self, other: "VarCtx") -> "VarCtx":
        return self.extend(*other.lambda_vars)


class Poly:
    """
    An exact polynomial over QQ in D and the λ-variables of its context.
    Values are immutable; the term map is a sympy ring element so equality
    is structural.
    """

    __slots__ = ("ctx", "element")

    def __init__(self, ctx: VarCtx, element: PolyElement | None = None):
        self.ctx = ctx
        if element is None:
            element = ctx.ring.zero
        elif element.ring != ctx.ring:
            raise ContextMismatchError()
        self.element = element

    @classmethod
    def zero(cls, ctx: VarCtx) -> "Poly":
        return cls(ctx, ctx.ring.zero)

    @classmethod
    def one(cls, ctx: VarCtx) -> "Poly":
        return cls(ctx, ctx.ring.one)

    @classmethod
    def constant(cls, ctx: VarCtx, value) -> "Poly":
        return cls(ctx, ctx.ring.ground_new(rational(value)))

    @classmethod
    def var(cls, ctx: VarCtx, name: str) -> "Poly":
        return cls(ctx, ctx.ring.gens[ctx.position(name)])

    @classmethod
    def derivation(cls, ctx: VarCtx) -> "Poly":
        return cls(ctx, ctx.ring.gens[0])

    @classmethod
    def from_terms(cls, ctx: VarCtx, terms: Mapping[tuple[int, ...], object]) -> "Poly":
        width = 1 + len(ctx)
        for monom in terms:
            if len(monom) != width:
                raise ShapeError(f"exponent vector {monom} does not have length {width}")
        return cls(ctx, ctx.ring.from_dict({m: rational(c) for m, c in terms.items()}))

    @property
    def terms(self) -> dict[tuple[int, ...], object]:
        return dict(self.element)

    @property
    def is_zero(self) -> bool:
        return not self.element

    def _coerce(self, other) -> PolyElement:
        if isinstance(other, Poly):
            if other.ctx != self.ctx:
                raise ContextMismatchError()
            return other.element
        if isinstance(other, (int, Fraction)):
            return self.ctx.ring.ground_new(rational(other))
        return NotImplemented

    def __add__(self, other):
        element = self._coerce(other)
        if element is NotImplemented:
            return NotImplemented
        return Poly(self.ctx, self.element + element)

    __radd__ = __add__

    def __sub__(self, other):
        element = self._coerce(other)
        if element is NotImplemented:
            return NotImplemented
        return Poly(self.ctx, self.element - element)

    def __rsub__(self, other):
        element = self._coerce(other)
        if element is NotImplemented:
            return NotImplemented
        return Poly(self.ctx, element - self.element)

    def __mul__(self, other):
        element = self._coerce(other)
        if element is NotImplemented:
            return NotImplemented
        return Poly(self.ctx, self.element * element)

    __rmul__ = __mul__

    def __neg__(self):
        return Poly(self.ctx, -self.element)

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int) or exponent < 0:
            raise ShapeError("exponents must be non-negative integers")
        return Poly(self.ctx, self.element**exponent)

    def scale(self, value) -> "Poly":
        return Poly(self.ctx, self.element * self.ctx.ring.ground_new(rational(value)))

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.ctx == other.ctx and self.element == other.element
        if isinstance(other, (int, Fraction)):
            return self.element == self.ctx.ring.ground_new(rational(other))
        return NotImplemented

    def __hash__(self):
        return hash((self.ctx, frozenset(self.element.items())))

    def __bool__(self):
        return not self.is_zero

    def __repr__(self):
        return f"Poly({str(self)!r}, {self.ctx!r})"

    def __str__(self):
        return format_poly(self)

    def degree(self, name: str = DERIVATION) -> int:
        """
        Highest exponent of one variable; -1 for the zero polynomial.
        """
        index = self.ctx.position(name)
        return max((monom[index] for monom in self.element), default=-1)

    def lambda_degree(self) -> int:
        """
        Highest total degree in the λ-variables; -1 for zero.
        """
        return max((sum(monom[1:]) for monom in self.element), default=-1)

    def leading_sign(self) -> int:
        if self.is_zero:
            return 0
        return -1 if self.element.LC < 0 else 1

    def substitute(
        self,
        assignments: Mapping[str, "Poly"],
        ctx: VarCtx | None = None,
    ) -> "Poly":
        """
        Simultaneous substitution of D and/or λ-variables. Unassigned
        variables keep their name and must exist in the output context.
        """
        names = (DERIVATION, *self.ctx.lambda_vars)
        for name in assignments:
            if name not in self.ctx:
                raise UnknownVariableError(f"unknown variable {name!r}")
        if ctx is None:
            if assignments:
                ctx = next(iter(assignments.values())).ctx
            else:
                ctx = self.ctx
        for value in assignments.values():
            if value.ctx != ctx:
                raise ContextMismatchError()
        ring = ctx.ring
        images: list[PolyElement | None] = []
        for name in names:
            if name in assignments:
                images.append(assignments[name].element)
            elif name in ctx:
                images.append(ring.gens[ctx.position(name)])
            else:
                images.append(None)
        powers: dict[tuple[int, int], PolyElement] = {}
        result = ring.zero
        for monom, coeff in self.element.items():
            term = ring.ground_new(coeff)
            for index, exponent in enumerate(monom):
                if not exponent:
                    continue
                image = images[index]
                if image is None:
                    raise ContextMismatchError(
                        f"variable {names[index]!r} is not in the target context"
                    )
                power = powers.get((index, exponent))
                if power is None:
                    power = powers[(index, exponent)] = image**exponent
                term = term * power
            result = result + term
        return Poly(ctx, result)

    def to_ctx(self, ctx: VarCtx) -> "Poly":
        """
        Re-expresses the polynomial over a context that contains every
        variable it actually uses.
        """
        if ctx == self.ctx:
            return self
        return self.substitute({}, ctx)

    def rename(self, ctx: VarCtx) -> "Poly":
        """
        Positional renaming onto a context with the same number of variables.
        """
        if len(ctx) != len(self.ctx):
            raise ShapeError("renaming needs contexts of equal length")
        return Poly(ctx, ctx.ring.from_dict(dict(self.element)))


def poly_arith(a: Poly, b: Poly, op: str) -> Poly:
    if a.ctx != b.ctx:
        raise ContextMismatchError()
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown operation {op!r}")


def substitute(p: Poly, assignments: Mapping[str, Poly]) -> Poly:
    return p.substitute(assignments)


def lambda_to_jproducts(p: Poly) -> list[Poly]:
    """
    Splits p(D, λ) = Σ_j λ^j/j! c_j(D) into its j-th products c_j.
    """
    if len(p.ctx) != 1:
        raise ShapeError("j-th products need exactly one λ-variable")
    if p.is_zero:
        return []
    base = VarCtx()
    top = p.degree(p.ctx.lambda_vars[0])
    grouped: list[dict[tuple[int], object]] = [{} for _ in range(top + 1)]
    for (d_exp, l_exp), coeff in p.element.items():
        grouped[l_exp][(d_exp,)] = coeff * math.factorial(l_exp)
    return [Poly(base, base.ring.from_dict(terms)) for terms in grouped]


def jproducts_to_lambda(products: Sequence[Poly], ctx: VarCtx) -> Poly:
    if len(ctx) != 1:
        raise ShapeError("j-th products need exactly one λ-variable")
    lam = Poly.var(ctx, ctx.lambda_vars[0])
    result = Poly.zero(ctx)
    for j, product in enumerate(products):
        if product.ctx.lambda_vars:
            raise ShapeError("j-th products may only involve D")
        term = product.to_ctx(ctx) * lam**j
        result = result + Poly(ctx, term.element * ctx.ring.ground_new(QQ(1, math.factorial(j))))
    return result


def format_monomial(names: Sequence[str], monom: Sequence[int]) -> str:
    factors = []
    for name, exponent in zip(names, monom):
        if exponent == 1:
            factors.append(name)
        elif exponent > 1:
            factors.append(f"{name}^{exponent}")
    return "*".join(factors)


def format_poly(p: Poly) -> str:
    """
    Canonical surface syntax: graded-lex descending terms, `*` between
    factors, `p/q` rationals, `0` for zero.
    """
    if p.is_zero:
        return "0"
    names = (DERIVATION, *p.ctx.lambda_vars)
    pieces = []
    for monom, coeff in p.element.terms():
        negative = coeff < 0
        magnitude = -coeff if negative else coeff
        monomial = format_monomial(names, monom)
        if not monomial:
            body = format_rational(magnitude)
        elif magnitude == 1:
            body = monomial
        else:
            body = f"{format_rational(magnitude)}*{monomial}"
        if not pieces:
            pieces.append(f"-{body}" if negative else body)
        else:
            pieces.append(f" - {body}" if negative else f" + {body}")
    return "".join(pieces)
