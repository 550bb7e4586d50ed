from core.exceptions import ShapeError
from core.modules import ConfModule, ModValue, SesqMap, apply_linear, direct_sum
from core.reports import CheckReport
from core.ring import VarCtx
from core.runner import IdentityCheck, run_checks
from twoterm.algebras import check_linear

#: Location placeholder for the zero element of K in composable pairs.
ZERO = "0"


class TwoVectorSpace:
    """
    A 2-vector space internal to C[∂]-modules, in split form: objects C0,
    morphisms C1 = C0 ⊕ K with K the kernel of the source map, and

      s(x, h) = x,  t(x, h) = x + dh,  i(x) = (x, 0),
      m((x, h), (x + dh, k)) = (x, h + k).
    """

    def __init__(self, c0: ConfModule, k: ConfModule, d: SesqMap | None = None, name: str = "C"):
        c0 = ConfModule(c0.name, c0.basis)
        k = ConfModule(k.name, k.basis)
        d = d if d is not None else SesqMap.zero([k], c0)
        check_linear(d, k, c0, "d")
        self.name = name
        self.c0 = c0
        self.k = k
        self.c1 = direct_sum(f"{name}1", c0, k)
        self.d = d.with_modules([k], c0, 0)
        self.source = SesqMap([self.c1], c0, {(x,): ModValue.basis(c0, x) for x in c0.basis})
        table = {(x,): ModValue.basis(c0, x) for x in c0.basis}
        table.update(self.d.table)
        self.target = SesqMap([self.c1], c0, table)
        self.unit_map = SesqMap([c0], self.c1, {(x,): ModValue.basis(self.c1, x) for x in c0.basis})

    def s(self, value: ModValue) -> ModValue:
        return apply_linear(self.source, value)

    def t(self, value: ModValue) -> ModValue:
        return apply_linear(self.target, value)

    def unit(self, value: ModValue) -> ModValue:
        return apply_linear(self.unit_map, value)

    def embed(self, value: ModValue) -> ModValue:
        """
        A value of K as the morphism (0, h).
        """
        return value.embed(self.c1)

    def kernel_part(self, value: ModValue) -> ModValue:
        return value.project(self.k)

    def compose(self, f: ModValue, g: ModValue, check: bool = True) -> ModValue:
        """
        m(f, g) for f followed by g. With check=False the formula is applied
        whether or not t(f) = s(g).
        """
        if check and self.t(f) != self.s(g):
            raise ShapeError("morphisms are not composable")
        return f + g - self.unit(self.s(g))

    def composable(self, f: str, k: str, ctx: VarCtx | None = None) -> tuple[ModValue, ModValue]:
        """
        The basis morphism f and a morphism leaving t(f): i(t f) plus the
        kernel element k (nothing for ZERO).
        """
        ctx = ctx or VarCtx()
        first = ModValue.basis(self.c1, f, ctx)
        second = self.unit(self.t(first))
        if k != ZERO:
            second = second + ModValue.basis(self.c1, k, ctx)
        return first, second

    def kernel_choices(self) -> list[str]:
        return [ZERO, *self.k.basis]

    def __eq__(self, other):
        return (
            isinstance(other, TwoVectorSpace)
            and self.c0.basis == other.c0.basis
            and self.k.basis == other.k.basis
            and self.d == other.d
        )

    def __repr__(self):
        return f"<TwoVectorSpace {self.name}: {list(self.k.basis)} -> {list(self.c0.basis)}>"


def two_vs_from_complex(
    g1: ConfModule, g0: ConfModule, d: SesqMap | None = None, name: str = "C"
) -> TwoVectorSpace:
    """
    The 2-vector space of a complex G1 --d--> G0: objects G0, morphisms
    G0 ⊕ G1.
    """
    return TwoVectorSpace(g0, g1, d, name=name)


def verify_two_vector_space(space: TwoVectorSpace, jobs: int | None = None) -> CheckReport:
    """
    Re-checks the category laws on basis objects, basis morphisms and
    composable chains built from them.
    """
    plain = VarCtx()
    checks = []
    for x in space.c0.basis:
        vx = ModValue.basis(space.c0, x, plain)
        checks.append(IdentityCheck("2vs.source-unit", (x,), lambda vx=vx: space.s(space.unit(vx)) - vx))
        checks.append(IdentityCheck("2vs.target-unit", (x,), lambda vx=vx: space.t(space.unit(vx)) - vx))

    def unit_laws(f: str) -> ModValue:
        vf = ModValue.basis(space.c1, f, plain)
        left = space.compose(space.unit(space.s(vf)), vf) - vf
        right = space.compose(vf, space.unit(space.t(vf))) - vf
        return left + right

    def compose_source(f: str, k: str) -> ModValue:
        first, second = space.composable(f, k)
        return space.s(space.compose(first, second)) - space.s(first)

    def compose_target(f: str, k: str) -> ModValue:
        first, second = space.composable(f, k)
        return space.t(space.compose(first, second)) - space.t(second)

    def associativity(f: str, k: str, k2: str) -> ModValue:
        first, second = space.composable(f, k)
        third = space.unit(space.t(second))
        if k2 != ZERO:
            third = third + ModValue.basis(space.c1, k2, plain)
        return space.compose(space.compose(first, second), third) - space.compose(
            first, space.compose(second, third)
        )

    for f in space.c1.basis:
        checks.append(IdentityCheck("2vs.unit", (f,), lambda f=f: unit_laws(f)))
        for k in space.kernel_choices():
            checks.append(IdentityCheck("2vs.compose-source", (f, k), lambda f=f, k=k: compose_source(f, k)))
            checks.append(IdentityCheck("2vs.compose-target", (f, k), lambda f=f, k=k: compose_target(f, k)))
            for k2 in space.kernel_choices():
                checks.append(
                    IdentityCheck("2vs.associativity", (f, k, k2), lambda f=f, k=k, k2=k2: associativity(f, k, k2))
                )
    return run_checks(checks, jobs=jobs, name="verify_two_vector_space")
