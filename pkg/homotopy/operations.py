from collections.abc import Iterable, Mapping

from core.exceptions import ShapeError, VerificationError
from core.modules import ConfModule, ModValue, SesqMap
from leibniz.algebras import LeibnizConfAlg, verify_morphism

UNSHIFTED = "unshifted"
SHIFTED = "shifted"
FLAVORS = (UNSHIFTED, SHIFTED)

#: Basis elements of a morphism kernel are renamed with this prefix.
KERNEL_PREFIX = "ker_"


class GradedConfModule(ConfModule):
    """
    A graded C[∂]-module with finite support, kept as one module whose basis
    elements carry their degrees.
    """

    __slots__ = ()

    @classmethod
    def of(cls, module: ConfModule) -> "GradedConfModule":
        if isinstance(module, GradedConfModule):
            return module
        return cls(module.name, module.basis, module.degrees)

    @classmethod
    def from_components(cls, name: str, components: Mapping[int, ConfModule]) -> "GradedConfModule":
        basis: list[str] = []
        degrees: dict[str, int] = {}
        for degree in sorted(components):
            for element in components[degree].basis:
                if element in degrees:
                    raise ShapeError(f"basis name {element} appears in two degrees")
                basis.append(element)
                degrees[element] = degree
        return cls(name, basis, degrees)

    @property
    def support(self) -> list[int]:
        return sorted(set(self.degrees.values()))

    @property
    def components(self) -> dict[int, ConfModule]:
        return {
            degree: self.restricted(self.of_degree(degree), f"{self.name}_{degree}")
            for degree in self.support
        }

    def shifted(self, by: int, name: str | None = None) -> "GradedConfModule":
        return GradedConfModule(name or self.name, self.basis, {b: d + by for b, d in self.degrees.items()})

    def __repr__(self):
        return f"<GradedConfModule {self.name} {[f'{b}@{self.degrees[b]}' for b in self.basis]}>"


def op_degree(flavor: str, arity: int) -> int:
    """
    ρ_k has degree k − 2; every ϱ_k of the shifted flavor has degree −1.
    """
    return arity - 2 if flavor == UNSHIFTED else -1


def check_homogeneous(op: SesqMap):
    """
    Raises unless every entry lands in degree (sum of argument degrees) +
    the map's degree.
    """
    for key, value in op.table.items():
        wanted = sum(module.degrees[b] for module, b in zip(op.sources, key)) + op.degree
        for element in value.coeffs:
            if op.target.degrees[element] != wanted:
                raise ShapeError(
                    f"entry ({', '.join(key)}) of a degree {op.degree} map leaves degree {wanted}"
                )


class HomotopyOps:
    """
    The operations {ρ_k} of a Leib∞-conformal algebra, or {ϱ_k} of its
    shifted form, on one graded module. Arities not present are zero.
    """

    def __init__(self, module: ConfModule, ops: Mapping[int, SesqMap], flavor: str = UNSHIFTED):
        if flavor not in FLAVORS:
            raise ShapeError(f"unknown flavor {flavor}")
        module = GradedConfModule.of(module)
        cleaned = {}
        for arity, op in ops.items():
            if arity < 1 or op.arity != arity:
                raise ShapeError(f"operation {arity} has arity {op.arity}")
            if any(s.basis != module.basis for s in op.sources) or op.target.basis != module.basis:
                raise ShapeError(f"operation {arity} is not an operation on {module.name}")
            op = op.with_modules([module] * arity, module, op_degree(flavor, arity))
            check_homogeneous(op)
            if not op.is_zero:
                cleaned[arity] = op
        self.module = module
        self.flavor = flavor
        self.ops = dict(sorted(cleaned.items()))

    def op(self, arity: int) -> SesqMap:
        found = self.ops.get(arity)
        if found is None:
            return SesqMap.zero([self.module] * arity, self.module, op_degree(self.flavor, arity))
        return found

    @property
    def max_arity(self) -> int:
        return max(self.ops, default=0)

    @property
    def is_zero(self) -> bool:
        return not self.ops

    def truncated(self, max_arity: int) -> "HomotopyOps":
        return HomotopyOps(
            self.module,
            {k: op for k, op in self.ops.items() if k <= max_arity},
            self.flavor,
        )

    def __eq__(self, other):
        return (
            isinstance(other, HomotopyOps)
            and self.flavor == other.flavor
            and self.module.basis == other.module.basis
            and self.module.degrees == other.module.degrees
            and self.ops == other.ops
        )

    def __repr__(self):
        return f"<HomotopyOps {self.flavor} on {self.module.name}, arities {list(self.ops)}>"


def from_leibniz(alg: LeibnizConfAlg) -> HomotopyOps:
    """
    A Leibniz conformal algebra concentrated in degree 0, with ρ₂ its bracket.
    """
    module = GradedConfModule(alg.module.name, alg.module.basis)
    return HomotopyOps(module, {2: alg.bracket})


def from_dg_leibniz(module: ConfModule, bracket: SesqMap, d: SesqMap | None = None) -> HomotopyOps:
    """
    A (differential) graded Leibniz conformal algebra: ρ₁ = d, ρ₂ = bracket.
    """
    ops = {2: bracket}
    if d is not None:
        ops[1] = d
    return HomotopyOps(module, ops)


def kernel_elements(g: ConfModule, f: SesqMap) -> list[str]:
    return [b for b in g.basis if f.entry((b,)).is_zero]


def morphism_kernel(
    g: LeibnizConfAlg,
    h: LeibnizConfAlg,
    f: SesqMap,
    jobs: int | None = None,
) -> HomotopyOps:
    """
    g in degree 0 and ker f in degree 1, with ρ₁ the inclusion and ρ₂ the
    bracket of g, restricted to ker f where one argument is a kernel element.
    The kernel has to be spanned by basis elements f sends to zero.
    """
    report = verify_morphism(g, h, f, jobs=jobs)
    if not report.ok:
        raise VerificationError(f"map is not a morphism {g.name} -> {h.name}", report)
    kernel = kernel_elements(g.module, f)
    names = {b: f"{KERNEL_PREFIX}{b}" for b in kernel}
    module = GradedConfModule(
        f"{g.name}_ker",
        [*g.module.basis, *names.values()],
        {**{b: 0 for b in g.module.basis}, **{n: 1 for n in names.values()}},
    )

    def into_kernel(value: ModValue, key: Iterable[str]) -> ModValue:
        stray = [e for e in value.coeffs if e not in names]
        if stray:
            raise ShapeError(
                f"[{', '.join(key)}] leaves the span of the kernel basis through {', '.join(stray)}"
            )
        return value.embed(module, names)

    inclusion = {(names[b],): ModValue.basis(module, b) for b in kernel}
    bracket = {}
    for (x, y), value in g.bracket.table.items():
        bracket[(x, y)] = value.embed(module)
        if y in names:
            bracket[(x, names[y])] = into_kernel(value, (x, y))
        if x in names:
            bracket[(names[x], y)] = into_kernel(value, (x, y))
    return HomotopyOps(
        module,
        {
            1: SesqMap([module], module, inclusion),
            2: SesqMap([module, module], module, bracket),
        },
    )
