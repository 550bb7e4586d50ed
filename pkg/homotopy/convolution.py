from collections.abc import Mapping, Sequence

from django.conf import settings

from core.exceptions import ShapeError
from core.modules import ConfModule, ModValue, SesqMap
from core.reports import CheckReport
from core.ring import VarCtx
from core.runner import IdentityCheck, run_checks
from homotopy.identities import ShuffleTerm, basis_tuples, check_arity, insertion_sum
from homotopy.operations import SHIFTED, GradedConfModule, HomotopyOps, check_homogeneous
from leibniz.cohomology import Cochain

#: Sign c_n with linfty_coboundary(embed(φ)) = c_n · embed(δφ) for a
#: Leibniz conformal algebra in degree 0 and an n-cochain φ of its adjoint
#: representation.
DEGREE_ZERO_SIGNS = {1: -1, 2: -1, 3: -1}


def parity(exponent: int) -> int:
    return -1 if exponent % 2 else 1


class ConvolutionElement:
    """
    A homogeneous element Σ_k φ_k of degree n of the convolution algebra of
    a graded module: one conformal sesquilinear map of degree n per arity.
    """

    def __init__(self, module: ConfModule, degree: int, components: Mapping[int, SesqMap] | None = None):
        module = GradedConfModule.of(module)
        cleaned = {}
        for arity, phi in (components or {}).items():
            if arity < 1 or phi.arity != arity:
                raise ShapeError(f"component {arity} has arity {phi.arity}")
            if any(s.basis != module.basis for s in phi.sources) or phi.target.basis != module.basis:
                raise ShapeError(f"component {arity} is not a map on {module.name}")
            phi = phi.with_modules([module] * arity, module, degree)
            check_homogeneous(phi)
            if not phi.is_zero:
                cleaned[arity] = phi
        self.module = module
        self.degree = degree
        self.components = dict(sorted(cleaned.items()))

    @classmethod
    def from_ops(cls, ops: HomotopyOps) -> "ConvolutionElement":
        if ops.flavor != SHIFTED:
            raise ShapeError("only shifted operations live in the convolution algebra")
        return cls(ops.module, -1, ops.ops)

    def component(self, arity: int) -> SesqMap:
        found = self.components.get(arity)
        if found is None:
            return SesqMap.zero([self.module] * arity, self.module, self.degree)
        return found

    @property
    def is_zero(self) -> bool:
        return not self.components

    def _check(self, other: "ConvolutionElement"):
        if self.module.basis != other.module.basis or self.module.degrees != other.module.degrees:
            raise ShapeError("elements live on different graded modules")

    def __add__(self, other: "ConvolutionElement") -> "ConvolutionElement":
        self._check(other)
        if other.degree != self.degree:
            raise ShapeError("cannot add elements of different degrees")
        components = dict(self.components)
        for arity, phi in other.components.items():
            components[arity] = components[arity] + phi if arity in components else phi
        return ConvolutionElement(self.module, self.degree, components)

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other: "ConvolutionElement") -> "ConvolutionElement":
        return self + (-other)

    def scale(self, factor) -> "ConvolutionElement":
        return ConvolutionElement(
            self.module,
            self.degree,
            {k: phi.scale(factor) for k, phi in self.components.items()},
        )

    def truncated(self, max_arity: int) -> "ConvolutionElement":
        return ConvolutionElement(
            self.module,
            self.degree,
            {k: phi for k, phi in self.components.items() if k <= max_arity},
        )

    def __eq__(self, other):
        return (
            isinstance(other, ConvolutionElement)
            and self.degree == other.degree
            and self.module.basis == other.module.basis
            and self.components == other.components
        )

    def __repr__(self):
        return f"<ConvolutionElement degree {self.degree}, arities {list(self.components)}>"


def diamond_sign(inner_degree: int):
    """
    ε(σ) (−1)^(m(|hσ(1)| + … + |hσ(i−1)|)) with m the degree of the inner map.
    """

    def sign(term: ShuffleTerm, degrees: Sequence[int]) -> int:
        return term.koszul(degrees) * parity(inner_degree * term.front_degree(degrees))

    return sign


def diamond_value(phi: SesqMap, psi: SesqMap, key: Sequence[str]) -> ModValue:
    return insertion_sum(phi, psi, key, diamond_sign(psi.degree))


def diamond(phi: SesqMap, psi: SesqMap) -> SesqMap:
    """
    φ_k ◊ ψ_l as a map of arity k + l − 1 and degree deg φ + deg ψ.
    """
    arity = phi.arity + psi.arity - 1
    check_arity(arity)
    module = phi.target
    table = {}
    for key in basis_tuples(module, arity):
        value = diamond_value(phi, psi, key)
        if value:
            table[key] = value
    return SesqMap([module] * arity, module, table, phi.degree + psi.degree)


def bracket_value(phi: ConvolutionElement, psi: ConvolutionElement, key: Sequence[str]) -> ModValue:
    """
    The arity-p component of ⟦φ, ψ⟧ on one basis p-tuple.
    """
    p = len(key)
    result = ModValue.zero(phi.module, VarCtx.standard(p - 1))
    twist = parity(phi.degree * psi.degree)
    for k, outer in phi.components.items():
        inner = psi.components.get(p + 1 - k)
        if inner is not None:
            result = result + diamond_value(outer, inner, key)
    for k, outer in psi.components.items():
        inner = phi.components.get(p + 1 - k)
        if inner is not None:
            result = result - diamond_value(outer, inner, key) * twist
    return result


def max_arity_or_default(max_arity: int | None) -> int:
    if max_arity is None:
        max_arity = getattr(settings, "CONFBENCH_MAX_ARITY", 4)
    check_arity(max_arity)
    return max_arity


def gla_bracket(
    phi: ConvolutionElement,
    psi: ConvolutionElement,
    max_arity: int | None = None,
) -> ConvolutionElement:
    """
    ⟦φ, ψ⟧ = Σ (φ_k ◊ ψ_l − (−1)^(mn) ψ_l ◊ φ_k), kept up to max_arity.
    """
    phi._check(psi)
    max_arity = max_arity_or_default(max_arity)
    module = phi.module
    components = {}
    for p in range(1, max_arity + 1):
        table = {}
        for key in basis_tuples(module, p):
            value = bracket_value(phi, psi, key)
            if value:
                table[key] = value
        components[p] = SesqMap([module] * p, module, table)
    return ConvolutionElement(module, phi.degree + psi.degree, components)


def verify_maurer_cartan(
    ops: HomotopyOps,
    max_arity: int | None = None,
    jobs: int | None = None,
) -> CheckReport:
    """
    Evaluates ⟦ϱ, ϱ⟧ on every basis tuple up to max_arity; identity ids are
    "mc.n<p>".
    """
    rho = ConvolutionElement.from_ops(ops)
    max_arity = max_arity_or_default(max_arity)
    checks = [
        IdentityCheck(f"mc.n{p}", key, lambda key=key: bracket_value(rho, rho, key))
        for p in range(1, max_arity + 1)
        for key in basis_tuples(ops.module, p)
    ]
    return run_checks(checks, jobs=jobs, name="verify_maurer_cartan")


def is_maurer_cartan(ops: HomotopyOps, max_arity: int | None = None, jobs: int | None = None) -> bool:
    return verify_maurer_cartan(ops, max_arity, jobs).ok


def linfty_coboundary(
    ops: HomotopyOps,
    phi: ConvolutionElement,
    max_arity: int | None = None,
) -> ConvolutionElement:
    """
    δφ = (−1)^(n−1) ⟦ϱ, φ⟧ for φ of degree −(n − 1); ϱ has to be a
    Maurer–Cartan element for δ² = 0.
    """
    rho = ConvolutionElement.from_ops(ops)
    return gla_bracket(rho, phi, max_arity).scale(parity(phi.degree))


def embed_cochain(cochain: Cochain, module: ConfModule) -> ConvolutionElement:
    """
    An n-cochain of a degree-0 algebra with adjoint coefficients, as the
    arity-n element of degree 1 − n on the shifted module.
    """
    if cochain.degree == 0:
        raise ShapeError("0-cochains have no counterpart in the shifted convolution algebra")
    phi = cochain.map
    if phi.target.basis != module.basis:
        raise ShapeError(f"cochain is not valued in {module.name}")
    return ConvolutionElement(module, 1 - cochain.degree, {cochain.degree: phi})
