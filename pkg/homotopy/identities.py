from collections.abc import Callable, Iterator, Sequence
from dataclasses import dataclass
from itertools import product

from django.conf import settings

from core.exceptions import DegreeOverflowError, ShapeError
from core.modules import ConfModule, ModValue, SesqMap, evaluate, standard_params
from core.reports import CheckReport
from core.ring import VarCtx
from core.runner import IdentityCheck, run_checks
from homotopy.operations import UNSHIFTED, HomotopyOps, from_dg_leibniz
from homotopy.shuffles import enumerate_shuffles, koszul_sign

#: Identity ids of the graded (differential) Leibniz checks, by n.
GRADED_LEIBNIZ_IDS = {1: "graded.differential", 2: "graded.derivation", 3: "graded.leibniz"}


@dataclass(frozen=True)
class ShuffleTerm:
    """
    One summand of an insertion sum: the inner map of arity j goes into slot
    i (counted from 1) of the outer map of arity k, its first j − 1 arguments
    shuffled with the first i − 1 arguments of the outer map by `sigma`.
    """

    k: int
    j: int
    i: int
    sigma: tuple[int, ...]
    sign: int

    @property
    def arity(self) -> int:
        return self.k + self.j - 1

    @property
    def outer_front(self) -> tuple[int, ...]:
        return self.sigma[: self.i - 1]

    @property
    def inner_front(self) -> tuple[int, ...]:
        return self.sigma[self.i - 1 :]

    @property
    def inner_last(self) -> int:
        return self.i + self.j - 2

    def koszul(self, degrees: Sequence[int]) -> int:
        return koszul_sign(self.sigma, degrees[: len(self.sigma)])

    def front_degree(self, degrees: Sequence[int]) -> int:
        return sum(degrees[a] for a in self.outer_front)


def shuffle_terms(k: int, j: int) -> Iterator[ShuffleTerm]:
    for i in range(1, k + 1):
        for sigma, sign in enumerate_shuffles(i - 1, j - 1):
            yield ShuffleTerm(k, j, i, sigma, sign)


def compose_term(
    outer: SesqMap,
    inner: SesqMap,
    term: ShuffleTerm,
    args: Sequence[ModValue],
    ctx: VarCtx,
) -> ModValue:
    """
    outer_{λσ(1)…λσ(i−1), λσ(i)+…+λσ(i+j−2)+λ(i+j−1), …}(xσ(1), …,
    inner_{λσ(i)…}(xσ(i), …, x(i+j−1)), x(i+j), …) on the given arguments.
    The combined variable is absent when the inner map takes the last
    argument.
    """
    n = term.arity
    lambdas = standard_params(ctx)
    last = term.inner_last
    inner_value = evaluate(
        inner,
        [args[a] for a in term.inner_front] + [args[last]],
        [lambdas[a] for a in term.inner_front],
        ctx,
    )
    outer_args = [args[a] for a in term.outer_front] + [inner_value] + list(args[last + 1 :])
    outer_params = [lambdas[a] for a in term.outer_front]
    if last < n - 1:
        combined = lambdas[last]
        for a in term.inner_front:
            combined = combined + lambdas[a]
        outer_params += [combined] + lambdas[last + 1 :]
    return evaluate(outer, outer_args, outer_params, ctx)


def insertion_sum(
    outer: SesqMap,
    inner: SesqMap,
    key: Sequence[str],
    sign: Callable[[ShuffleTerm, list[int]], int],
) -> ModValue:
    """
    Σ over slots and shuffles of sign(term) · outer ∘ inner on one basis
    tuple, in the context l1..l(n−1).
    """
    module = outer.target
    n = outer.arity + inner.arity - 1
    if len(key) != n:
        raise ShapeError(f"expected a {n}-tuple")
    ctx = VarCtx.standard(n - 1)
    source = inner.sources[0]
    args = [ModValue.basis(source, x, ctx) for x in key]
    degrees = [source.degrees[x] for x in key]
    result = ModValue.zero(module, ctx)
    if outer.is_zero or inner.is_zero:
        return result
    for term in shuffle_terms(outer.arity, inner.arity):
        value = compose_term(outer, inner, term, args, ctx)
        if value:
            result = result + value * sign(term, degrees)
    return result


def leibnizator_sign(term: ShuffleTerm, degrees: Sequence[int]) -> int:
    """
    ε(σ) sgn(σ) (−1)^((k−i−1)(j−1)) (−1)^(j(|xσ(1)| + … + |xσ(i−1)|)).
    """
    exponent = (term.k - term.i - 1) * (term.j - 1) + term.j * term.front_degree(degrees)
    return term.koszul(degrees) * term.sign * (-1 if exponent % 2 else 1)


def leibnizator_sum(ops: HomotopyOps, key: Sequence[str]) -> ModValue:
    """
    The left-hand side of the n-th conformal Leibnizator identity on one
    basis tuple (n = len(key)); zero iff the identity holds there.
    """
    if ops.flavor != UNSHIFTED:
        raise ShapeError("the Leibnizator identities are stated for unshifted operations")
    n = len(key)
    for x in key:
        ops.module.index(x)
    result = ModValue.zero(ops.module, VarCtx.standard(n - 1))
    for k in range(1, n + 1):
        j = n + 1 - k
        if k in ops.ops and j in ops.ops:
            result = result + insertion_sum(ops.ops[k], ops.ops[j], key, leibnizator_sign)
    return result


def check_arity(n: int):
    limit = getattr(settings, "CONFBENCH_MAX_ARITY", 4)
    if n > limit:
        raise DegreeOverflowError(f"arity {n} exceeds the configured maximum {limit}")


def basis_tuples(module: ConfModule, n: int) -> Iterator[tuple[str, ...]]:
    return product(module.basis, repeat=n)


def verify_leib_infty(
    ops: HomotopyOps,
    n_max: int | None = None,
    jobs: int | None = None,
    names: dict[int, str] | None = None,
) -> CheckReport:
    """
    Checks every Leibnizator identity up to n_max on every basis tuple.
    Identity ids are "leib-infty.n<n>" unless `names` maps n to another id.
    """
    if ops.flavor != UNSHIFTED:
        raise ShapeError("the Leibnizator identities are stated for unshifted operations")
    if n_max is None:
        n_max = getattr(settings, "CONFBENCH_MAX_ARITY", 4)
    check_arity(n_max)
    names = names or {}
    checks = [
        IdentityCheck(
            names.get(n, f"leib-infty.n{n}"),
            key,
            lambda key=key: leibnizator_sum(ops, key),
        )
        for n in range(1, n_max + 1)
        for key in basis_tuples(ops.module, n)
    ]
    return run_checks(checks, jobs=jobs, name="verify_leib_infty")


def verify_graded_leibniz(
    module: ConfModule,
    bracket: SesqMap,
    d: SesqMap | None = None,
    jobs: int | None = None,
) -> CheckReport:
    """
    d² = 0, d a graded derivation of the bracket, and the graded Leibniz
    identity [x[yz]] = [[xy]z] + (−1)^(|x||y|) [y[xz]].
    """
    return verify_leib_infty(from_dg_leibniz(module, bracket, d), 3, jobs, GRADED_LEIBNIZ_IDS)

