import random
from collections.abc import Sequence
from itertools import product

from django.conf import settings

from core.modules import ConfModule, ModValue, SesqMap
from core.ring import Poly, VarCtx, rational


class Sampler:
    """
    Seeded source of random polynomials, values and tables. Identical seeds
    give identical structures, so property checks are reproducible.
    """

    def __init__(self, seed: int | None = None):
        if seed is None:
            seed = getattr(settings, "CONFBENCH_SEED", 0)
        self.seed = seed
        self.random = random.Random(seed)

    def coefficient(self, low: int = -3, high: int = 3, nonzero: bool = False):
        while True:
            value = self.random.randint(low, high)
            if value or not nonzero:
                break
        if self.random.random() < 0.15:
            return rational(f"{value}/{self.random.choice([2, 3])}")
        return rational(value)

    def poly(
        self,
        ctx: VarCtx,
        max_ddeg: int = 2,
        max_ldeg: int = 2,
        terms: int = 3,
    ) -> Poly:
        width = len(ctx)
        chosen: dict[tuple[int, ...], object] = {}
        for _ in range(self.random.randint(0, terms)):
            d_exp = self.random.randint(0, max_ddeg)
            lambda_exps = [0] * width
            for _ in range(self.random.randint(0, max_ldeg) if width else 0):
                lambda_exps[self.random.randrange(width)] += 1
            chosen[(d_exp, *lambda_exps)] = self.coefficient(nonzero=True)
        return Poly.from_terms(ctx, chosen)

    def value(
        self,
        module: ConfModule,
        ctx: VarCtx,
        density: float = 0.5,
        elements: Sequence[str] | None = None,
        **bounds,
    ) -> ModValue:
        coeffs = {}
        for element in elements if elements is not None else module.basis:
            if self.random.random() < density:
                coeffs[element] = self.poly(ctx, **bounds)
        return ModValue(module, ctx, coeffs)

    def sesq(
        self,
        sources: Sequence[ConfModule],
        target: ConfModule,
        degree: int = 0,
        density: float = 0.5,
        **bounds,
    ) -> SesqMap:
        """
        A random table; on graded modules only degree-respecting entries are
        filled in.
        """
        ctx = VarCtx.standard(len(sources) - 1)
        table = {}
        for key in product(*(m.basis for m in sources)):
            if self.random.random() >= density:
                continue
            wanted = sum(m.degrees[b] for m, b in zip(sources, key)) + degree
            elements = target.of_degree(wanted)
            if elements:
                table[key] = self.value(target, ctx, density=0.7, elements=elements, **bounds)
        return SesqMap(sources, target, table, degree)

    def scalar_table(self, size: int, density: float = 0.4) -> list[list[list[int]]]:
        """
        Structure constants c[i][j][k] of a random finite-dimensional algebra.
        """
        return [
            [
                [self.random.randint(-2, 2) if self.random.random() < density else 0 for _ in range(size)]
                for _ in range(size)
            ]
            for _ in range(size)
        ]

    def choice(self, options):
        return self.random.choice(options)
