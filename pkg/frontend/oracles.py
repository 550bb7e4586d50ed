"""
Randomised cross-checks between checkers that have to agree: the
Leibnizator identities against the Maurer–Cartan equation of the shifted
operations, and the nine 2-term identities against the Leibnizator
identities of the same graded data.
"""
from core.exceptions import capture_message
from core.reports import CheckReport
from core.sampling import Sampler
from frontend.schemas import FailureRow
from homotopy.convolution import verify_maurer_cartan
from homotopy.decalage import shift
from homotopy.identities import verify_leib_infty
from homotopy.operations import GradedConfModule, HomotopyOps
from twoterm.algebras import IDENTITY_ARITIES, TwoTermAlg, verify_two_term

#: Sparse samples mostly satisfy the identities, dense ones mostly do not.
DENSITIES = (0.5, 0.1)

BOUNDS = dict(max_ddeg=1, max_ldeg=1, terms=2)


def random_ops(sampler: Sampler, density: float = 0.5) -> HomotopyOps:
    """
    Degree-respecting ρ₁, ρ₂, ρ₃ on a(0), b(0), u(1).
    """
    module = GradedConfModule("G", ["a", "b", "u"], {"u": 1})
    return HomotopyOps(
        module,
        {k: sampler.sesq([module] * k, module, degree=k - 2, density=density, **BOUNDS) for k in (1, 2, 3)},
    )


def failing_locations(report: CheckReport, prefix: str) -> set[tuple[str, tuple[str, ...]]]:
    return {(f.identity.removeprefix(prefix), f.location) for f in report.failures}


def describe_difference(left: set, right: set) -> str:
    only_left = sorted(left - right)
    only_right = sorted(right - left)
    return f"only first: {only_left}; only second: {only_right}"


class OracleRun:
    """
    Outcome of one oracle over many samples.
    """

    def __init__(self, identity: str):
        self.identity = identity
        self.samples = 0
        self.satisfying = 0
        self.rows: list[FailureRow] = []

    def compare(self, index: int, first: set, second: set):
        self.samples += 1
        if not first:
            self.satisfying += 1
        if first != second:
            capture_message(f"{self.identity} disagrees on sample {index}")
            self.rows.append(
                FailureRow(
                    identity=self.identity,
                    location=[f"sample{index}"],
                    residual=describe_difference(first, second),
                )
            )

    def summary(self) -> str:
        return f"{self.identity}: {self.samples} samples, {self.satisfying} satisfying, {len(self.rows)} disagreements"


def maurer_cartan_oracle(ops: HomotopyOps, n_max: int, jobs: int | None = None) -> tuple[set, set]:
    direct = verify_leib_infty(ops, n_max, jobs)
    shifted = verify_maurer_cartan(shift(ops), n_max, jobs)
    return failing_locations(direct, "leib-infty."), failing_locations(shifted, "mc.")


def boundary_oracle(alg: TwoTermAlg, jobs: int | None = None) -> tuple[set, set]:
    direct = {(f"n{IDENTITY_ARITIES[f.identity]}", f.location) for f in verify_two_term(alg, jobs).failures}
    return direct, failing_locations(verify_leib_infty(alg.ops, 4, jobs), "leib-infty.")


def run_oracles(
    count: int,
    seed: int,
    n_max: int = 3,
    jobs: int | None = None,
) -> tuple[list[FailureRow], dict[str, int], list[str]]:
    """
    Draws `count` samples per oracle from one seeded sampler, alternating
    dense and sparse tables. Returns disagreement rows, sample counters and
    one summary line per oracle.
    """
    sampler = Sampler(seed)
    mc, boundary = OracleRun("oracle.maurer-cartan"), OracleRun("oracle.two-term")
    for index in range(count):
        density = DENSITIES[index % len(DENSITIES)]
        mc.compare(index, *maurer_cartan_oracle(random_ops(sampler, density), n_max, jobs))
        alg = TwoTermAlg.from_ops(random_ops(sampler, density))
        boundary.compare(index, *boundary_oracle(alg, jobs))
    runs = [mc, boundary]
    rows = [row for run in runs for row in run.rows]
    return rows, {run.identity: run.samples for run in runs}, [run.summary() for run in runs]
