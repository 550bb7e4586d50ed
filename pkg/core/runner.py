import asyncio
from collections.abc import Callable, Iterable, Sequence

from asgiref.sync import async_to_sync, sync_to_async
from django.conf import settings

from core import exceptions, sentry
from core.modules import ModValue
from core.reports import CheckReport


class IdentityCheck:
    """
    A single identity evaluated on a single basis tuple. `compute` returns
    the residual, which is zero iff the identity holds there.
    """

    __slots__ = ("identity", "location", "compute")

    def __init__(self, identity: str, location: Sequence[str], compute: Callable[[], ModValue]):
        self.identity = identity
        self.location = tuple(location)
        self.compute = compute

    def __repr__(self):
        return f"<IdentityCheck {self.identity} at {self.location}>"


class CheckRunner:
    """
    Evaluates identity checks, inline or on a pool of worker threads, and
    merges the residuals into a report in submission order.
    """

    def __init__(self, jobs: int | None = None, name: str = "checks"):
        self.jobs = jobs or getattr(settings, "CONFBENCH_JOBS", 1)
        self.name = name

    def run(self, checks: Iterable[IdentityCheck]) -> CheckReport:
        checks = list(checks)
        with sentry.start_transaction(op="check", name=f"confbench.{self.name}"):
            sentry.set_context("checks", {"count": len(checks), "jobs": self.jobs})
            if self.jobs <= 1 or len(checks) <= 1:
                residuals = [self.evaluate(check) for check in checks]
            else:
                residuals = async_to_sync(self.arun)(checks)
        report = CheckReport()
        for check, residual in zip(checks, residuals):
            report.record(check.identity, check.location, residual)
        return report

    async def arun(self, checks: list[IdentityCheck]) -> list[ModValue]:
        semaphore = asyncio.Semaphore(self.jobs)
        evaluate = sync_to_async(self.evaluate, thread_sensitive=False)

        async def bounded(check: IdentityCheck) -> ModValue:
            async with semaphore:
                return await evaluate(check)

        return list(await asyncio.gather(*(bounded(check) for check in checks)))

    def evaluate(self, check: IdentityCheck) -> ModValue:
        try:
            return check.compute()
        except BaseException as e:
            exceptions.capture_exception(e)
            raise


def run_checks(
    checks: Iterable[IdentityCheck],
    jobs: int | None = None,
    name: str = "checks",
) -> CheckReport:
    return CheckRunner(jobs=jobs, name=name).run(checks)
