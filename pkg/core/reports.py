from collections.abc import Iterable, Sequence

from core.modules import ModValue


class Failure:
    """
    One identity that does not hold on one basis tuple.
    """

    __slots__ = ("identity", "location", "residual")

    def __init__(self, identity: str, location: Sequence[str], residual: ModValue):
        self.identity = identity
        self.location = tuple(location)
        self.residual = residual

    @property
    def printed(self) -> str:
        return str(self.residual)

    def __repr__(self):
        return f"<Failure {self.identity} at ({', '.join(self.location)}): {self.printed}>"

    def as_dict(self) -> dict:
        return {
            "identity": self.identity,
            "location": list(self.location),
            "residual": self.printed,
        }


class CheckReport:
    """
    Outcome of a verification: every residual that came out nonzero, plus
    how many tuples were checked per identity.
    """

    def __init__(self, failures: Iterable[Failure] = (), counters: dict[str, int] | None = None):
        self.failures: list[Failure] = list(failures)
        self.counters: dict[str, int] = dict(counters or {})

    def record(self, identity: str, location: Sequence[str], residual: ModValue):
        self.counters[identity] = self.counters.get(identity, 0) + 1
        if not residual.is_zero:
            self.failures.append(Failure(identity, location, residual))

    def fail(self, identity: str, location: Sequence[str], residual: ModValue):
        """
        Records a failure that is not tied to a counted tuple check.
        """
        self.failures.append(Failure(identity, location, residual))

    def extend(self, other: "CheckReport") -> "CheckReport":
        self.failures.extend(other.failures)
        for identity, count in other.counters.items():
            self.counters[identity] = self.counters.get(identity, 0) + count
        return self

    @property
    def ok(self) -> bool:
        return not self.failures

    @property
    def status(self) -> str:
        return "pass" if self.ok else "fail"

    def failed_identities(self) -> list[str]:
        """
        Identity ids with at least one failure, in first-failure order.
        """
        seen: dict[str, None] = {}
        for failure in self.failures:
            seen.setdefault(failure.identity, None)
        return list(seen)

    def failures_for(self, identity: str) -> list[Failure]:
        return [f for f in self.failures if f.identity == identity]

    def __bool__(self):
        return self.ok

    def __repr__(self):
        return f"<CheckReport {self.status}: {len(self.failures)} failures>"

    def summary(self) -> str:
        lines = [f"{self.status}: {sum(self.counters.values())} checks, {len(self.failures)} failures"]
        for failure in self.failures:
            lines.append(
                f"  {failure.identity} at ({', '.join(failure.location)}): {failure.printed}"
            )
        return "\n".join(lines)
