from collections.abc import Iterable
from typing import Literal

from pydantic import BaseModel, Field, root_validator

from core.reports import CheckReport

Status = Literal["pass", "fail", "error"]


class FailureRow(BaseModel):
    identity: str
    location: list[str]
    residual: str


class Report(BaseModel):
    """
    What every workbench command prints with --json.
    """

    command: str
    status: Status
    failures: list[FailureRow] = Field(default_factory=list)
    counters: dict[str, int] = Field(default_factory=dict)
    output: str | None = None
    message: str | None = None
    timing: float = 0.0

    @root_validator(skip_on_failure=True)
    def status_matches_failures(cls, values):  # noqa
        status, failures = values["status"], values["failures"]
        if status == "pass" and failures:
            raise ValueError("a passing report has no failures")
        if status == "fail" and not failures:
            raise ValueError("a failing report needs at least one failure")
        return values

    @property
    def exit_code(self) -> int:
        return 0 if self.status == "pass" else 1

    def deterministic(self) -> dict:
        """
        Everything but the wall time, which is the one field that changes
        between identical runs.
        """
        return self.dict(exclude={"timing"})

    def summary(self) -> str:
        total = sum(self.counters.values())
        if self.status == "error":
            return f"{self.command}: error: {self.message}"
        lines = [f"{self.command}: {self.status}: {total} checks, {len(self.failures)} failures"]
        for row in self.failures:
            lines.append(f"  {row.identity} at ({', '.join(row.location)}): {row.residual}")
        if self.message:
            lines.append(self.message)
        return "\n".join(lines)


def failure_rows(report: CheckReport) -> list[FailureRow]:
    return [FailureRow(**failure.as_dict()) for failure in report.failures]


def build_report(
    command: str,
    report: CheckReport | None = None,
    extra: Iterable[FailureRow] = (),
    output: str | None = None,
    message: str | None = None,
    counters: dict[str, int] | None = None,
) -> Report:
    """
    Wraps a CheckReport, plus failures that are not identity residuals
    (a missing preimage, a failed round trip), into a Report.
    """
    rows = failure_rows(report) if report is not None else []
    rows.extend(extra)
    merged = dict(report.counters) if report is not None else {}
    for identity, count in (counters or {}).items():
        merged[identity] = merged.get(identity, 0) + count
    return Report(
        command=command,
        status="fail" if rows else "pass",
        failures=rows,
        counters=merged,
        output=output,
        message=message,
    )


def error_report(command: str, error: Exception) -> Report:
    return Report(command=command, status="error", message=str(error))


def report_schema() -> dict:
    return Report.schema()
