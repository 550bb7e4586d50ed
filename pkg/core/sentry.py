from contextlib import contextmanager

from django.conf import settings

SENTRY_ENABLED = False
try:
    if settings.SETUP.SENTRY_DSN:
        import sentry_sdk

        SENTRY_ENABLED = True
except ImportError:
    pass


def noop(*args, **kwargs):
    pass


@contextmanager
def noop_context(*args, **kwargs):
    yield


if SENTRY_ENABLED:
    set_context = sentry_sdk.set_context
    set_tag = sentry_sdk.set_tag
    start_transaction = sentry_sdk.start_transaction
else:
    set_context = noop
    set_tag = noop
    start_transaction = noop_context


@contextmanager
def verb_transaction(verb: str, files: list[str]):
    """
    Wraps one workbench verb, tagged with its name and the files it read.
    """
    with start_transaction(op="command", name=f"confbench.{verb}"):
        set_tag("confbench.verb", verb)
        set_context("inputs", {"files": files})
        yield


def set_report_status(status: str, counters: dict[str, int]):
    set_tag("confbench.status", status)
    set_context("counters", counters)
