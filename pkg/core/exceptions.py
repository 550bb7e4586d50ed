import traceback

from django.conf import settings


class WorkbenchError(Exception):
    """
    Base class for every problem the workbench reports about its inputs
    """


class ContextMismatchError(WorkbenchError):
    """
    Two polynomials (or values) live over different variable contexts
    """

    def __init__(self, message: str = "variable contexts differ"):
        super().__init__(message)


class UnknownVariableError(WorkbenchError):
    """
    A substitution or lookup named a variable the context does not have
    """


class ModuleMismatchError(WorkbenchError):
    """
    A value was passed where a different module was expected
    """


class ShapeError(WorkbenchError):
    """
    Arities, sources, targets or degrees of some structure do not line up
    """


class DegreeOverflowError(WorkbenchError):
    """
    A cochain degree or arity beyond the configured maximum
    """


class VerificationError(WorkbenchError):
    """
    A validating constructor or functor was handed data failing its checks
    """

    def __init__(self, message: str, report=None):
        super().__init__(message)
        self.report = report


class RequiresLieError(WorkbenchError):
    def __init__(self, message: str = "requires a Lie conformal algebra"):
        super().__init__(message)


class NotSkeletalError(WorkbenchError):
    def __init__(self, message: str = "not skeletal"):
        super().__init__(message)


class NotStrictError(WorkbenchError):
    def __init__(self, message: str = "not strict"):
        super().__init__(message)


class NotCocycleError(WorkbenchError):
    def __init__(self, message: str = "not a cocycle"):
        super().__init__(message)


class ParseError(WorkbenchError):
    """
    Lexical or syntax error in a .lcf source, with its position and the
    tokens that would have been accepted there
    """

    def __init__(
        self,
        message: str,
        line: int,
        column: int,
        expected: tuple[str, ...] = (),
    ):
        self.message = message
        self.line = line
        self.column = column
        self.expected = tuple(sorted(set(expected)))
        text = f"{line}:{column}: {message}"
        if self.expected:
            text += f" (expected one of: {', '.join(self.expected)})"
        super().__init__(text)


class SemanticError(ParseError):
    """
    A well-formed .lcf source that refers to something it never declared
    """

    def __init__(self, message: str, line: int, column: int):
        super().__init__(message, line, column)


def capture_message(message: str):
    """
    Sends the informational message to Sentry if it's configured
    """
    if settings.SETUP.SENTRY_DSN and settings.SETUP.SENTRY_CAPTURE_MESSAGES:
        from sentry_sdk import capture_message

        capture_message(message)
    elif settings.DEBUG:
        print(message)


def capture_exception(exception: BaseException):
    """
    Sends the exception to Sentry if it's configured
    """
    if settings.SETUP.SENTRY_DSN:
        from sentry_sdk import capture_exception

        capture_exception(exception)
    elif settings.DEBUG:
        traceback.print_exc()
