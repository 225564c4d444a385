"""Exception types. Each carries a short machine-readable ``code``."""


class OverqtError(Exception):
    code = "overqt-error"

    def __init__(self, message=None, **context):
        self.context = context
        super().__init__(message or self.code)


class LaurentAtZero(OverqtError):
    code = "laurent-at-zero"


class NonUnitSeries(OverqtError):
    code = "non-unit-series"


class DivisionCheck(OverqtError):
    """Exact division left a remainder; always an internal bug."""

    code = "division-check"


class MethodTooExpensive(OverqtError):
    code = "method-too-expensive"


class IdentityViolation(OverqtError):
    code = "identity-violation"


class NotInO(OverqtError):
    code = "not-in-O-n"


class IllFormedImage(OverqtError):
    code = "ill-formed-image"


class BadIndices(OverqtError):
    code = "bad-indices"


class InvalidOverpartition(OverqtError, ValueError):
    code = "invalid-overpartition"
