"""Exception hierarchy shared by every module of the toolkit."""


class LocindError(Exception):
    """Base class for all toolkit errors."""

    exit_code = 1


class InvalidInputError(LocindError, ValueError):
    """Arguments outside the supported domain (bad weight, even prime, ...)."""

    exit_code = 2


class InvalidWeightError(InvalidInputError):
    pass


class UnsupportedInstanceError(InvalidInputError):
    """The instance is well-formed but outside what the algorithms handle."""


class PrecisionError(LocindError):
    """A q-expansion is too short for the requested computation."""

    exit_code = 3

    def __init__(self, message: str, required: int | None = None):
        super().__init__(message)
        self.required = required


class ResourceLimitError(LocindError):
    exit_code = 3


class ContainmentError(LocindError, ValueError):
    """A purported subgroup is not contained in the ambient group."""

    exit_code = 2


class GroupMismatchError(LocindError, ValueError):
    exit_code = 2


class NotACharacterError(LocindError, ValueError):
    """A class function decomposes with non-integral or negative multiplicities."""

    exit_code = 2


class FixtureError(LocindError):
    exit_code = 4


class VerificationMismatch(LocindError):
    exit_code = 5

    def __init__(self, stage: str, message: str):
        super().__init__(f"stage {stage!r}: {message}")
        self.stage = stage
