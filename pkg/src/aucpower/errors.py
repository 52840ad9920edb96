"""Exception types raised across the package.

Every domain failure is a typed subclass of :class:`AucPowerError` so callers
(CLI, HTTP service) can map them to exit codes / status codes uniformly.
Most also subclass :class:`ValueError` because they signal invalid or
unusable input values.
"""


class AucPowerError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(AucPowerError, ValueError):
    """A parameter is outside its documented domain."""


class LengthMismatchError(AucPowerError, ValueError):
    """Paired sequences (labels, scores) differ in length."""


class NonFiniteScoreError(AucPowerError, ValueError):
    """A prediction score is NaN or infinite."""


class EmptyClassError(AucPowerError, ValueError):
    """The sample contains no cases or no controls."""


class DegenerateAurocError(AucPowerError, ValueError):
    """AUROC estimate sits on the {0, 1} boundary; the asymptotic variance
    formula is undefined there and no confidence interval can be reported."""


class DegenerateComparisonError(AucPowerError, ValueError):
    """The variance of the paired AUROC difference is zero (e.g. the two
    score vectors have identical ranks); the Z test is undefined."""


class SampleSizeOverflowError(AucPowerError):
    """The sample-size scan exceeded its safety bound without reaching the
    target precision."""


class PilotTooDegenerateError(AucPowerError):
    """Resampling the pilot kept producing untestable datasets until the
    per-iteration redraw budget ran out."""


class DegenerateSpecError(AucPowerError):
    """Sampling from the parametric model kept producing untestable datasets
    until the per-iteration redraw budget ran out."""


class TargetUnreachableError(AucPowerError):
    """Power at the largest sample size searched is still below target."""


class PilotFormatError(AucPowerError, ValueError):
    """Base class for pilot CSV parsing failures."""


class MissingColumnError(PilotFormatError):
    """A required column is absent from the CSV header."""


class BadLabelError(PilotFormatError):
    """A label cell is not one of 0/1/true/false."""

    def __init__(self, row: int, value: str):
        self.row = row
        self.value = value
        super().__init__(f"row {row}: label {value!r} is not one of 0, 1, true, false")


class BadNumberError(PilotFormatError):
    """A prediction cell is missing or not a finite number."""

    def __init__(self, row: int, column: str, value: str):
        self.row = row
        self.column = column
        self.value = value
        super().__init__(f"row {row}, column {column!r}: {value!r} is not a finite number")


class EmptyAfterParsingError(PilotFormatError):
    """No usable rows remained after parsing."""


class SingleClassError(PilotFormatError):
    """The parsed pilot contains only cases or only controls."""
