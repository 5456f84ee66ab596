"""Exception types shared across the package."""


class DistbenchError(Exception):
    """Base class for every error raised by this package."""


class DimensionMismatchError(DistbenchError):
    """Two vectors (or a query and a training set) differ in dimension."""


class DomainViolationError(DistbenchError):
    """Input contains values outside a metric's declared domain."""


class UnknownMetricError(DistbenchError, KeyError):
    """Requested abbreviation is not in the metric registry."""


class MissingValueError(DistbenchError):
    """A CSV cell is empty."""


class NonNumericError(DistbenchError):
    """A CSV feature cell does not parse as a finite real number."""


class EmptyDatasetError(DistbenchError):
    """A dataset has no usable rows (or no feature columns)."""


class InconsistentArityError(DistbenchError):
    """CSV rows do not all have the same number of columns."""


class TooSmallError(DistbenchError):
    """A split would leave the train or the test side empty."""


class LengthMismatchError(DistbenchError):
    """Paired sequences differ in length (or are empty)."""


class ClassOutOfRangeError(DistbenchError):
    """A class id falls outside [0, n_classes)."""


class ConfigError(DistbenchError):
    """An experiment configuration is invalid or cannot be parsed."""
