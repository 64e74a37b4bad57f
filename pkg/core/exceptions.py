"""Exception hierarchy for stereorange."""


class StereoRangeError(Exception):
    """Base class for every error raised by stereorange."""


class DomainError(StereoRangeError, ValueError):
    """An input violates the precondition of an operation."""


class NonPositiveDisparityError(DomainError):
    """Disparity Δx ≤ 0: the range is undefined or divergent."""


class SceneFileError(DomainError):
    """A scene file cannot be read or does not describe a valid scene."""


class ComputationError(StereoRangeError):
    """A well-formed computation could not produce a result."""


class ProjectionUndefinedError(ComputationError):
    """The point lies on or behind the image plane of a camera."""


class NoOverlapError(ComputationError):
    """No disparity candidate leaves any valid pixel to compare."""
