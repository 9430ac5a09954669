class WeakMagError(Exception):
    """Base class for every error raised by weakmag."""

    pass


class InvalidArgumentError(WeakMagError, ValueError):
    """Raised when an input violates the documented domain of an operation."""

    pass


class OrthogonalSelectionError(WeakMagError, ArithmeticError):
    """Raised when pre- and post-selection are (numerically) orthogonal."""

    def __init__(self, beta: float, phi: float, probability: float):
        super().__init__(
            f"pre/post-selection orthogonal at beta={beta!r}, phi={phi!r} "
            f"(postselection probability {probability:.3e})"
        )
        self.beta = beta
        self.phi = phi
        self.probability = probability


class EmptyOverlapError(InvalidArgumentError):
    """Raised when the spectrometer window does not overlap the spectrum."""

    pass


class InsufficientSignalError(WeakMagError):
    """Raised when a spectrum has too few points above its minimum to fit."""

    pass


class NotDetectableError(WeakMagError):
    """Raised when the sensitivity at the requested pre-selection is zero."""

    pass


class SweepPointError(WeakMagError):
    """Wraps an error raised while evaluating one field value of a sweep."""

    def __init__(self, b_tesla: float, cause: Exception):
        super().__init__(f"sweep failed at B={b_tesla!r} T: {cause}")
        self.b_tesla = b_tesla
        self.cause = cause


class ConfigError(WeakMagError):
    """Raised when a run configuration fails validation.

    `problems` holds (key_path, message) pairs, e.g. ("probe.w_nm", "must be > 0").
    """

    def __init__(self, problems: list[tuple[str, str]]):
        self.problems = problems
        lines = [f"{key}: {msg}" for key, msg in problems]
        super().__init__("invalid configuration:\n  " + "\n  ".join(lines))
