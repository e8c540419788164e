"""Exception hierarchy shared by every module."""


class QslmqError(Exception):
    """Base class for all errors raised by this package."""


class ValidationError(QslmqError, ValueError):
    def __init__(self, field, message):
        self.field = field
        super().__init__(f"{field}: {message}")


class NearDegenerateRoots(QslmqError):
    def __init__(self, min_root_gap, scale):
        self.min_root_gap = min_root_gap
        super().__init__(
            f"cubic roots nearly coincide (min_root_gap={min_root_gap:.3e}, "
            f"threshold={1e-6 * scale:.3e}); three-exponential form is unreliable"
        )


class AmplitudeZero(QslmqError):
    pass


class NoEvolution(QslmqError):
    pass


class QuadratureFailure(QslmqError):
    pass


class StepTooLarge(QslmqError):
    pass


class BracketInvalid(QslmqError):
    pass
