class BubbleCertError(Exception):
    """Base class for everything this package raises on purpose."""


class PoleError(BubbleCertError, ValueError):
    """A cotangent argument landed on an integer multiple of pi."""

    def __init__(self, message: str, indices=()):
        super().__init__(message)
        self.indices = tuple(indices)


class InfeasibleCandidate(BubbleCertError):
    """A curvature integral came out negative for a proposed bubble."""


class IntervalError(BubbleCertError, ValueError):
    pass


class CertificateError(BubbleCertError):
    """An exact/float cross-check disagreed."""


class ConfigError(BubbleCertError, ValueError):
    pass
