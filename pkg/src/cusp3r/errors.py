"""Exceptions and warnings shared across the package."""


class NonGenericError(ValueError):
    """Parameters (or a point) sit on a transition where a label is undefined.

    ``detail`` carries whatever diagnostic the raiser had at hand, e.g. the
    nearest separating surface and the signed gap to it.
    """

    def __init__(self, message, detail=None):
        super().__init__(message)
        self.detail = detail or {}


class NonGenericWarning(UserWarning):
    pass


class DegeneratePolynomialError(ValueError):
    pass


class BoundaryProximityError(ValueError):
    """A probe point lies within cluster tolerance of a workspace boundary."""


class AmbiguousLabelError(RuntimeError):
    pass


class CertificationError(RuntimeError):
    """A zero of the image velocity that is not backed by a triple IK root."""


class UnstableCountError(RuntimeError):
    def __init__(self, message, counts=None):
        super().__init__(message)
        self.counts = counts or {}


class NoMatchError(RuntimeError):
    def __init__(self, message, evidence=None):
        super().__init__(message)
        self.evidence = evidence
