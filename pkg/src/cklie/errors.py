"""Exception types raised by the cklie package."""


class CKError(ArithmeticError):
    """Base class for numerical failures on a Cayley-Klein space."""


class ChartSingularityError(CKError):
    """A coordinate-chart singularity was hit (e.g. a tangent pole)."""


class OffManifoldError(CKError):
    """Input does not lie on the space to within tolerance."""


class OutOfComponentError(CKError):
    """Ambient point lies outside the connected component containing the origin."""


class TriangleDomainError(CKError):
    """Side lengths do not describe a realizable triangle in this signature."""


class InversionError(CKError):
    """A kappa-trigonometric inverse fell outside its range."""


class IntegrationAbort(CKError):
    """Integration stopped before a chart pole.

    ``t`` and ``point`` hold the last accepted time and raw chart point.
    """

    def __init__(self, message, t, point):
        super().__init__(message)
        self.t = t
        self.point = point
