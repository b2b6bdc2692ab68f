"""Exception hierarchy.  Every domain failure derives from :class:`GfredError`."""


class GfredError(Exception):
    """Base class for domain errors (CLI exit code 3)."""


class InconsistentLambda(GfredError):
    """The cocycle parameters violate l1/4 + l2 - 2*l3 = 0, so no stabilizer exists."""


class NotTangent(GfredError):
    """No Borel gauge direction brings a variation back to the constraint surface."""


class ConstraintViolated(GfredError):
    """A connection that must have lower-left entry 1 does not."""


class FitFailed(GfredError):
    """Mode values do not follow the A*k^3 + B*k law."""


class CertificateNotFound(GfredError):
    """The chosen family of pairs does not witness non-triviality."""


class UnknownSuite(GfredError):
    pass


class ParseError(ValueError):
    """Malformed JSON input (CLI exit code 2)."""
