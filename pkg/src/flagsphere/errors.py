"""Exception hierarchy shared by every module."""


class FlagSphereError(Exception):
    """Base class for all library errors."""


class InvalidVertex(FlagSphereError, ValueError):
    pass


class InvalidParameter(FlagSphereError, ValueError):
    pass


class NotAFace(FlagSphereError, ValueError):
    pass


class NotAnEdge(FlagSphereError, ValueError):
    pass


class JNotEquator(FlagSphereError, ValueError):
    """Raised by a vertex split when the splitting set is not an equator of the link."""


class DimensionMismatch(FlagSphereError, ValueError):
    pass


class NotPalindromic(FlagSphereError, ValueError):
    """The h-polynomial violates Dehn-Sommerville, so no gamma-vector exists."""


class ComponentCountNotTwo(FlagSphereError, RuntimeError):
    """Deleting an equator did not leave exactly two components."""


class HypothesisViolated(FlagSphereError, ValueError):
    pass


class CapExceeded(FlagSphereError, ValueError):
    pass


class FacetFileError(FlagSphereError, ValueError):
    pass
