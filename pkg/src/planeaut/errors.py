"""Exception types shared across the package."""


class PlaneAutError(Exception):
    """Base class for all package errors."""


class ZeroPolynomial(PlaneAutError, ValueError):
    pass


class DegenerateOrder(PlaneAutError, ValueError):
    """The characteristic divides the requested root-of-unity order."""


class Unsupported(PlaneAutError, NotImplementedError):
    pass


class ResourceBound(PlaneAutError):
    """A configured degree or size bound was exceeded."""


class NotAnAutomorphism(PlaneAutError):
    def __init__(self, stage, detail=""):
        self.stage = stage
        self.detail = detail
        super().__init__(f"{stage}: {detail}" if detail else stage)


class InfiniteOrder(PlaneAutError):
    pass


class NotFiniteOrder(PlaneAutError):
    pass


class CharacteristicDividesOrder(PlaneAutError):
    pass


class RootsOfUnityMissing(PlaneAutError):
    pass


class NotComaximalVariablePair(PlaneAutError):
    pass


class NotSplitOverConstants(PlaneAutError):
    pass


class DescentFailed(PlaneAutError):
    pass


class OrderCheckFailed(PlaneAutError):
    pass


class CannotConstruct(PlaneAutError):
    pass


class Degenerate(PlaneAutError, ValueError):
    pass


class ParseError(PlaneAutError, ValueError):
    def __init__(self, message, position=None):
        self.position = position
        if position is not None:
            message = f"{message} at position {position}"
        super().__init__(message)


class SchemaError(PlaneAutError, ValueError):
    pass
