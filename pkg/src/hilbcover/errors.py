"""Exception types. All derive from GeometryError."""


class GeometryError(ValueError):
    pass


class DegenerateBody(GeometryError):
    pass


class DimensionError(GeometryError):
    pass


class OriginNotInterior(GeometryError):
    pass


class PointNotInterior(GeometryError):
    pass


class DomainViolation(GeometryError):
    pass


class NotSymmetric(GeometryError):
    pass


class NotContained(GeometryError):
    pass


class InvalidParameter(GeometryError):
    pass


class DegenerateCut(GeometryError):
    pass


class UnknownCheck(KeyError):
    pass


class EmptyReport(GeometryError):
    pass


# aliases matching the names used in the operation contracts
NotCentrallySymmetric = NotSymmetric
RegionNotInterior = NotContained
DimensionMismatch = DimensionError


class RadiusOutOfRange(InvalidParameter):
    pass


class ParseError(GeometryError):
    """Body text that is neither valid JSON nor a known generator string."""


ValidationError = GeometryError
