"""Exception hierarchy shared by all pgmms modules."""


class PgmmsError(Exception):
    """Base class for every error raised by this package."""


class GeometryError(PgmmsError, ValueError):
    pass


class IndexOutOfRange(GeometryError):
    pass


class DuplicateLine(GeometryError):
    pass


class DuplicatePoint(GeometryError):
    pass


class EmptyLine(GeometryError):
    pass


class NonUniformLines(GeometryError):
    pass


class NonRegularPoints(GeometryError):
    pass


class PairOnTwoLines(GeometryError):
    pass


class AlphaNotConstant(GeometryError):
    pass


class TrivialGeometry(GeometryError):
    """Raised for alpha = 0 structures, which are excluded from consideration."""


class InvalidParameters(GeometryError):
    pass


class ConstructionError(PgmmsError, ValueError):
    pass


class WeightingError(PgmmsError, ValueError):
    pass


class LinearSystemError(PgmmsError, ValueError):
    pass


class BoundError(PgmmsError, ValueError):
    pass


class ParseError(PgmmsError, ValueError):
    def __init__(self, message, lineno=None, source=None):
        self.lineno = lineno
        self.source = source
        where = ""
        if source is not None:
            where += f"{source}:"
        if lineno is not None:
            where += f"{lineno}: "
        elif where:
            where += " "
        super().__init__(where + message)
