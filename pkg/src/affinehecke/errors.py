"""Exception hierarchy shared by every module of the package."""


class HeckeError(Exception):
    """Base class for all errors raised by affinehecke."""


class DivisionByZero(HeckeError, ZeroDivisionError):
    pass


class PoleAtPoint(HeckeError, ZeroDivisionError):
    pass


class IndexOutOfRange(HeckeError, IndexError):
    pass


class RankMismatch(HeckeError, ValueError):
    pass


class ConfigMismatch(HeckeError, ValueError):
    pass


class ModeMismatch(HeckeError, ValueError):
    pass


class ResourceLimit(HeckeError):
    pass


class InvalidParameter(HeckeError, ValueError):
    pass


class ParseError(HeckeError, SyntaxError):
    """Syntax error in an algebra expression; ``position`` is a 0-based offset."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class InconsistentLabels(HeckeError, ValueError):
    pass


class InvalidDescriptor(HeckeError, ValueError):
    pass


class NotRankTwo(HeckeError, ValueError):
    pass


class UnsupportedShape(HeckeError):
    pass


class AmbiguousConstituent(HeckeError):
    pass


class NotReducible(HeckeError, ValueError):
    pass
