"""Exception hierarchy shared by all modules."""


class SingerError(ValueError):
    """Base class for domain errors raised by this package."""


class NotPrime(SingerError):
    pass


class DegreeOutOfRange(SingerError):
    pass


class ZeroInverse(SingerError, ZeroDivisionError):
    pass


class NotPrimePower(SingerError):
    pass


class NotAUnit(SingerError):
    pass


class ModulusMismatch(SingerError):
    pass


class TooLarge(SingerError):
    pass


class UnsupportedChamberSystem(SingerError):
    pass


class ChamberNotFound(SingerError, KeyError):
    pass


class PreconditionViolated(SingerError):
    pass


class NotSingerCyclic(SingerError):
    pass


class InvalidGluing(SingerError):
    pass


class NoSuchEdge(SingerError, KeyError):
    pass


class ParseError(SingerError):
    """Malformed input file."""
