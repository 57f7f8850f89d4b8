"""Exception hierarchy shared by the engine and the command line."""


class CSDError(Exception):
    """Base class for every error raised by rank2csd."""


class ZeroDeterminant(CSDError):
    pass


class NotPositivePBC(CSDError):
    pass


class CutoffMismatch(CSDError):
    pass


class TableIncomplete(CSDError):
    pass


class PreconditionViolated(CSDError):
    pass


class InvariantViolation(CSDError):
    pass


class IdentityFailed(CSDError):
    pass


class RangeError(CSDError):
    pass


class IncompleteSpecials(CSDError):
    pass


class DegreeInsufficient(CSDError):
    pass


class CacheCorrupt(CSDError):
    pass
