"""Exception hierarchy shared by all balayage modules."""


class BalayageError(ValueError):
    """Base class for every error raised by this package."""


class UnsupportedClip(BalayageError):
    pass


class NegativeRadius(BalayageError):
    pass


class EmptyGrid(BalayageError):
    pass


class BadInterval(BalayageError):
    pass


class BadParams(BalayageError):
    pass


class DivergentTail(BalayageError):
    """An integral over an unbounded range does not converge."""


class NotPositive(BalayageError):
    pass


class OriginPole(BalayageError):
    pass


class OriginAtom(BalayageError):
    pass


class UnsweepableLine(BalayageError):
    pass


class AtomAtCorner(BalayageError):
    pass


class QuadratureFailure(BalayageError):
    pass


class ProbeInStrip(BalayageError):
    pass
