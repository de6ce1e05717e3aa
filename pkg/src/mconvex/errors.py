"""Exception hierarchy shared by all modules."""


class LatticeError(Exception):
    """Base class for every error raised by this package."""


class NotAPoset(LatticeError):
    """The cover relation contains a cycle."""

    def __init__(self, message, pair=None):
        super().__init__(message)
        self.pair = pair


class NoUniqueBound(LatticeError):
    """Some pair of elements lacks a unique join or meet."""

    def __init__(self, message, pair=None):
        super().__init__(message)
        self.pair = pair


class MultipleBottoms(NoUniqueBound):
    """Several minimal elements (so some pair has no meet)."""


class MultipleTops(NoUniqueBound):
    """Several maximal elements (so some pair has no join)."""


class RedundantCover(LatticeError):
    """A listed cover is implied by transitivity (or is duplicated)."""

    def __init__(self, message, pair=None):
        super().__init__(message)
        self.pair = pair


class NotComparable(LatticeError):
    pass


class TooLarge(LatticeError):
    pass


class NotSemimodular(LatticeError):
    pass


class NotModularLattice(LatticeError):
    pass


class FlagBudgetExceeded(LatticeError):
    pass


class NotAFlag(LatticeError):
    """A supplied element sequence is not a maximal chain.

    ``pair`` holds the first offending consecutive pair, if any.
    """

    def __init__(self, message, pair=None):
        super().__init__(message)
        self.pair = pair


class NotABijection(LatticeError):
    pass


class NotInHull(LatticeError):
    pass


class AxiomViolation(LatticeError):
    pass


class NotPreAntimatroid(LatticeError):
    pass


class OutOfBounds(LatticeError):
    pass


class ParseError(LatticeError):
    pass
