"""Exception hierarchy shared by all modules."""


class ThetaDynError(Exception):
    """Base class for every error raised by this package."""


class NotPrimeError(ThetaDynError, ValueError):
    pass


class EvenCharacteristicError(ThetaDynError, ValueError):
    pass


class ReducibleModulusError(ThetaDynError, ValueError):
    pass


class ZeroElementError(ThetaDynError, ZeroDivisionError):
    pass


class NotASquareError(ThetaDynError, ValueError):
    pass


class DomainTooLargeError(ThetaDynError):
    def __init__(self, size, limit):
        super().__init__(f"domain of size {size} exceeds brute-force limit {limit}")
        self.size = size
        self.limit = limit


class PeriodicInputError(ThetaDynError, ValueError):
    pass


class NotInRingError(ThetaDynError, ValueError):
    pass


class PointNotOnCurveError(ThetaDynError, ValueError):
    pass


class WrongResidueClassError(ThetaDynError, ValueError):
    pass


class NoMatchError(ThetaDynError):
    """An internal consistency check on the norm-2 prime selection failed."""


class FactorizationError(ThetaDynError):
    pass


class KNotInCaseError(ThetaDynError, ValueError):
    pass


class KZeroError(ThetaDynError, ValueError):
    pass
