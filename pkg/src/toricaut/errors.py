class ToricAutError(Exception):
    """Base class for all errors raised by toricaut."""


class InputError(ToricAutError, ValueError):
    """Malformed or degenerate user input."""


class AllZeroGenerators(InputError):
    pass


class NotInLattice(ToricAutError, ValueError):
    pass


class NotPointed(ToricAutError):
    """The cone spanned by the generators is not full-dimensional."""


class NotStronglyConvex(InputError):
    """The weight cone contains a line, i.e. P has nonzero invertible elements."""


class RankTooLarge(ToricAutError):
    pass


class NotNormalRay(ToricAutError, ValueError):
    pass


class NotInMonoid(ToricAutError, ValueError):
    pass


class SaturationSearchExceeded(ToricAutError):
    pass


class UnknownVerdictsPresent(ToricAutError):
    pass


class NonUniqueMinimal(ToricAutError):
    pass
