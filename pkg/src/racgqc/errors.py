"""Exception hierarchy shared by every module."""


class RacgError(Exception):
    """Base class; the CLI maps any subclass to exit code 2."""


class ParseError(RacgError):
    pass


class ValidationError(RacgError):
    pass


class UnknownVertex(RacgError):
    pass


class UnknownLetter(RacgError):
    pass


class LengthCapExceeded(RacgError):
    pass


class EmptyWord(RacgError):
    pass


class NotFolded(RacgError):
    pass


class InfiniteComplex(RacgError):
    pass


class InvalidK(RacgError):
    pass


class BadParameter(RacgError):
    pass


class LabelOutsideBase(RacgError):
    pass


class NotAGeneralization(RacgError):
    pass


class BudgetExceeded(RacgError):
    pass
