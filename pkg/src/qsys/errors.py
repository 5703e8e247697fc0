"""Exception hierarchy shared by the package.

Every error carries an ``exit_code`` so the CLI can map failures onto its
exit-code contract without a lookup table.
"""


class QsysError(Exception):
    exit_code = 3


class UsageError(QsysError):
    """Bad user input (invalid seed, out-of-range index, ...)."""

    exit_code = 2


class NotDivisible(QsysError):
    pass


class NotInvertible(QsysError):
    pass


class NotMotzkin(UsageError):
    pass


class IllegalMove(QsysError):
    pass


class ConservationViolated(QsysError):
    pass


class TooLarge(UsageError):
    pass


class PatternMismatch(QsysError):
    pass


class DegenerateSum(QsysError):
    pass


class OutOfDomain(QsysError):
    pass


class IndexOutOfRange(UsageError):
    pass
