"""Exception hierarchy for qcdivide."""


class QCDivideError(ValueError):
    """Base class for all errors raised by this package."""


class NegativeProbability(QCDivideError):
    pass


class NotNormalized(QCDivideError):
    pass


class DegenerateRatio(QCDivideError, ZeroDivisionError):
    """A same/notsame ratio whose denominator vanishes."""


class UndefinedRatio(QCDivideError, ZeroDivisionError):
    """Empirical data has no 'notsame' outcomes, so P_s/P_n is undefined."""


class InvalidParameter(QCDivideError):
    pass


class InconsistentMarginals(QCDivideError):
    """Pairwise tables and single-variable marginals admit no common joint."""
