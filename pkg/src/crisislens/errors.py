"""Exception hierarchy shared across crisislens modules."""


class CrisisLensError(Exception):
    """Base class for all library errors."""


class ConfigError(CrisisLensError):
    pass


class MalformedRecord(CrisisLensError):
    """An archive line could not be turned into a TweetRecord."""


class BadScore(CrisisLensError):
    """Lexicon score outside the 1..9 rating scale."""


class DuplicateToken(CrisisLensError):
    pass


class EmptyAfterMask(CrisisLensError):
    """No scored tokens survived the neutral lens."""


class DateAxisMismatch(CrisisLensError):
    pass


class EmptyDistribution(CrisisLensError):
    pass


class SupportViolation(CrisisLensError):
    """KL divergence requested where p has mass outside q's support."""


class EgoAbsent(CrisisLensError):
    pass


class TooSmall(CrisisLensError):
    pass


class NoReachablePairs(CrisisLensError):
    pass


class BadInput(CrisisLensError, ValueError):
    pass


class EmptyCommunity(CrisisLensError):
    pass
