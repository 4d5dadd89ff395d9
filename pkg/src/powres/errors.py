"""Domain exceptions shared across the package."""


class PowresError(Exception):
    """Base class for every error raised by this package."""


class NotPrime(PowresError):
    """The supplied modulus failed deterministic primality verification."""


class TooSmall(PowresError):
    """The prime is below the supported minimum (p >= 5)."""


class BadN(PowresError):
    """n is not a positive odd divisor of p - 1."""


class BadResidue(PowresError):
    """The residue argument is 0 mod p."""


class NotResidue(PowresError):
    """m is not an n-th power residue modulo p."""


class ScaleLimit(PowresError):
    """The request exceeds a documented size cap (enumeration, BSGS, modulus)."""


class NotEnumerated(PowresError):
    """The subgroup's element list was not materialized (order above cap)."""


class BadRadius(PowresError):
    """The interval radius K is not an integer in [1, (p - 1) / 2]."""


class ZeroFrequency(PowresError):
    """r = 0 mod p, where the envelope 1/(2*||r/p||) is undefined."""


class TrivialSubgroup(PowresError):
    """|H| = 1: the sum ratio is pinned at 1 and the exponent is 0."""


class EmptyRange(PowresError):
    """The requested prime range contains no usable prime."""


class InsufficientData(PowresError):
    """Fewer than two usable points (or zero variance) for a regression."""
