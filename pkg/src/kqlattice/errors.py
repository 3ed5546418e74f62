"""Exception hierarchy shared by all kqlattice modules."""


class KQLatticeError(Exception):
    """Base class for every error raised by this package."""


class DomainError(KQLatticeError, ValueError):
    """An argument lies outside the domain of the operation."""


class NotInvertible(DomainError):
    """Raised when a residue has no multiplicative inverse."""


class InvalidFactorization(DomainError):
    """M1 * M2 != M, the factors share a divisor, or a factor is trivial."""


class NonScalarCommutator(KQLatticeError):
    """U V U^-1 V^-1 is not a multiple of the identity."""


class BijectivityViolation(KQLatticeError):
    """A cell-to-site table mapped two cell points onto one site."""
