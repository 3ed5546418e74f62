"""Exact integer machinery for the cell/site correspondences.

Everything here works on Python ints, so there is no overflow and no
floating point.  The two Diophantine solvers are the integer forms of the
conditions that pair a representation's eigenvalue grid point with a von
Neumann lattice site:

    n' + M1 v' = M2 t      (momentum direction)
    m' + M2 u' = M1 s      (coordinate direction)

Both have exactly one solution in the fundamental ranges because
gcd(M1, M2) = 1.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd

from .errors import DomainError, InvalidFactorization, NotInvertible

__all__ = [
    "CoprimeFactorization",
    "extended_gcd",
    "mod_inverse",
    "coprime_factorizations",
    "is_prime_power",
    "solve_k_diophantine",
    "solve_q_diophantine",
]


def extended_gcd(p: int, q: int) -> tuple[int, int, int]:
    """Return ``(g, x, y)`` with ``g = gcd(p, q) >= 0`` and ``p*x + q*y = g``.

    >>> extended_gcd(3, 5)
    (1, 2, -1)
    """
    if p == 0 and q == 0:
        raise DomainError("extended_gcd(0, 0) is undefined")
    old_r, r = p, q
    old_x, x = 1, 0
    old_y, y = 0, 1
    while r != 0:
        quot = old_r // r
        old_r, r = r, old_r - quot * r
        old_x, x = x, old_x - quot * x
        old_y, y = y, old_y - quot * y
    if old_r < 0:
        old_r, old_x, old_y = -old_r, -old_x, -old_y
    return old_r, old_x, old_y


def mod_inverse(p: int, m: int) -> int:
    """Multiplicative inverse of ``p`` modulo ``m``, reduced to ``[0, m)``."""
    if m < 2:
        raise DomainError(f"modulus must be >= 2, got {m}")
    g, x, _ = extended_gcd(p % m, m)
    if g != 1:
        raise NotInvertible(f"{p} is not invertible modulo {m} (gcd = {g})")
    return x % m


@dataclass(frozen=True)
class CoprimeFactorization:
    """A split ``M = M1 * M2`` with ``gcd(M1, M2) = 1``.

    Trivial factors (``M1 == 1`` or ``M2 == 1``) are rejected unless
    ``allow_trivial`` is set; with a trivial factor one representation has
    a single eigenvalue and the lattice degenerates.
    """

    M: int
    M1: int
    M2: int
    allow_trivial: bool = field(default=False, compare=False, repr=False)

    def __post_init__(self):
        M, M1, M2 = self.M, self.M1, self.M2
        if M1 < 1 or M2 < 1 or M1 * M2 != M:
            raise InvalidFactorization(f"{M1} * {M2} != {M}")
        if gcd(M1, M2) != 1:
            raise InvalidFactorization(
                f"factors {M1} and {M2} are not relatively prime (gcd = {gcd(M1, M2)})"
            )
        if not self.allow_trivial and (M1 < 2 or M2 < 2):
            raise InvalidFactorization(f"trivial factor in {M1} * {M2}")

    @classmethod
    def of(cls, M1: int, M2: int, allow_trivial: bool = False) -> "CoprimeFactorization":
        return cls(M1 * M2, M1, M2, allow_trivial)

    @classmethod
    def _unchecked(cls, M1: int, M2: int) -> "CoprimeFactorization":
        # Test-only backdoor: builds a factorization without the gcd guard so
        # negative controls can show what breaks without coprimality.
        obj = object.__new__(cls)
        object.__setattr__(obj, "M", M1 * M2)
        object.__setattr__(obj, "M1", M1)
        object.__setattr__(obj, "M2", M2)
        object.__setattr__(obj, "allow_trivial", True)
        return obj

    def swapped(self) -> "CoprimeFactorization":
        """The same split with the roles of M1 and M2 exchanged."""
        return CoprimeFactorization(self.M, self.M2, self.M1, self.allow_trivial)

    def __iter__(self):
        # allows ``M1, M2 = f``
        yield self.M1
        yield self.M2


def coprime_factorizations(M: int, allow_trivial: bool = False) -> list[CoprimeFactorization]:
    """All ordered coprime splits of ``M``, sorted by ``M1``.

    Empty for prime powers when trivial factors are excluded.
    """
    if M < 2:
        raise DomainError(f"M must be >= 2, got {M}")
    lo, hi = (1, M) if allow_trivial else (2, M - 1)
    out = []
    for M1 in range(lo, hi + 1):
        if M % M1 == 0 and gcd(M1, M // M1) == 1:
            out.append(CoprimeFactorization(M, M1, M // M1, allow_trivial))
    return out


def is_prime_power(M: int) -> bool:
    """True when ``M`` has exactly one distinct prime divisor (trial division)."""
    if M < 2:
        return False
    p = 2
    while p * p <= M:
        if M % p == 0:
            while M % p == 0:
                M //= p
            return M == 1
        p += 1
    return True


def solve_k_diophantine(n_prime: int, f: CoprimeFactorization) -> tuple[int, int]:
    """Solve ``n' + M1 v' = M2 t`` for ``(t, v')`` in ``[0, M1) x [0, M2)``.

    >>> solve_k_diophantine(1, CoprimeFactorization.of(3, 5))
    (2, 3)
    """
    M1, M2 = f.M1, f.M2
    if not 0 <= n_prime < M1:
        raise DomainError(f"n' = {n_prime} outside [0, {M1})")
    t = n_prime * mod_inverse(M2, M1) % M1 if M1 > 1 else 0
    v_prime, rem = divmod(M2 * t - n_prime, M1)
    assert rem == 0 and 0 <= v_prime < M2
    return t, v_prime


def solve_q_diophantine(m_prime: int, f: CoprimeFactorization) -> tuple[int, int]:
    """Solve ``m' + M2 u' = M1 s`` for ``(s, u')`` in ``[0, M2) x [0, M1)``."""
    if not 0 <= m_prime < f.M2:
        raise DomainError(f"m' = {m_prime} outside [0, {f.M2})")
    # same equation with the factors exchanged
    return solve_k_diophantine(m_prime, f.swapped())
