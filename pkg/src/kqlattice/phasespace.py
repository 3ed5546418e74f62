"""The finite Hilbert space of an M-point phase plane.

Units are fixed to hbar = c = 1, so coordinates are the integers
``s = 0..M-1`` and momenta are ``2*pi*t/M`` stored by their index ``t``.
With ``M = M1 * M2`` the two lattice constants are ``a = M1`` and
``b = M2``.

Conventions
-----------
* ``T(d)`` translates by ``d``: ``(T(d) psi)(s) = psi((s + d) mod M)``.
  This is the direction for which ``T(b)`` has the eigenvalue
  ``exp(+i K b)`` on the kets below.
* ``tau(r)`` is ``diag(exp(2 pi i r s / M))``; ``r = M2`` gives
  ``tau(2 pi / a)`` and ``r = M1`` gives ``tau(2 pi / b)``.
* A kq ket of representation ``rep`` with period ``d`` and ``L = M / d``
  copies is ``L**-0.5 * sum_l exp(2 pi i n l / L) delta(s - m - l d)``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Callable, Optional, Union

import numpy as np

from .arith import CoprimeFactorization, solve_k_diophantine, solve_q_diophantine
from .errors import DomainError, NonScalarCommutator

MAX_DIMENSION = 4096

UNITARY_ATOL = 1e-10
PHASE_ATOL = 1e-12


class Rep(enum.Enum):
    """Which of the two conjugate representations.

    ``A`` is the kq-representation built on ``a = M1`` (``M2`` values of k,
    ``M1`` values of q).  ``B`` is the KQ-representation built on ``b = M2``
    (``M1`` values of K, ``M2`` values of Q).
    """

    A = "a"
    B = "b"

    @classmethod
    def parse(cls, value: Union[str, "Rep"]) -> "Rep":
        if isinstance(value, Rep):
            return value
        try:
            return cls(value.lower())
        except ValueError:
            raise DomainError(f"unknown representation {value!r}; use 'a' or 'b'") from None

    @property
    def other(self) -> "Rep":
        return Rep.B if self is Rep.A else Rep.A


@dataclass(frozen=True)
class PhasePlane:
    """Discrete phase plane of ``M = M1 * M2`` points per axis."""

    factorization: CoprimeFactorization

    def __post_init__(self):
        f = self.factorization
        if f.M1 * f.M2 != f.M:
            raise DomainError(f"inconsistent factorization {f}")
        if f.M > MAX_DIMENSION:
            raise DomainError(f"M = {f.M} exceeds the dense-matrix cap {MAX_DIMENSION}")

    @classmethod
    def from_factors(cls, M1: int, M2: int, allow_trivial: bool = False) -> "PhasePlane":
        return cls(CoprimeFactorization.of(M1, M2, allow_trivial))

    @property
    def M(self) -> int:
        return self.factorization.M

    @property
    def M1(self) -> int:
        return self.factorization.M1

    @property
    def M2(self) -> int:
        return self.factorization.M2

    @property
    def a(self) -> int:
        return self.M1

    @property
    def b(self) -> int:
        return self.M2

    def period(self, rep: Rep) -> int:
        """Cell length ``d`` along x: ``a`` for rep A, ``b`` for rep B."""
        return self.M1 if Rep.parse(rep) is Rep.A else self.M2

    def copies(self, rep: Rep) -> int:
        """Number ``L = M / d`` of cell copies; also the number of k values."""
        return self.M // self.period(rep)

    def grid_shape(self, rep: Rep) -> tuple[int, int]:
        """``(number of n values, number of m values)`` for the rep's cell."""
        return self.copies(rep), self.period(rep)

    def coordinates(self) -> np.ndarray:
        return np.arange(self.M, dtype=float)

    def momenta(self) -> np.ndarray:
        return 2 * np.pi * np.arange(self.M) / self.M


@dataclass
class StateVector:
    """M complex amplitudes ``psi(s)`` on the coordinate grid."""

    plane: PhasePlane
    amplitudes: np.ndarray

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=np.complex128)
        if amps.shape != (self.plane.M,):
            raise DomainError(f"expected {self.plane.M} amplitudes, got shape {amps.shape}")
        self.amplitudes = amps

    @classmethod
    def delta(cls, plane: PhasePlane, s: int) -> "StateVector":
        amps = np.zeros(plane.M, dtype=np.complex128)
        amps[s % plane.M] = 1.0
        return cls(plane, amps)

    @classmethod
    def uniform(cls, plane: PhasePlane) -> "StateVector":
        return cls(plane, np.full(plane.M, plane.M ** -0.5, dtype=np.complex128))

    @classmethod
    def random(cls, plane: PhasePlane, rng: np.random.Generator) -> "StateVector":
        """Complex-Gaussian amplitudes, normalized."""
        z = rng.standard_normal(plane.M) + 1j * rng.standard_normal(plane.M)
        return cls(plane, z / np.linalg.norm(z))

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def is_normalized(self, atol: float = 1e-12) -> bool:
        return abs(np.vdot(self.amplitudes, self.amplitudes).real - 1.0) <= atol

    def normalized(self) -> "StateVector":
        n = self.norm
        if n == 0:
            raise DomainError("cannot normalize the zero state")
        return StateVector(self.plane, self.amplitudes / n)

    def inner(self, other: "StateVector") -> complex:
        """``<self|other>``"""
        return complex(np.vdot(self.amplitudes, other.amplitudes))


@dataclass(frozen=True)
class Shift:
    d: int


@dataclass(frozen=True)
class Modulation:
    r: int


@dataclass(frozen=True)
class Product:
    factors: tuple


OperatorLabel = Union[Shift, Modulation, Product]


@dataclass
class UnitaryOperator:
    plane: PhasePlane
    matrix: np.ndarray = field(repr=False)
    label: OperatorLabel

    def __matmul__(self, other):
        if isinstance(other, StateVector):
            return self.apply(other)
        if other.plane != self.plane:
            raise DomainError("operators live on different planes")
        return UnitaryOperator(self.plane, self.matrix @ other.matrix, Product((self.label, other.label)))

    def apply(self, state: StateVector) -> StateVector:
        # permutation / diagonal structure applied implicitly
        if isinstance(self.label, Shift):
            return StateVector(state.plane, np.roll(state.amplitudes, -self.label.d))
        if isinstance(self.label, Modulation):
            return StateVector(state.plane, np.diagonal(self.matrix) * state.amplitudes)
        return StateVector(state.plane, self.matrix @ state.amplitudes)

    @property
    def dagger(self) -> "UnitaryOperator":
        return UnitaryOperator(self.plane, self.matrix.conj().T, Product((("dagger", self.label),)))

    def unitarity_deviation(self) -> float:
        """Max entrywise ``|U U^dagger - I|``."""
        eye = np.eye(self.plane.M)
        return float(np.max(np.abs(self.matrix @ self.matrix.conj().T - eye)))

    def is_unitary(self, atol: float = UNITARY_ATOL) -> bool:
        return self.unitarity_deviation() <= atol


def shift_operator(plane: PhasePlane, d: int) -> UnitaryOperator:
    """Translation ``T(d c) = exp(i p d c / hbar)``: ``(T psi)(s) = psi(s + d)``.

    ``d`` is accepted in ``[0, M]``; ``d = 0`` and ``d = M`` are the identity.
    """
    M = plane.M
    if not 0 <= d <= M:
        raise DomainError(f"shift d = {d} outside [0, {M}]")
    mat = np.zeros((M, M), dtype=np.complex128)
    rows = np.arange(M)
    mat[rows, (rows + d) % M] = 1.0
    return UnitaryOperator(plane, mat, Shift(d))


def modulation_operator(plane: PhasePlane, r: int) -> UnitaryOperator:
    """Modulation ``tau(2 pi r / (M c)) = diag(exp(2 pi i r s / M))``."""
    M = plane.M
    if not 0 <= r <= M:
        raise DomainError(f"modulation r = {r} outside [0, {M}]")
    s = np.arange(M)
    diag = np.exp(2j * np.pi * ((r * s) % M) / M)
    return UnitaryOperator(plane, np.diag(diag), Modulation(r))


def rep_operators(plane: PhasePlane, rep: Rep) -> tuple[UnitaryOperator, UnitaryOperator]:
    """The commuting pair defining ``rep``: ``(T(a), tau(2pi/a))`` or ``(T(b), tau(2pi/b))``."""
    rep = Rep.parse(rep)
    return shift_operator(plane, plane.period(rep)), modulation_operator(plane, plane.copies(rep))


def commutator_phase(U: UnitaryOperator, V: UnitaryOperator, atol: float = 1e-8) -> complex:
    """Scalar ``lam`` with ``U V U^-1 V^-1 = lam * I``.

    Raises
    ------
    NonScalarCommutator
        If the group commutator has off-diagonal entries above ``atol`` or a
        non-constant diagonal.
    """
    if U.plane != V.plane:
        raise DomainError("operators live on different planes")
    U_, V_ = U.matrix, V.matrix
    comm = U_ @ V_ @ U_.conj().T @ V_.conj().T
    diag = np.diagonal(comm)
    lam = complex(diag.mean())
    off = comm - np.diag(diag)
    residue = max(float(np.max(np.abs(off))), float(np.max(np.abs(diag - lam))))
    if residue > atol:
        raise NonScalarCommutator(f"commutator is not scalar (residue {residue:.3g})")
    return lam


def _check_cell_index(plane: PhasePlane, rep: Rep, n: int, m: int):
    n_count, m_count = plane.grid_shape(rep)
    if not (0 <= n < n_count and 0 <= m < m_count):
        raise DomainError(
            f"cell point (n={n}, m={m}) outside [0, {n_count}) x [0, {m_count}) for rep {rep.value}"
        )


def kq_basis_state(plane: PhasePlane, rep: Rep, n: int, m: int) -> StateVector:
    """Joint eigenket of the rep's translation and modulation.

    Nonzero only at ``s = m + l d`` for ``l = 0..L-1``, where it equals
    ``exp(i k_n l d) / sqrt(L)`` with ``k_n = 2 pi n / M``.
    """
    rep = Rep.parse(rep)
    _check_cell_index(plane, rep, n, m)
    d, L = plane.period(rep), plane.copies(rep)
    amps = np.zeros(plane.M, dtype=np.complex128)
    for l in range(L):
        # Delta(x - Q - l d) selects x == m + l d modulo M
        x = (m + l * d) % plane.M
        amps[x] += np.exp(2j * np.pi * ((n * l * d) % plane.M) / plane.M) / np.sqrt(L)
    return StateVector(plane, amps)


def kq_basis_matrix(plane: PhasePlane, rep: Rep) -> np.ndarray:
    """All basis kets of ``rep`` as columns, column index ``n * d + m``."""
    rep = Rep.parse(rep)
    n_count, m_count = plane.grid_shape(rep)
    cols = [kq_basis_state(plane, rep, n, m).amplitudes for n in range(n_count) for m in range(m_count)]
    return np.stack(cols, axis=1)


def eigenvalues(plane: PhasePlane, rep: Rep, n: int, m: int) -> tuple[complex, complex]:
    """``(exp(i k_n d), exp(i q_m 2pi/d))`` for the rep's operator pair."""
    d, L = plane.period(rep), plane.copies(rep)
    return np.exp(2j * np.pi * (n % L) / L), np.exp(2j * np.pi * (m % d) / d)


@dataclass(frozen=True)
class DeviationReport:
    name: str
    max_deviation: float
    checked: int
    tolerance: float

    @property
    def passed(self) -> bool:
        return self.max_deviation < self.tolerance


def verify_eigen_equations(
    plane: PhasePlane,
    rep: Rep,
    eigenvalue_table: Optional[Callable[[int, int], tuple[complex, complex]]] = None,
) -> DeviationReport:
    """Apply the rep's two commuting operators to every basis ket.

    Returns the largest ``|| U|kq> - lambda |kq> ||`` over both operators and
    all M kets.  ``eigenvalue_table`` replaces the expected eigenvalues; it
    exists for negative controls.
    """
    rep = Rep.parse(rep)
    table = eigenvalue_table or (lambda n, m: eigenvalues(plane, rep, n, m))
    T, tau = rep_operators(plane, rep)
    n_count, m_count = plane.grid_shape(rep)
    worst = 0.0
    for n in range(n_count):
        for m in range(m_count):
            ket = kq_basis_state(plane, rep, n, m)
            lam_T, lam_tau = table(n, m)
            for op, lam in ((T, lam_T), (tau, lam_tau)):
                resid = op.apply(ket).amplitudes - lam * ket.amplitudes
                worst = max(worst, float(np.linalg.norm(resid)))
    return DeviationReport(f"eigen-equations rep {rep.value}", worst, plane.M, UNITARY_ATOL)


def verify_eigenvalue_site_identity(plane: PhasePlane) -> DeviationReport:
    """Eigenvalues re-expressed through lattice sites of the other lattice.

    For rep B cells the T(b) eigenvalue ``exp(i K_n' b)`` equals
    ``exp(i t (2pi/a) b)`` and the tau(2pi/b) eigenvalue ``exp(i Q_m' 2pi/b)``
    equals ``exp(i s a 2pi/b)``; for rep A cells ``exp(i k_n a)`` equals
    ``exp(i v' (2pi/b) a)`` and ``exp(i q_m 2pi/a)`` equals
    ``exp(i u' b 2pi/a)``.  Site indices come from the Diophantine solvers.
    """
    f = plane.factorization
    M, M1, M2 = plane.M, plane.M1, plane.M2
    a, b = plane.a, plane.b
    e = lambda phase: np.exp(1j * phase)
    devs = []
    for n_p in range(M1):
        t, _ = solve_k_diophantine(n_p, f)
        K = 2 * np.pi * n_p / M
        devs.append(abs(e(K * b) - e(t * (2 * np.pi / a) * b)))
    for m_p in range(M2):
        s, _ = solve_q_diophantine(m_p, f)
        Q = m_p
        devs.append(abs(e(Q * 2 * np.pi / b) - e(s * a * 2 * np.pi / b)))
    g = f.swapped()
    for n in range(M2):
        # n + M2 t = M1 v'
        v_p, _ = solve_k_diophantine(n, g)
        k = 2 * np.pi * n / M
        devs.append(abs(e(k * a) - e(v_p * (2 * np.pi / b) * a)))
    for m in range(M1):
        # m + M1 s = M2 u'
        u_p, _ = solve_q_diophantine(m, g)
        devs.append(abs(e(m * 2 * np.pi / a) - e(u_p * b * 2 * np.pi / a)))
    return DeviationReport("eigenvalue/site identities", float(max(devs)), len(devs), PHASE_ATOL)
