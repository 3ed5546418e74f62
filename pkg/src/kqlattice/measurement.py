"""kq transform, lattice wave function and simultaneous measurement.

The kq function of a state is its expansion in the kets of
:func:`~kqlattice.phasespace.kq_basis_state`:

    C(n, m) = <kq_{n,m}|psi> = L**-0.5 * sum_l exp(-2 pi i n l / L) psi(m + l d)

so it is quasi-periodic, ``C(k, q + d) = exp(i k d) C(k, q)`` and
``C(k + 2pi/d, q) = C(k, q)``.

Each cell point of one representation is tied to a site of the *other*
lattice (see :mod:`~kqlattice.lattice`).  Evaluating the extended C at the
site's coordinates picks up a pure phase,

    C(v' 2pi/b, u' b) = exp(2 pi i s v' M1/M2) C(k_n, q_m)          (rep A)
    C(t 2pi/a,  s a ) = exp(2 pi i u' t M2/M1) C(K_n', Q_m')       (rep B)

and the lattice amplitude stored on the site is ``C(k_n, q_m)``, i.e. the
extended value with that phase divided out.  Its squared modulus is the
probability of jointly finding the momentum and coordinate of the site.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import kernels
from .errors import DomainError
from .lattice import (
    BijectionRow,
    Direction,
    Family,
    LatticeSite,
    bijection_table,
    lattice_shape,
)
from .phasespace import DeviationReport, PhasePlane, Rep, StateVector, kq_basis_matrix, UNITARY_ATOL

SAMPLING_ATOL = 1e-8


@dataclass
class KQFunction:
    """kq amplitudes on a rep's cell, ``values[n, m]``."""

    plane: PhasePlane
    rep: Rep
    values: np.ndarray

    def __post_init__(self):
        self.rep = Rep.parse(self.rep)
        vals = np.asarray(self.values, dtype=np.complex128)
        shape = self.plane.grid_shape(self.rep)
        if vals.shape != shape:
            raise DomainError(f"kq grid must have shape {shape}, got {vals.shape}")
        self.values = vals

    @property
    def period(self) -> int:
        return self.plane.period(self.rep)

    def norm_sq(self) -> float:
        return float(np.sum(np.abs(self.values) ** 2))

    def extended(self, n: int, m: int) -> complex:
        """C at momentum index ``n`` and coordinate ``m`` for any integers.

        Momentum indices count ``2pi/M`` units, so ``n`` and ``n + L`` are the
        same point; shifting ``m`` by ``j`` cell lengths multiplies by
        ``exp(i k_n j d) = exp(2 pi i n j / L)``.
        """
        d, L = self.period, self.plane.copies(self.rep)
        j, m0 = divmod(m, d)
        return complex(np.exp(2j * np.pi * ((n * j) % L) / L) * self.values[n % L, m0])


@dataclass
class LatticeDistribution:
    """Lattice wave function and joint probabilities over one lattice.

    ``amplitudes[coord, mom]``; for the a-lattice that is ``[s, t]``, for the
    b-lattice ``[u', v']``.
    """

    plane: PhasePlane
    family: Family
    amplitudes: np.ndarray
    probabilities: np.ndarray

    @classmethod
    def from_amplitudes(cls, plane: PhasePlane, family: Family, amplitudes) -> "LatticeDistribution":
        amps = np.asarray(amplitudes, dtype=np.complex128)
        shape = lattice_shape(family, plane.factorization)
        if amps.shape != shape:
            raise DomainError(f"lattice grid must have shape {shape}, got {amps.shape}")
        return cls(plane, family, amps, np.abs(amps) ** 2)

    @classmethod
    def from_probabilities(cls, plane: PhasePlane, family: Family, probabilities) -> "LatticeDistribution":
        p = np.asarray(probabilities, dtype=float)
        return cls.from_amplitudes(plane, family, np.sqrt(np.clip(p, 0, None)))

    def total(self) -> float:
        return float(self.probabilities.sum())

    def sites(self) -> list[LatticeSite]:
        nc, nm = self.probabilities.shape
        return [LatticeSite(self.family, i, j) for i in range(nc) for j in range(nm)]

    def probability(self, site: LatticeSite) -> float:
        return float(self.probabilities[site.coord, site.mom])


def _check_plane(state: StateVector):
    f = state.plane.factorization
    if f.M1 * f.M2 != len(state.amplitudes):
        raise DomainError("state length does not match the plane dimension")


def kq_transform(psi: StateVector, rep: Rep) -> KQFunction:
    """Expansion coefficients of ``psi`` in the kq kets of ``rep``."""
    _check_plane(psi)
    rep = Rep.parse(rep)
    d, L = psi.plane.period(rep), psi.plane.copies(rep)
    out = kernels.kq_forward(psi.amplitudes.reshape(1, -1), d, L)
    return KQFunction(psi.plane, rep, out[0])


def kq_transform_batch(plane: PhasePlane, states: np.ndarray, rep: Rep) -> np.ndarray:
    """Vectorized :func:`kq_transform` over rows of ``states``; returns ``(B, L, d)``."""
    rep = Rep.parse(rep)
    states = np.ascontiguousarray(states, dtype=np.complex128)
    if states.ndim != 2 or states.shape[1] != plane.M:
        raise DomainError(f"expected shape (B, {plane.M}), got {states.shape}")
    return kernels.kq_forward(states, plane.period(rep), plane.copies(rep))


def inverse_kq_transform(C: KQFunction) -> StateVector:
    out = kernels.kq_inverse(C.values.reshape(1, *C.values.shape))
    return StateVector(C.plane, out[0])


def site_phase(row: BijectionRow, plane: PhasePlane) -> complex:
    """Phase picked up by the extended C between a cell point and its site."""
    M1, M2 = plane.M1, plane.M2
    if row.cell.rep is Rep.A:
        s, v_p = row.companion.coord, row.site.mom
        return np.exp(2j * np.pi * ((s * v_p * M1) % M2) / M2)
    u_p, t = row.companion.coord, row.site.mom
    return np.exp(2j * np.pi * ((u_p * t * M2) % M1) / M1)


def site_arguments(row: BijectionRow, plane: PhasePlane) -> tuple[int, int]:
    """Site coordinates as ``(momentum index in 2pi/M units, x)`` for ``KQFunction.extended``.

    For rep A this is ``(v' M1, u' M2)`` i.e. ``(v' 2pi/b, u' b)``; for rep B
    ``(t M2, s M1)`` i.e. ``(t 2pi/a, s a)``.
    """
    if row.cell.rep is Rep.A:
        return row.site.mom * plane.M1, row.site.coord * plane.M2
    return row.site.mom * plane.M2, row.site.coord * plane.M1


def lattice_wavefunction(C: KQFunction, table: Optional[list[BijectionRow]] = None) -> LatticeDistribution:
    """Move a kq function onto the sites of the other lattice.

    Rep A functions land on the b-lattice, rep B functions on the a-lattice.
    The bijection guarantees every site is filled exactly once.
    """
    plane = C.plane
    rows = table if table is not None else bijection_table(plane, Direction.from_rep(C.rep))
    family = Direction.from_rep(C.rep).target
    amps = np.zeros(lattice_shape(family, plane.factorization), dtype=np.complex128)
    for row in rows:
        amps[row.site.coord, row.site.mom] = C.values[row.cell.n, row.cell.m]
    return LatticeDistribution.from_amplitudes(plane, family, amps)


def measure(psi: StateVector, rep: Rep) -> LatticeDistribution:
    """Joint momentum/coordinate distribution of ``psi`` on the lattice paired with ``rep``."""
    return lattice_wavefunction(kq_transform(psi, rep))


def mub_overlap_check(plane: PhasePlane) -> DeviationReport:
    """Max over all M^2 pairs of ``| |<kq|KQ>|^2 - 1/M |``.

    The rep-B kets are built directly and then expanded in the rep-A basis
    through the transform kernel, which gives every overlap at once.
    """
    kets_b = kq_basis_matrix(plane, Rep.B).T
    overlaps = kq_transform_batch(plane, kets_b, Rep.A)
    dev = float(np.max(np.abs(np.abs(overlaps) ** 2 - 1.0 / plane.M)))
    return DeviationReport("MUB overlaps", dev, plane.M**2, UNITARY_ATOL)


def sample_measurements(dist: LatticeDistribution, count: int, seed: int) -> list[LatticeSite]:
    """Draw ``count`` sites from ``dist`` with a private generator seeded by ``seed``."""
    p = dist.probabilities.ravel()
    if np.any(p < 0) or abs(p.sum() - 1.0) > SAMPLING_ATOL:
        raise DomainError(f"probabilities sum to {p.sum():.12g}, not 1")
    if count < 0:
        raise DomainError("count must be non-negative")
    rng = np.random.default_rng(seed)
    flat = rng.choice(p.size, size=count, p=p / p.sum())
    _, nm = dist.probabilities.shape
    return [LatticeSite(dist.family, int(i // nm), int(i % nm)) for i in flat]

