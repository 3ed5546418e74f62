"""Quantum mechanics on a finite phase plane of M = M1*M2 points.

kq and KQ representations, the cell-point/site bijection between them and the
von Neumann lattices, and the lattice wave function whose squared modulus is
the joint probability of momentum and coordinate on a lattice site.
"""

from .arith import (
    CoprimeFactorization,
    coprime_factorizations,
    extended_gcd,
    mod_inverse,
    solve_k_diophantine,
    solve_q_diophantine,
)
from .errors import (
    BijectivityViolation,
    DomainError,
    InvalidFactorization,
    KQLatticeError,
    NonScalarCommutator,
    NotInvertible,
)
from .kernels import BACKEND
from .lattice import (
    CellPoint,
    Direction,
    Family,
    LatticeSite,
    a_cell_to_b_site,
    b_cell_to_a_site,
    bijection_table,
    site_phase_point,
)
from .measurement import (
    KQFunction,
    LatticeDistribution,
    inverse_kq_transform,
    kq_transform,
    lattice_wavefunction,
    measure,
    mub_overlap_check,
    sample_measurements,
)
from .phasespace import (
    PhasePlane,
    Rep,
    StateVector,
    UnitaryOperator,
    commutator_phase,
    kq_basis_state,
    modulation_operator,
    shift_operator,
    verify_eigen_equations,
    verify_eigenvalue_site_identity,
)

__version__ = "0.1.0"
