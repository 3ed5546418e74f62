"""Full invariant suite for one phase plane, as run by ``kqlattice verify``."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .arith import coprime_factorizations
from .errors import BijectivityViolation, NonScalarCommutator
from .lattice import Direction, bijection_table
from .measurement import (
    kq_transform_batch,
    lattice_wavefunction,
    KQFunction,
    mub_overlap_check,
    site_arguments,
    site_phase,
)
from . import kernels
from .phasespace import (
    PHASE_ATOL,
    UNITARY_ATOL,
    PhasePlane,
    Rep,
    commutator_phase,
    kq_basis_matrix,
    modulation_operator,
    rep_operators,
    shift_operator,
    verify_eigen_equations,
    verify_eigenvalue_site_identity,
)


@dataclass(frozen=True)
class CheckResult:
    name: str
    max_deviation: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return bool(self.max_deviation < self.tolerance)


def _commutator_dev(U, V, expected: complex) -> float:
    try:
        return abs(commutator_phase(U, V) - expected)
    except NonScalarCommutator:
        return float("inf")


def random_states(M: int, count: int, seed: int) -> np.ndarray:
    rng = np.random.default_rng(seed)
    z = rng.standard_normal((count, M)) + 1j * rng.standard_normal((count, M))
    return z / np.linalg.norm(z, axis=1, keepdims=True)


def check_plane(plane: PhasePlane, n_states: int = 100, seed: int = 0) -> list[CheckResult]:
    M, M1, M2 = plane.M, plane.M1, plane.M2
    results = []

    Ta, taua = rep_operators(plane, Rep.A)
    Tb, taub = rep_operators(plane, Rep.B)
    ops = [Ta, taua, Tb, taub, shift_operator(plane, 1), modulation_operator(plane, 1)]
    results.append(CheckResult("unitarity", max(op.unitarity_deviation() for op in ops), UNITARY_ATOL))

    T1, tau1 = ops[4].matrix, ops[5].matrix
    law = 0.0
    for d in {1, M1, M2}:
        law = max(law, float(np.max(np.abs(T1 @ shift_operator(plane, d).matrix - shift_operator(plane, (d + 1) % M).matrix))))
        law = max(law, float(np.max(np.abs(tau1 @ modulation_operator(plane, d).matrix - modulation_operator(plane, (d + 1) % M).matrix))))
    results.append(CheckResult("cyclic group laws", law, PHASE_ATOL))

    results.append(
        CheckResult(
            "commuting pairs",
            max(_commutator_dev(Ta, taua, 1.0), _commutator_dev(Tb, taub, 1.0)),
            UNITARY_ATOL,
        )
    )
    results.append(
        CheckResult(
            "conjugacy commutator phases",
            max(
                _commutator_dev(Ta, taub, np.exp(2j * np.pi * M1 / M2)),
                _commutator_dev(Tb, taua, np.exp(2j * np.pi * M2 / M1)),
            ),
            UNITARY_ATOL,
        )
    )

    gram = 0.0
    for rep in Rep:
        B = kq_basis_matrix(plane, rep)
        gram = max(gram, float(np.max(np.abs(B.conj().T @ B - np.eye(M)))))
    results.append(CheckResult("basis orthonormality", gram, UNITARY_ATOL))

    mub = mub_overlap_check(plane)
    results.append(CheckResult("MUB overlaps = 1/M", mub.max_deviation, mub.tolerance))

    eig = max(verify_eigen_equations(plane, rep).max_deviation for rep in Rep)
    results.append(CheckResult("eigen-equations", eig, UNITARY_ATOL))
    ident = verify_eigenvalue_site_identity(plane)
    results.append(CheckResult("eigenvalue/site identities", ident.max_deviation, ident.tolerance))

    tables = {}
    bij = 0.0
    for direction in Direction:
        try:
            tables[direction] = bijection_table(plane, direction)
        except BijectivityViolation:
            bij = 1.0
    results.append(CheckResult("cell/site bijections", bij, 0.5))

    states = random_states(M, n_states, seed)
    parseval = roundtrip = phase_law = norm = 0.0
    for rep in Rep:
        C = kq_transform_batch(plane, states, rep)
        parseval = max(parseval, float(np.max(np.abs(np.sum(np.abs(C) ** 2, axis=(1, 2)) - 1.0))))
        back = kernels.kq_inverse(C)
        roundtrip = max(roundtrip, float(np.max(np.abs(back - states))))
        table = tables.get(Direction.from_rep(rep))
        if table is None:
            continue
        for k in range(n_states):
            f = KQFunction(plane, rep, C[k])
            dist = lattice_wavefunction(f, table)
            norm = max(norm, abs(dist.total() - 1.0))
            for row in table:
                ext = f.extended(*site_arguments(row, plane))
                amp = dist.amplitudes[row.site.coord, row.site.mom]
                phase_law = max(phase_law, abs(ext - site_phase(row, plane) * amp))
    results.append(CheckResult("Parseval", parseval, UNITARY_ATOL))
    results.append(CheckResult("transform round trip", roundtrip, UNITARY_ATOL))
    results.append(CheckResult("lattice phase law", phase_law, PHASE_ATOL))
    results.append(CheckResult("lattice normalization", norm, UNITARY_ATOL))
    return results


def planes_up_to(N: int) -> list[PhasePlane]:
    """Every plane with a nontrivial coprime split, ``M <= N``."""
    return [PhasePlane(f) for M in range(2, N + 1) for f in coprime_factorizations(M)]
