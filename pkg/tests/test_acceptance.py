"""Exit criteria.  A pass/fail line per criterion is printed in the pytest summary."""

import math
import time

import numpy as np
import pytest

from kqlattice.figures import diagram_points, render_ascii, render_svg
from kqlattice.lattice import Direction, bijection_table
from kqlattice.measurement import (
    kq_transform,
    kq_transform_batch,
    lattice_wavefunction,
    measure,
    mub_overlap_check,
    sample_measurements,
    site_arguments,
    site_phase,
)
from kqlattice import kernels
from kqlattice.phasespace import (
    PhasePlane,
    Rep,
    StateVector,
    commutator_phase,
    eigenvalues,
    kq_basis_matrix,
    kq_basis_state,
    rep_operators,
    verify_eigen_equations,
    verify_eigenvalue_site_identity,
)
from kqlattice.verify import planes_up_to, random_states

PLANES_60 = planes_up_to(60)
P15 = PhasePlane.from_factors(3, 5)


@pytest.mark.criterion(1, "MUB flatness |<kq|KQ>|^2 = 1/M, all planes M <= 60, < 10 s")
def test_mub_flatness():
    kets_a, kets_b = kq_basis_matrix(P15, Rep.A), kq_basis_matrix(P15, Rep.B)
    overlaps = np.abs(kets_a.conj().T @ kets_b) ** 2
    assert overlaps.size == 225
    assert np.max(np.abs(overlaps - 1 / 15)) < 1e-10

    ms = {p.M for p in PLANES_60}
    assert {6, 10, 12, 15, 20, 21} <= ms
    start = time.perf_counter()
    worst = max(mub_overlap_check(p).max_deviation for p in PLANES_60)
    elapsed = time.perf_counter() - start
    assert worst < 1e-10
    assert elapsed < 10.0


@pytest.mark.criterion(2, "commutator phases exp(2 pi i M1/M2); commuting pairs give 1")
def test_commutator_phases():
    for plane in PLANES_60:
        Ta, taua = rep_operators(plane, Rep.A)
        Tb, taub = rep_operators(plane, Rep.B)
        assert abs(commutator_phase(Ta, taub) - np.exp(2j * np.pi * plane.M1 / plane.M2)) < 1e-10
        assert abs(commutator_phase(Tb, taua) - np.exp(2j * np.pi * plane.M2 / plane.M1)) < 1e-10
        assert abs(commutator_phase(Ta, taua) - 1) < 1e-10
        assert abs(commutator_phase(Tb, taub) - 1) < 1e-10


@pytest.mark.criterion(3, "cell/site bijections for all M <= 200; M = 15 rows match brute force")
def test_bijections():
    planes = planes_up_to(200)
    assert len(planes) > 100
    for plane in planes:
        for direction in Direction:
            rows = bijection_table(plane, direction)
            sites = {(r.site.coord, r.site.mom) for r in rows}
            nc, nm = (plane.M2, plane.M1) if direction is Direction.B_TO_A else (plane.M1, plane.M2)
            assert len(rows) == plane.M
            assert sites == {(i, j) for i in range(nc) for j in range(nm)}

    # independent search of n' + 3 v' = 5 t and m' + 5 u' = 3 s
    (t, v), = [(t, v) for t in range(3) for v in range(5) if 1 + 3 * v == 5 * t]
    (s, u), = [(s, u) for s in range(5) for u in range(3) if 1 + 5 * u == 3 * s]
    assert (t, v, s, u) == (2, 3, 2, 1)
    row = next(r for r in bijection_table(P15, Direction.B_TO_A) if (r.cell.n, r.cell.m) == (1, 1))
    assert (row.site.mom, row.companion.mom, row.site.coord, row.companion.coord) == (t, v, s, u)


@pytest.mark.criterion(4, "eigen-equations and eigenvalue/site identities < 1e-10; negative control > 0.1")
def test_eigen_identities():
    worst = 0.0
    for plane in PLANES_60:
        for rep in Rep:
            worst = max(worst, verify_eigen_equations(plane, rep).max_deviation)
        worst = max(worst, verify_eigenvalue_site_identity(plane).max_deviation)
    assert worst < 1e-10

    def perturbed(n, m):
        lam_T, lam_tau = eigenvalues(P15, Rep.A, n, m)
        return lam_T, lam_tau * np.exp(2j * np.pi / 3)

    assert verify_eigen_equations(P15, Rep.A, perturbed).max_deviation > 0.1


@pytest.mark.criterion(5, "Parseval and round trip < 1e-10, 100 seeded states per plane M <= 60")
def test_unitarity_round_trip():
    for plane in PLANES_60:
        states = random_states(plane.M, 100, seed=plane.M * 1000 + plane.M1)
        for rep in Rep:
            C = kq_transform_batch(plane, states, rep)
            assert np.max(np.abs(np.sum(np.abs(C) ** 2, axis=(1, 2)) - 1)) < 1e-10
            assert np.max(np.abs(kernels.kq_inverse(C) - states)) < 1e-10
            assert np.max(np.abs(kq_transform_batch(plane, kernels.kq_inverse(C), rep) - C)) < 1e-10


@pytest.mark.criterion(6, "lattice phase law at all 15 cell points, 100 states on M = 15, < 1e-12")
def test_phase_law():
    states = random_states(15, 100, seed=6)
    worst = 0.0
    for rep in Rep:
        rows = bijection_table(P15, Direction.from_rep(rep))
        assert len(rows) == 15
        for amps in states:
            C = kq_transform(StateVector(P15, amps), rep)
            dist = lattice_wavefunction(C, rows)
            for row in rows:
                extended = C.extended(*site_arguments(row, P15))
                amp = dist.amplitudes[row.site.coord, row.site.mom]
                worst = max(worst, abs(extended - site_phase(row, P15) * amp))
    assert worst < 1e-12


@pytest.mark.criterion(7, "lattice distributions normalize; delta state gives 5 sites at 1/5")
def test_lattice_normalization():
    for plane in PLANES_60:
        for amps in random_states(plane.M, 10, seed=plane.M + 7):
            psi = StateVector(plane, amps)
            for rep in Rep:
                assert abs(measure(psi, rep).total() - 1) < 1e-10

    # search m + 3 s = 5 u' at m = 0 and n + 5 t = 3 v' for n = 0..4
    (u0,) = [u for s in range(5) for u in range(3) if 0 + 3 * s == 5 * u]
    vs = sorted(v for n in range(5) for t in range(3) for v in range(5) if n + 5 * t == 3 * v)
    oracle = np.zeros((3, 5))
    for v in vs:
        oracle[u0, v] = 1 / 5
    dist = measure(StateVector.delta(P15, 0), Rep.A)
    assert np.count_nonzero(dist.probabilities > 1e-14) == 5
    assert np.max(np.abs(dist.probabilities - oracle)) < 1e-10


@pytest.mark.criterion(8, "lattice probabilities equal |<basis|psi>|^2 from direct kets, M in {6, 15, 35}")
def test_dual_path():
    for M1, M2 in ((2, 3), (3, 5), (5, 7)):
        plane = PhasePlane.from_factors(M1, M2)
        for amps in random_states(plane.M, 20, seed=M1 * M2):
            psi = StateVector(plane, amps)
            for rep in Rep:
                dist = measure(psi, rep)
                for row in bijection_table(plane, Direction.from_rep(rep)):
                    ket = kq_basis_state(plane, rep, row.cell.n, row.cell.m)
                    direct = abs(np.vdot(ket.amplitudes, psi.amplitudes)) ** 2
                    assert abs(dist.probability(row.site) - direct) < 1e-10


@pytest.mark.criterion(9, "15000 seeded draws from uniform M = 15 within 5 sigma; seeds reproducible")
def test_sampling():
    # a rep-B ket is flat in rep A, so its b-lattice distribution is uniform
    dist = measure(kq_basis_state(P15, Rep.B, 1, 2), Rep.A)
    assert np.max(np.abs(dist.probabilities - 1 / 15)) < 1e-12
    draws = sample_measurements(dist, 15000, seed=2024)
    assert draws == sample_measurements(dist, 15000, seed=2024)
    counts = np.zeros(dist.probabilities.shape)
    for site in draws:
        counts[site.coord, site.mom] += 1
    sigma = math.sqrt(15000 * (1 / 15) * (1 - 1 / 15))
    assert np.all(np.abs(counts - 1000) < 5 * sigma)


@pytest.mark.criterion(10, "figures: 5x3 sites and 15 cell points (rep a), 3x5 (rep b), byte-stable")
def test_figures():
    for rep, columns, rows in ((Rep.A, 5, 3), (Rep.B, 3, 5)):
        sites, circles = diagram_points(P15, rep)
        assert len(sites) == 15 and len(circles) == 15
        assert len({x for x, _ in sites}) == columns
        assert len({p for _, p in sites}) == rows
        d = P15.period(rep)
        assert all(x < d and p < 15 // d for x, p in circles)

        svg = render_svg(P15, rep)
        assert svg.encode() == render_svg(P15, rep).encode()
        assert svg.count('class="site"') == 15
        assert svg.count('class="cell-point"') == 15
        art = render_ascii(P15, rep)
        assert art == render_ascii(P15, rep)
        grid = [line.split("|", 1)[1] for line in art.splitlines() if "|" in line]
        assert sum(r.count("x") for r in grid) == 15
        assert sum(r.count("o") for r in grid) == 15
