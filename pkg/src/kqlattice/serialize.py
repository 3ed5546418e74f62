"""JSON and CSV formats for states, kq functions, tables and distributions.

Complex numbers are ``[re, im]`` pairs; grids are flattened row-major with
their shape stored next to them.
"""

from __future__ import annotations

import csv
import io
import json

import numpy as np

from .errors import DomainError
from .lattice import BijectionRow, LatticeSite
from .measurement import KQFunction, LatticeDistribution
from .phasespace import PhasePlane, StateVector

TABLE_HEADER = ["n", "m", "site_coord", "site_mom", "comp_coord", "comp_mom"]


def _pairs(values) -> list[list[float]]:
    return [[float(z.real), float(z.imag)] for z in np.ravel(values)]


def _complex(pairs) -> np.ndarray:
    try:
        arr = np.asarray(pairs, dtype=float)
    except (TypeError, ValueError) as exc:
        raise DomainError(f"amplitudes must be [re, im] pairs: {exc}") from None
    if arr.ndim != 2 or arr.shape[1] != 2:
        raise DomainError("amplitudes must be a list of [re, im] pairs")
    return arr[:, 0] + 1j * arr[:, 1]


def state_to_json(psi: StateVector) -> dict:
    return {"M": psi.plane.M, "amplitudes": _pairs(psi.amplitudes)}


def state_from_json(doc, plane: PhasePlane) -> StateVector:
    """Accepts ``{"M": ..., "amplitudes": [[re, im], ...]}`` or a bare pair list."""
    if isinstance(doc, dict):
        if "amplitudes" not in doc:
            raise DomainError("state file has no 'amplitudes' field")
        if "M" in doc and doc["M"] != plane.M:
            raise DomainError(f"state file declares M = {doc['M']}, plane has M = {plane.M}")
        doc = doc["amplitudes"]
    amps = _complex(doc)
    if len(amps) != plane.M:
        raise DomainError(f"state has {len(amps)} amplitudes, expected {plane.M}")
    return StateVector(plane, amps)


def read_state_header(doc) -> int:
    """Dimension declared by a state document (header or list length)."""
    if isinstance(doc, dict):
        if "M" in doc:
            return int(doc["M"])
        doc = doc.get("amplitudes", [])
    if not isinstance(doc, list):
        raise DomainError("state file must be a JSON object or array")
    return len(doc)


def _plane_header(plane: PhasePlane) -> dict:
    return {"M": plane.M, "M1": plane.M1, "M2": plane.M2}


def kqfunction_to_json(C: KQFunction) -> dict:
    n_count, m_count = C.values.shape
    return {
        "type": "KQFunction",
        **_plane_header(C.plane),
        "rep": C.rep.value,
        "shape": [n_count, m_count],
        "axes": ["n", "m"],
        "values": _pairs(C.values),
    }


def kqfunction_from_json(doc: dict) -> KQFunction:
    plane = PhasePlane.from_factors(doc["M1"], doc["M2"])
    vals = _complex(doc["values"]).reshape(doc["shape"])
    return KQFunction(plane, doc["rep"], vals)


def distribution_to_json(dist: LatticeDistribution) -> dict:
    nc, nm = dist.amplitudes.shape
    return {
        "type": "LatticeDistribution",
        **_plane_header(dist.plane),
        "family": dist.family.value,
        "shape": [nc, nm],
        "axes": ["coord", "mom"],
        "amplitudes": _pairs(dist.amplitudes),
        "probabilities": [float(p) for p in dist.probabilities.ravel()],
    }


def distribution_from_json(doc: dict) -> LatticeDistribution:
    from .lattice import Family

    plane = PhasePlane.from_factors(doc["M1"], doc["M2"])
    amps = _complex(doc["amplitudes"]).reshape(doc["shape"])
    return LatticeDistribution.from_amplitudes(plane, Family(doc["family"]), amps)


def table_to_csv(rows: list[BijectionRow]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(TABLE_HEADER)
    for r in rows:
        w.writerow([r.cell.n, r.cell.m, r.site.coord, r.site.mom, r.companion.coord, r.companion.mom])
    return buf.getvalue()


def distribution_to_csv(dist: LatticeDistribution) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["coord", "mom", "amp_re", "amp_im", "probability"])
    nc, nm = dist.amplitudes.shape
    for i in range(nc):
        for j in range(nm):
            z = dist.amplitudes[i, j]
            w.writerow([i, j, repr(float(z.real)), repr(float(z.imag)), repr(float(dist.probabilities[i, j]))])
    return buf.getvalue()


def samples_to_csv(samples: list[LatticeSite]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["coord", "mom"])
    for s in samples:
        w.writerow([s.coord, s.mom])
    return buf.getvalue()


def dumps(doc) -> str:
    return json.dumps(doc, indent=1) + "\n"
