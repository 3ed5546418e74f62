"""Pure numpy fallback for the kq-transform kernels (same contract as _kernels.pyx)."""

import numpy as np


def _dft_matrix(L, sign):
    k = np.arange(L)
    # reduce n*l mod L first so every phase is an exact root of unity
    return np.exp(sign * 2j * np.pi * (np.outer(k, k) % L) / L) / np.sqrt(L)


def kq_forward(psi, d, L):
    psi = np.ascontiguousarray(psi, dtype=np.complex128)
    B, M = psi.shape
    if M != d * L:
        raise ValueError(f"state length {M} != {d} * {L}")
    return _dft_matrix(L, -1) @ psi.reshape(B, L, d)


def kq_inverse(C):
    C = np.ascontiguousarray(C, dtype=np.complex128)
    B, L, d = C.shape
    return (_dft_matrix(L, 1) @ C).reshape(B, L * d)
