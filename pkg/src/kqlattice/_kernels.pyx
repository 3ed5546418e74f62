# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled kq-transform kernels.

Both functions work on batches: ``psi`` has shape (B, M) and the kq grid has
shape (B, L, d) indexed [b, n, m], with M = L * d and coordinate index
s = m + l * d.  The batch is regrouped as an (L, B * d) panel so the inner
loop runs over one long contiguous row.  Complex products are spelled out in
real arithmetic so the compiler does not route them through the C99
inf/nan-checking helpers.
"""

import numpy as np
from libc.math cimport sqrt


cdef void _dft_rows(const double[:, ::1] src, double[:, ::1] dst,
                    const double[::1] wr, const double[::1] wi,
                    Py_ssize_t L, double scale) noexcept nogil:
    # src/dst: (L, 2 * W) interleaved re/im rows;
    # dst[n] = scale * sum_l w[(n * l) % L] * src[l]
    cdef Py_ssize_t n, l, j, idx, W2 = src.shape[1]
    cdef double cr, ci, xr, xi
    for n in range(L):
        for j in range(W2):
            dst[n, j] = 0.0
        idx = 0
        for l in range(L):
            cr = wr[idx] * scale
            ci = wi[idx] * scale
            for j in range(0, W2, 2):
                xr = src[l, j]
                xi = src[l, j + 1]
                dst[n, j] += cr * xr - ci * xi
                dst[n, j + 1] += cr * xi + ci * xr
            idx += n
            if idx >= L:
                idx -= L


def _run(grid, int sign):
    # grid: complex (B, L, d); returns the transform along axis 1, same shape
    cdef Py_ssize_t B = grid.shape[0], L = grid.shape[1], d = grid.shape[2]
    k = np.arange(L)
    cdef const double[::1] wr = np.cos(2 * np.pi * k / L)
    cdef const double[::1] wi = sign * np.sin(2 * np.pi * k / L)
    panel = np.ascontiguousarray(np.transpose(grid, (1, 0, 2)), dtype=np.complex128).reshape(L, B * d)
    out = np.empty((L, B * d), dtype=np.complex128)
    cdef const double[:, ::1] src = panel.view(np.float64)
    cdef double[:, ::1] dst = out.view(np.float64)
    cdef double scale = 1.0 / sqrt(<double>L)
    with nogil:
        _dft_rows(src, dst, wr, wi, L, scale)
    return out.reshape(L, B, d).transpose(1, 0, 2)


def kq_forward(psi, Py_ssize_t d, Py_ssize_t L):
    """C[b, n, m] = L**-0.5 * sum_l exp(-2 pi i n l / L) psi[b, m + l d]"""
    psi = np.asarray(psi)
    if psi.ndim != 2 or psi.shape[1] != d * L:
        raise ValueError(f"state shape {psi.shape} does not match {d} * {L}")
    return np.ascontiguousarray(_run(psi.reshape(psi.shape[0], L, d), -1))


def kq_inverse(C):
    """psi[b, m + l d] = L**-0.5 * sum_n exp(+2 pi i n l / L) C[b, n, m]"""
    C = np.asarray(C)
    B, L, d = C.shape
    return np.ascontiguousarray(_run(C, 1)).reshape(B, L * d)
