"""Backend selection for the hot kq-transform loops.

The compiled Cython module is used when it was built; otherwise, or when the
environment variable ``KQLATTICE_PURE_PYTHON`` is set to a non-empty value,
the numpy implementation is used.  Both expose ``kq_forward(psi, d, L)`` and
``kq_inverse(C)`` with identical semantics.
"""

import os

from . import _kernels_py

try:
    from . import _kernels as _compiled
except ImportError:  # extension not built
    _compiled = None

if _compiled is not None and not os.environ.get("KQLATTICE_PURE_PYTHON"):
    _impl = _compiled
    BACKEND = "compiled"
else:
    _impl = _kernels_py
    BACKEND = "python"

kq_forward = _impl.kq_forward
kq_inverse = _impl.kq_inverse


def available_backends():
    """Map of backend name to kernel module, for tests and benchmarks."""
    out = {"python": _kernels_py}
    if _compiled is not None:
        out["compiled"] = _compiled
    return out
