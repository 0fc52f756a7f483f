"""Kernel selection.

The compiled module is used when it imports; setting ``QNL_PURE_PYTHON=1``
forces the Python kernels.  ``BACKEND`` names the active choice.
"""

import os

from . import _kernels_py as _py

_native = None
if os.environ.get("QNL_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _kernels as _native
    except ImportError:  # extension not built
        _native = None

BACKEND = "cython" if _native is not None else "python"
_k = _native if _native is not None else _py
NATIVE_PRIME_LIMIT = 1 << 32

bareiss_rank = _k.bareiss_rank
bareiss_det = _k.bareiss_det
bareiss_rref = _k.bareiss_rref


def rank_mod_p(rows, ncols, p):
    if _native is not None and p < NATIVE_PRIME_LIMIT:
        return _native.rank_mod_p(rows, ncols, p)
    return _py.rank_mod_p(rows, ncols, p)


def rref_mod_p(rows, ncols, p):
    if _native is not None and p < NATIVE_PRIME_LIMIT:
        return _native.rref_mod_p(rows, ncols, p)
    return _py.rref_mod_p(rows, ncols, p)
