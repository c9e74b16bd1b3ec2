"""Kernel dispatch: the compiled extension when importable, else pure Python.

Set ``SHADOWJONES_PURE=1`` to force the fallback.
"""

import os

from . import _pykernels

BACKEND = "python"
_c = None
if not os.environ.get("SHADOWJONES_PURE"):
    try:
        from . import _ckernels as _c

        BACKEND = "cython"
    except ImportError:  # extension not built
        _c = None

log_qfact_table = (_c or _pykernels).log_qfact_table
log_binomial_power_sum = (_c or _pykernels).log_binomial_power_sum


def convolve(a, b):
    """Integer convolution of two coefficient lists (exact)."""
    if _c is not None:
        try:
            return _c.convolve(a, b)
        except OverflowError:
            pass
    return _pykernels.convolve(a, b)
