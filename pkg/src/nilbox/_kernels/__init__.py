"""Hot loops, compiled when available.

Set ``NILBOX_PURE_PYTHON=1`` to force the Python versions.
"""

import os

from . import _pykernels

BACKEND = "python"
if os.environ.get("NILBOX_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _ckernels as _impl
        BACKEND = "cython"
    except ImportError:  # no compiler at install time
        _impl = _pykernels
else:
    _impl = _pykernels

poly_mul_terms = _impl.poly_mul_terms
box_points = _impl.box_points
filter_points = _impl.filter_points
greedy_residual = _impl.greedy_residual

__all__ = ["BACKEND", "poly_mul_terms", "box_points", "filter_points",
           "greedy_residual"]
