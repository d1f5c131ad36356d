"""Backend selection for the F_p polynomial kernels.

The compiled extension is used when it was built; otherwise, or when
``CFREDUCE_PURE_PYTHON`` is set in the environment, the pure-Python module is
used.  ``BACKEND`` names the active implementation.
"""

import os

from . import _kernels_py as pure

if os.environ.get("CFREDUCE_PURE_PYTHON"):
    _impl = pure
    BACKEND = "python"
else:
    try:
        from . import _kernels as _impl
        BACKEND = "cython"
    except ImportError:
        _impl = pure
        BACKEND = "python"

poly_add = _impl.poly_add
poly_sub = _impl.poly_sub
poly_scale = _impl.poly_scale
poly_mul = _impl.poly_mul
poly_divmod = _impl.poly_divmod
surd_run = _impl.surd_run

__all__ = ["BACKEND", "pure", "poly_add", "poly_sub", "poly_scale",
           "poly_mul", "poly_divmod", "surd_run"]
