"""Select the integrator kernel at import time.

The compiled kernel is used when it was built; set ``CPTLAB_PURE_PYTHON=1``
to force the NumPy fallback.
"""

import os

from . import _dopri as _py_kernel

try:
    from . import _dopri_c as _c_kernel
except ImportError:  # extension not built
    _c_kernel = None

KERNELS = {"python": _py_kernel.integrate}
if _c_kernel is not None:
    KERNELS["cython"] = _c_kernel.integrate

if _c_kernel is not None and not os.environ.get("CPTLAB_PURE_PYTHON"):
    BACKEND = "cython"
else:
    BACKEND = "python"


def get_kernel(name=None):
    name = name or BACKEND
    try:
        return KERNELS[name]
    except KeyError:
        raise ValueError(f"integrator backend {name!r} unavailable; have {sorted(KERNELS)}") from None
