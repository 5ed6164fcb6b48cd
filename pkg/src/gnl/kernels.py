"""Backend selection for the dense polynomial kernels.

The GMP/Cython core is used when it was built; otherwise the pure-Python
module is loaded. Setting ``GNL_PURE_PYTHON=1`` forces the fallback.
"""

import importlib
import os

_BACKENDS = {"gmp": "gnl._dense_ext", "python": "gnl._dense_py"}


def load(name):
    return importlib.import_module(_BACKENDS[name])


def available():
    names = []
    for name in _BACKENDS:
        try:
            load(name)
        except ImportError:
            continue
        names.append(name)
    return names


if os.environ.get("GNL_PURE_PYTHON", "") not in ("", "0"):
    BACKEND = "python"
else:
    BACKEND = "gmp" if "gmp" in available() else "python"

_impl = load(BACKEND)

mul_one_minus_power = _impl.mul_one_minus_power
mul_dense = _impl.mul_dense
l1_norm = _impl.l1_norm
trim = _impl.trim
