"""Backend selection for the hot loops.

The compiled ``_ckernels`` extension is used when it imports; otherwise the
numpy versions in ``_pykernels`` are used. Setting ``GABORTF_PURE_PYTHON=1``
in the environment forces the fallback.
"""
import os

import numpy as np

from . import _pykernels

try:
    if os.environ.get("GABORTF_PURE_PYTHON", "") not in ("", "0"):
        raise ImportError("compiled kernels disabled by GABORTF_PURE_PYTHON")
    from . import _ckernels as _impl
    BACKEND = "cython"
except ImportError:
    _impl = _pykernels
    BACKEND = "numpy"


def available_backends():
    """Map backend name to kernel module, for every backend that imports."""
    out = {"numpy": _pykernels}
    try:
        from . import _ckernels
    except ImportError:
        pass
    else:
        out["cython"] = _ckernels
    return out


def fold_analysis(s, g, a, M, impl=None):
    return (impl or _impl).fold_analysis(s, g, a, M)


def overlap_synthesis(z, p, a, impl=None):
    return (impl or _impl).overlap_synthesis(np.ascontiguousarray(z), p, a)


def chirp_demod(s, impl=None):
    return (impl or _impl).chirp_demod(s)


def lcg_uniform(state, n, impl=None):
    return (impl or _impl).lcg_uniform(state, n)
