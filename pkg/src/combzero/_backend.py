"""Kernel selection: compiled extension when available, numpy fallback otherwise.

Set ``COMBZERO_PURE_PYTHON=1`` to force the fallback.
"""
import os

from . import _pykernels

pykernels = _pykernels

if os.environ.get("COMBZERO_PURE_PYTHON", "") not in ("", "0"):
    kernels = _pykernels
else:
    try:
        from . import _ckernels as kernels
    except ImportError:  # extension not built
        kernels = _pykernels

BACKEND = kernels.BACKEND


def available_backends():
    out = [_pykernels]
    try:
        from . import _ckernels

        out.append(_ckernels)
    except ImportError:
        pass
    return out
