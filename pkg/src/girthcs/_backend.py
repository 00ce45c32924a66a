"""Kernel backend selection.

The compiled extension is used when importable; setting the environment
variable ``GIRTHCS_PURE_PYTHON=1`` forces the numpy fallback.
"""
import os

from girthcs import _pykernels

if os.environ.get("GIRTHCS_PURE_PYTHON", "") not in ("", "0"):
    kernels = _pykernels
    BACKEND = "python"
else:
    try:
        from girthcs import _kernels as kernels
        BACKEND = "cython"
    except ImportError:
        kernels = _pykernels
        BACKEND = "python"

__all__ = ["kernels", "BACKEND"]
