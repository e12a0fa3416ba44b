"""Kernel lane selection.

The OMHK_KERNELS environment variable picks the implementation:
"numba" requires numba and fails loudly without it, "numpy" forces the
fallback lane, "auto" (default) uses numba when importable.
"""

from __future__ import annotations

import os

from . import numpy_impl

_cache: dict = {}


def lane_name() -> str:
    mode = os.environ.get("OMHK_KERNELS", "auto").strip().lower()
    if mode not in ("auto", "numba", "numpy"):
        raise ValueError(f"OMHK_KERNELS must be auto, numba or numpy, got {mode!r}")
    if mode == "numpy":
        return "numpy"
    if mode == "numba":
        _load_numba()
        return "numba"
    try:
        _load_numba()
        return "numba"
    except ImportError:
        return "numpy"


def _load_numba():
    if "numba" not in _cache:
        from . import numba_impl

        _cache["numba"] = numba_impl
    return _cache["numba"]


def active():
    """The kernel module for the currently selected lane."""
    if lane_name() == "numba":
        return _cache["numba"]
    return numpy_impl


def get(name: str):
    if name == "numpy":
        return numpy_impl
    if name == "numba":
        return _load_numba()
    raise ValueError(f"unknown kernel lane {name!r}")
