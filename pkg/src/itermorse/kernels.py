"""Backend selection for the Morse kernels.

The compiled extension is used when it imports; otherwise, or when the
environment variable ``ITERMORSE_PURE_PYTHON`` is set to a non-empty
value, the pure-Python module is used.  Both expose the same functions.
"""

from __future__ import annotations

import os
from types import ModuleType

import numpy as np

from . import _pykernels

try:
    from . import _ckernels
except ImportError:  # extension not built
    _ckernels = None


def available_backends() -> list[str]:
    return ["python"] + (["cython"] if _ckernels is not None else [])


def get_backend(name: str) -> ModuleType:
    if name == "python":
        return _pykernels
    if name == "cython":
        if _ckernels is None:
            raise ImportError("the compiled kernels are not built")
        return _ckernels
    raise ValueError(f"unknown backend {name!r}")


if _ckernels is not None and not os.environ.get("ITERMORSE_PURE_PYTHON"):
    BACKEND = "cython"
else:
    BACKEND = "python"

_impl = get_backend(BACKEND)


def set_backend(name: str) -> None:
    """Switch the process-wide backend."""
    global BACKEND, _impl
    _impl = get_backend(name)
    BACKEND = name


def _i64(a) -> np.ndarray:
    return np.ascontiguousarray(a, dtype=np.int64)


def greedy_matching(dims, filt, bd_ptr, bd_idx, cb_ptr, cb_idx, same_level: bool) -> np.ndarray:
    return _impl.greedy_matching(_i64(dims), _i64(filt), _i64(bd_ptr), _i64(bd_idx),
                                 _i64(cb_ptr), _i64(cb_idx), bool(same_level))


def morse_graph(dims, bd_ptr, bd_idx, mate) -> tuple[np.ndarray, np.ndarray]:
    return _impl.morse_graph(_i64(dims), _i64(bd_ptr), _i64(bd_idx), _i64(mate))


def topological_order(out_ptr, out_idx) -> np.ndarray:
    return _impl.topological_order(_i64(out_ptr), _i64(out_idx))


def morse_sweeps(out_ptr, out_idx, dims, rank, critical, sources) -> tuple[np.ndarray, np.ndarray]:
    return _impl.morse_sweeps(_i64(out_ptr), _i64(out_idx), _i64(dims), _i64(rank),
                              np.ascontiguousarray(critical, dtype=np.uint8), _i64(sources))
