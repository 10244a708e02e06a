"""Hot inner loops of the axiom checkers and margin counting.

Two interchangeable backends implement the same functions:

``numba``
    the scalar loops in ``_loops`` compiled with ``numba.njit``;
``numpy``
    vectorized numpy code in ``_numpy``.

The backend is picked once at import time from the ``SETRAT_BACKEND``
environment variable (``numba``, ``numpy`` or ``auto``; default ``auto``,
which means numba when it imports cleanly).  Both backends return the same
first violation, which ``tests/test_kernels.py`` checks.
"""

import importlib
import os

from ._loops import KERNELS

_VALID = ("auto", "numba", "numpy")


def load_backend(name):
    """Return the kernel module for ``name`` (``numba`` or ``numpy``)."""
    if name not in ("numba", "numpy"):
        raise ValueError(f"unknown kernel backend {name!r}")
    return importlib.import_module(f"{__name__}._{name}")


def _select():
    requested = os.environ.get("SETRAT_BACKEND", "auto").strip().lower() or "auto"
    if requested not in _VALID:
        raise ImportError(f"SETRAT_BACKEND must be one of {_VALID}, got {requested!r}")
    if requested == "numpy":
        return "numpy", load_backend("numpy")
    try:
        return "numba", load_backend("numba")
    except ImportError:
        if requested == "numba":
            raise
        return "numpy", load_backend("numpy")


BACKEND, _impl = _select()

for _name in KERNELS:
    globals()[_name] = getattr(_impl, _name)

__all__ = ["BACKEND", "load_backend", *KERNELS]
