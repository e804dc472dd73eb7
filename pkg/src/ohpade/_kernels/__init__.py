"""Numerical kernel selection: compiled extension with NumPy fallback.

The compiled backend (``_core``, built from Cython) is preferred when it
imported successfully; setting the environment variable ``OHPADE_PURE_PYTHON``
to a non-empty value before import forces the pure NumPy fallback.  Both
backends expose the same four functions with identical semantics.
"""

from __future__ import annotations

import os

from . import _fallback

if os.environ.get("OHPADE_PURE_PYTHON"):
    _impl = _fallback
else:
    try:
        from . import _core as _impl  # type: ignore[no-redef]
    except ImportError:
        _impl = _fallback

BACKEND = _impl.BACKEND

recurrence_table = _impl.recurrence_table
power_table = _impl.power_table
cauchy_sum = _impl.cauchy_sum
cauchy_table = _impl.cauchy_table

__all__ = [
    "BACKEND",
    "recurrence_table",
    "power_table",
    "cauchy_sum",
    "cauchy_table",
]
