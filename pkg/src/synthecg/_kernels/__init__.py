"""Kernel dispatch: compiled extension when available, numpy fallback otherwise.

Set ``SYNTHECG_PURE=1`` to force the fallback lane (used by the parity tests
and the benchmark).  ``KERNEL_LANE`` records which lane is active.
"""

import os

from . import py as _py

_force_pure = os.environ.get("SYNTHECG_PURE", "") not in ("", "0")

if not _force_pure:
    try:
        from . import _ext as _impl

        KERNEL_LANE = "ext"
    except ImportError:
        _impl = _py
        KERNEL_LANE = "py"
else:
    _impl = _py
    KERNEL_LANE = "py"

wave_train = _impl.wave_train
extract_peaks_core = _impl.extract_peaks_core
cumulative_quadratic = _impl.cumulative_quadratic

__all__ = ["KERNEL_LANE", "wave_train", "extract_peaks_core", "cumulative_quadratic"]
