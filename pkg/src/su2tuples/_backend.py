"""Kernel backend selection.

The hot elimination kernels exist twice: numba-jitted loops and pure-numpy
vectorized versions.  ``SU2TUPLES_BACKEND=numpy`` (or an unavailable numba)
selects the numpy path; the default is numba.  The choice affects speed only:
both backends implement the same deterministic algorithms, and anything they
cannot do in int64 is redone exactly in ``_bigint``, so results are identical
either way.
"""

import os

_ENV_VAR = "SU2TUPLES_BACKEND"
_kernels = None
_name = None


def _load():
    global _kernels, _name
    requested = os.environ.get(_ENV_VAR, "numba").strip().lower()
    if requested not in ("numba", "numpy"):
        raise ValueError(
            f"{_ENV_VAR} must be 'numba' or 'numpy', got {requested!r}"
        )
    if requested == "numba":
        try:
            from . import _kernels_numba as mod
        except ImportError:
            from . import _kernels_numpy as mod
            _kernels, _name = mod, "numpy"
            return
        _kernels, _name = mod, "numba"
    else:
        from . import _kernels_numpy as mod
        _kernels, _name = mod, "numpy"


def kernels():
    """Active kernel module (imported lazily on first use)."""
    if _kernels is None:
        _load()
    return _kernels


def backend_name():
    """Name of the active backend: 'numba' or 'numpy'."""
    if _kernels is None:
        _load()
    return _name


def warm_up():
    """Precompile the active backend's kernels (no-op for numpy)."""
    kernels().warm_up()
