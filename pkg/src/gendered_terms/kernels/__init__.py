"""Hot numeric kernels for the association stage.

Two interchangeable backends are provided: ``_numba`` (compiled loops) and
``_numpy`` (vectorised array code). The numba backend is used when numba
imports cleanly, unless the environment variable
``GENDERED_TERMS_DISABLE_NUMBA`` is set to a truthy value.
"""

import os

_DISABLE = os.environ.get("GENDERED_TERMS_DISABLE_NUMBA", "").strip().lower()

if _DISABLE in ("", "0", "false", "no"):
    try:
        from . import _numba as _impl
    except ImportError:  # pragma: no cover - numba missing
        from . import _numpy as _impl
else:
    from . import _numpy as _impl

BACKEND = _impl.NAME

chi2_many = _impl.chi2_many
max_chi2_many = _impl.max_chi2_many
chi2_sf_many = _impl.chi2_sf_many
bh_count = _impl.bh_count

__all__ = ["BACKEND", "chi2_many", "max_chi2_many", "chi2_sf_many", "bh_count"]
