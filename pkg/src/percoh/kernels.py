"""Kernel backend selection: compiled extension when available, else pure Python.

Set PERCOH_KERNEL=py to force the pure backend (used by the benchmark and
the cross-backend agreement tests).
"""

from __future__ import annotations

import os

from . import _kernels_py

if os.environ.get("PERCOH_KERNEL", "").lower() in ("py", "pure", "python"):
    _impl = _kernels_py
else:
    try:
        from . import _kernels_c as _impl  # type: ignore[no-redef]
    except ImportError:
        _impl = _kernels_py

BACKEND: str = _impl.BACKEND
HLT: int = _impl.HLT
FELSCH: int = _impl.FELSCH

perm_closure_table = _impl.perm_closure_table
subgroup_closure = _impl.subgroup_closure
conjugacy_partition = _impl.conjugacy_partition
coset_enumeration = _impl.coset_enumeration


def available_backends():
    """All importable kernel backends, compiled first."""
    out = []
    try:
        from . import _kernels_c

        out.append(_kernels_c)
    except ImportError:
        pass
    out.append(_kernels_py)
    return out
