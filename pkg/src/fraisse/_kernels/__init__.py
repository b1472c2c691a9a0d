"""Hot tree kernels: compiled extension when available, pure Python otherwise.

Set ``FRAISSE_PURE_PYTHON=1`` to force the fallback.
"""

import os

from . import _pykernel as python_backend

compiled_backend = None
if not os.environ.get("FRAISSE_PURE_PYTHON"):
    try:
        from . import _ckernel as compiled_backend
    except ImportError:
        compiled_backend = None

_active = compiled_backend or python_backend
BACKEND = "cython" if compiled_backend is not None else "python"

depth = _active.depth
meet = _active.meet
outlier = _active.outlier
check_extension = _active.check_extension
triples_allowed = _active.triples_allowed


def backends() -> dict:
    """Available implementations keyed by name."""
    found = {"python": python_backend}
    if compiled_backend is not None:
        found["cython"] = compiled_backend
    return found
