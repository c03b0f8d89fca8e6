"""Pick the solver-loop implementation at import time.

Set ``PWCOLOR_BACKEND=python`` to force the pure-Python fallback.
"""
import os

from . import _fallback

try:
    from . import _core as _compiled
except ImportError:  # extension not built
    _compiled = None

if _compiled is not None and os.environ.get("PWCOLOR_BACKEND", "").lower() != "python":
    impl = _compiled
    NAME = "cython"
else:
    impl = _fallback
    NAME = "python"

BACKENDS = {"python": _fallback}
if _compiled is not None:
    BACKENDS["cython"] = _compiled


def get(name=None):
    if name is None:
        return impl
    try:
        return BACKENDS[name]
    except KeyError:
        raise ValueError(f"backend {name!r} not available; have {sorted(BACKENDS)}") from None
