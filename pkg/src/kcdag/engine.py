"""Backend selection: compiled engine when available, pure Python otherwise.

Both backends are built from the same source file (src/kcdag/_engine.py), so
they are behaviorally identical; the compiled one is just faster.  Override
with KCDAG_BACKEND=pure|accel|auto.
"""

import os

from .errors import KcdagError

_choice = os.environ.get("KCDAG_BACKEND", "auto").strip().lower() or "auto"

if _choice not in ("auto", "pure", "accel"):
    raise KcdagError(f"KCDAG_BACKEND must be auto, pure or accel, not {_choice!r}")

if _choice == "pure":
    from . import _engine as _backend
    BACKEND = "pure"
elif _choice == "accel":
    from . import _engine_accel as _backend  # type: ignore[attr-defined]
    BACKEND = "accel"
else:
    try:
        from . import _engine_accel as _backend  # type: ignore[attr-defined]
        BACKEND = "accel"
    except ImportError:
        from . import _engine as _backend
        BACKEND = "pure"

DiagramStore = _backend.DiagramStore
FALSE = _backend.FALSE
TRUE = _backend.TRUE
KIND_FALSE = _backend.KIND_FALSE
KIND_TRUE = _backend.KIND_TRUE
KIND_DECISION = _backend.KIND_DECISION
KIND_CONJ = _backend.KIND_CONJ


def available_backends():
    """Names of importable engine backends."""
    out = ["pure"]
    try:
        from . import _engine_accel  # noqa: F401
        out.append("accel")
    except ImportError:
        pass
    return out


def backend_module(name):
    """The engine module for an explicit backend name."""
    if name == "pure":
        from . import _engine
        return _engine
    if name == "accel":
        from . import _engine_accel
        return _engine_accel
    raise KcdagError(f"unknown backend {name!r}")
