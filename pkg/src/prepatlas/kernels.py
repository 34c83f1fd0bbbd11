"""Backend selection for the numerical kernels.

The compiled extension is used when it was built; otherwise the numpy
versions take over.  ``PREP_ATLAS_KERNELS=python`` forces the fallback.
"""
from __future__ import annotations

import os
from types import ModuleType

from . import _pykernels


def _load() -> tuple[str, ModuleType]:
    if os.environ.get("PREP_ATLAS_KERNELS", "").lower() == "python":
        return "python", _pykernels
    try:
        from . import _kernels  # type: ignore[attr-defined]
    except ImportError:
        return "python", _pykernels
    return "cython", _kernels


BACKEND, _impl = _load()


def backend(name: str | None = None) -> ModuleType:
    """The kernel module for ``name`` ("cython" or "python"), default the active one."""
    if name is None:
        return _impl
    if name == "python":
        return _pykernels
    if name == "cython":
        from . import _kernels  # type: ignore[attr-defined]

        return _kernels
    raise ValueError(f"unknown kernel backend {name!r}")


def available() -> list[str]:
    out = ["python"]
    try:
        from . import _kernels  # type: ignore[attr-defined]  # noqa: F401

        out.insert(0, "cython")
    except ImportError:
        pass
    return out


escape_rows = _impl.escape_rows
aberth_orbit = _impl.aberth_orbit
