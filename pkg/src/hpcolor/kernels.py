"""Kernel selection: compiled predicates when available, else pure Python.

Set ``HPCOLOR_KERNEL=python`` (or call :func:`select`) to force the
fallback; ``hpcolor bench`` uses this to compare the two implementations.
"""

from __future__ import annotations

import os

from . import _kernels_py

try:
    from . import _kernels as _compiled  # type: ignore[attr-defined]
except ImportError:
    _compiled = None

ACTIVE = "python"
orient = _kernels_py.orient


def available() -> list[str]:
    names = ["python"]
    if _compiled is not None:
        names.insert(0, "c")
    return names


def select(name: str = "auto") -> str:
    """Pick the kernel implementation; returns the name actually selected."""
    global ACTIVE, orient
    if name == "auto":
        name = "c" if _compiled is not None else "python"
    if name == "c":
        if _compiled is None:
            raise RuntimeError("compiled kernels are not built")
        orient = _compiled.orient
        ACTIVE = "c"
    elif name == "python":
        orient = _kernels_py.orient
        ACTIVE = "python"
    else:
        raise ValueError(f"unknown kernel {name!r}")
    return ACTIVE


select(os.environ.get("HPCOLOR_KERNEL", "auto"))
