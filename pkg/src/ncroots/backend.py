"""Kernel backend selection.

The two hot kernels (exact matrix product and Gauss-Jordan inversion)
exist twice: a Cython extension built at install time and a pure-Python
fallback with identical semantics. The compiled module is preferred when
importable; set ``NCROOTS_PURE_PYTHON=1`` to force the fallback.

``use_backend`` swaps the active kernels at runtime; it exists for the
benchmark script and the backend-agreement tests.
"""

from __future__ import annotations

import os

from . import _pykernels

try:
    from . import _ckernels
except ImportError:
    _ckernels = None


class KernelBackend:
    """Mutable holder for the active kernel functions."""

    def __init__(self, module):
        self.load(module)

    def load(self, module):
        self.name = module.NAME
        self.mul = module.mul
        self.inv = module.inv


def available_backends() -> dict:
    mods = {"pure": _pykernels}
    if _ckernels is not None:
        mods["compiled"] = _ckernels
    return mods


def use_backend(name: str) -> str:
    """Activate the named backend; returns the previously active name."""
    mods = available_backends()
    if name not in mods:
        raise ValueError(f"unknown or unavailable backend {name!r} (have: {sorted(mods)})")
    previous = kernels.name
    kernels.load(mods[name])
    return previous


def _default_module():
    if os.environ.get("NCROOTS_PURE_PYTHON", "") not in ("", "0"):
        return _pykernels
    return _ckernels if _ckernels is not None else _pykernels


kernels = KernelBackend(_default_module())
