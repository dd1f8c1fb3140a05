"""Backend selection for the integer polynomial kernels.

The GMP-backed extension is used when it was built; otherwise the
pure-Python module takes over.  ``EULERGOMPERTZ_KERNELS=python`` forces the
fallback (``=compiled`` makes a missing extension an import error).
"""

from __future__ import annotations

import importlib
import os
from types import ModuleType

from . import _pykernels

KERNEL_FUNCTIONS = (
    "poly_mul",
    "divmod_monic",
    "eval_at_nonpositive",
    "pole_quotient_sum",
    "monomial_to_rising",
)


def _load_compiled() -> ModuleType | None:
    try:
        return importlib.import_module("eulergompertz._kernels")
    except ImportError:
        return None


def available_backends() -> dict[str, ModuleType]:
    found = {"python": _pykernels}
    compiled = _load_compiled()
    if compiled is not None:
        found["compiled"] = compiled
    return found


def _select() -> tuple[str, ModuleType]:
    wanted = os.environ.get("EULERGOMPERTZ_KERNELS", "").strip().lower()
    if wanted == "python":
        return "python", _pykernels
    compiled = _load_compiled()
    if compiled is None:
        if wanted == "compiled":
            raise ImportError("EULERGOMPERTZ_KERNELS=compiled but eulergompertz._kernels is not built")
        return "python", _pykernels
    return "compiled", compiled


BACKEND, _impl = _select()

poly_mul = _impl.poly_mul
divmod_monic = _impl.divmod_monic
eval_at_nonpositive = _impl.eval_at_nonpositive
pole_quotient_sum = _impl.pole_quotient_sum
monomial_to_rising = _impl.monomial_to_rising
