"""Built-in systems: registry and constructor.

Identifiers: ``wavelet1d``, ``heisenberg``, ``shearlet`` (parameter ``gamma``),
``dilrot2d``, ``transdil2d``.  ``dilrot2d_corrupted`` is a validation fixture
whose intertwining map is deliberately broken.
"""

from __future__ import annotations

from ..core import SemidirectSystem
from ..errors import ParameterError
from . import dilrot, heisenberg, shearlet, transdil, wavelet

_REGISTRY = {
    "wavelet1d": wavelet.build,
    "heisenberg": heisenberg.build,
    "shearlet": shearlet.build,
    "dilrot2d": dilrot.build,
    "transdil2d": transdil.build,
    "dilrot2d_corrupted": dilrot.build_corrupted,
}

SYSTEM_IDS = tuple(k for k in _REGISTRY if not k.endswith("_corrupted"))


def build_example(system_id: str, **params) -> SemidirectSystem:
    """Instantiate a built-in system from its identifier and parameter map."""
    try:
        builder = _REGISTRY[system_id]
    except KeyError:
        raise ParameterError(
            f"unknown system '{system_id}'; available: {sorted(_REGISTRY)}"
        ) from None
    return builder(**params)
