"""mockrep: voice transforms, fiber disintegrations and admissibility checks
for semidirect products R^n x| H acting on L2(R^d)."""

from .builtin import SYSTEM_IDS, build_example
from .core import GroupElement, SemidirectSystem, compose, haar_weight, identity_element, inverse, modular_g
from .fields import Field, make_field
from .validation import validate_system

__all__ = [
    "SYSTEM_IDS",
    "build_example",
    "GroupElement",
    "SemidirectSystem",
    "compose",
    "inverse",
    "identity_element",
    "haar_weight",
    "modular_g",
    "Field",
    "make_field",
    "validate_system",
]
