"""Tools for adposition supersense annotation (SNACS v2)."""

from .construal import (
    Construal, ConstructionContext, Label, ValidationReport, Violation,
    parse_label, serialize_label, validate,
)
from .schema import SpecialLabel, Supersense, parse_supersense, wu_palmer

__all__ = [
    "Construal", "ConstructionContext", "Label", "SpecialLabel", "Supersense",
    "ValidationReport", "Violation", "parse_label", "parse_supersense",
    "serialize_label", "validate", "wu_palmer",
]
__version__ = "0.1.0"
