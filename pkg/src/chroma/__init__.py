"""Colourability over finite fields and decision-tree compilation to short computation sequences."""
from .field import FieldCtx, field_create, parse_field

__all__ = ["FieldCtx", "field_create", "parse_field"]
__version__ = "0.1.0"
