"""Maximal non-commuting sets in UU_n(F_q) and the point structures M, Q, N."""

from .errors import NCSetsError
from .gf import Field, make_field, parse_field

__all__ = ["Field", "NCSetsError", "make_field", "parse_field"]
__version__ = "0.1.0"
