"""Exact computations for tilting modules over tame hereditary algebras.

Tubes and Prüfer maps, endomorphism rings over truncated power series,
Dedekind localizations of k[x], adèle rings, and a rewrite engine for the
two derived stratifications of End(T_U).
"""
from .errors import TamestratError
from .extfield import make_ext_field, parse_field
from .fields import QQ, PrimeField
from .poly import Poly, parse_poly
from .quiver import KRONECKER, parse_quiver
from .strat import parse_cliques, stratify_A, stratify_B, verify_report

__version__ = "0.1.0"

__all__ = [
    "KRONECKER", "Poly", "PrimeField", "QQ", "TamestratError", "make_ext_field", "parse_cliques",
    "parse_field", "parse_poly", "parse_quiver", "stratify_A", "stratify_B", "verify_report",
]
