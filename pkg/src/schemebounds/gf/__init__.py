"""Finite-field arithmetic, matrix rank and the rk_min search."""

from .field import FqField, make_field, parse_field
from .matrix import FqMatrix, combine, rank
from .search import RkMinReport, rkmin_naive, rkmin_search

__all__ = [
    "FqField",
    "make_field",
    "parse_field",
    "FqMatrix",
    "combine",
    "rank",
    "RkMinReport",
    "rkmin_search",
    "rkmin_naive",
]
