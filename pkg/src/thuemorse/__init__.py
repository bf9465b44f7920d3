"""Exact arithmetic for the Thue-Morse Laurent series and its continued fraction."""

from .exactpoly import Poly, LaurentTail, TM_STREAM, format_poly, parse_poly, tm_bit
from .cfseries import ConvergentPair, extract_cf, is_convergent
from .tmcf import beta, canonical, double, structure_report
from .config import Config, load_config

__all__ = [
    "Poly", "LaurentTail", "TM_STREAM", "format_poly", "parse_poly", "tm_bit",
    "ConvergentPair", "extract_cf", "is_convergent",
    "beta", "canonical", "double", "structure_report",
    "Config", "load_config",
]
