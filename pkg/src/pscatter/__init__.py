"""Symbolic calculus for scattered P-spaces of weight omega_1."""
from .ordinal import OMEGA, OMEGA1, ONE, ZERO, Ordinal
from .terms import EMPTY, ISUM, PT, Mult, TermError, build_i, build_indicator, build_J, make_sum
from .syntax import ParseError, format_term, parse_ordinal, parse_term
from .cb import card_at, derivative, derive, rank, truncate
from .stable import canon_vector, enumerate_stable, is_homeo, normalize
from .dimtype import capacity, eq_h, le_h, verify_certificate, verify_witness
from .embed import compactification_bound, embed_into_ordinal, ordinal_bound
from .poset import lift, project, psi_order_check

__version__ = "0.1.0"

__all__ = [
    "OMEGA", "OMEGA1", "ONE", "ZERO", "Ordinal",
    "EMPTY", "ISUM", "PT", "Mult", "TermError", "build_i", "build_indicator", "build_J", "make_sum",
    "ParseError", "format_term", "parse_ordinal", "parse_term",
    "card_at", "derivative", "derive", "rank", "truncate",
    "canon_vector", "enumerate_stable", "is_homeo", "normalize",
    "capacity", "eq_h", "le_h", "verify_certificate", "verify_witness",
    "compactification_bound", "embed_into_ordinal", "ordinal_bound",
    "lift", "project", "psi_order_check",
]
