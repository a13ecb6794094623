"""Graded Betti tables of m^k I and their eventual shape."""
from .asymptotics import (
    ConjectureReport,
    PowerFamily,
    StabilizationUnknown,
    TruncationError,
    conjecture_check,
    is_componentwise_linear,
    pattern_shift_check,
    stabilization_index,
    strand_degree_check,
    strand_report,
    tor_exactness_check,
    verify_counterexample,
)
from .betti import BettiTable, betti_table, betti_table_monomial, power_betti_table, regularity
from .monomial_ideals import (
    GeneratorOrder,
    MonomialIdeal,
    construct_order_O1,
    find_linear_quotients_power,
    has_linear_quotients,
    lambda_invariant,
    power_product,
)
from .parsing import parse_ideal, serialize_ideal
from .polynomial import GradedIdeal, Polynomial
from .render import render_betti

__all__ = [
    "BettiTable", "ConjectureReport", "GeneratorOrder", "GradedIdeal", "MonomialIdeal",
    "Polynomial", "PowerFamily", "StabilizationUnknown", "TruncationError",
    "betti_table", "betti_table_monomial", "conjecture_check", "construct_order_O1",
    "find_linear_quotients_power", "has_linear_quotients", "is_componentwise_linear",
    "lambda_invariant", "parse_ideal", "pattern_shift_check", "power_betti_table",
    "power_product", "regularity", "render_betti", "serialize_ideal", "stabilization_index",
    "strand_degree_check", "strand_report", "tor_exactness_check", "verify_counterexample",
]
