"""Exact reduction of linear recurrence sequences to ergodic Markov chains."""

from .analysis import (
    check_ergodicity,
    decide_infinite_equality,
    query_scan,
    reverse_reduce,
    verify_certificate,
)
from .degeneracy import degeneracy_orders, find_nonzero_window, sml_decompose
from .kernel import Matrix, Polynomial, char_poly, cyclotomic, mat_pow, resultant, squarefree_part
from .lrs import Lrs, companion_matrix, eval_range, shift, stride_subsequence
from .reduction import MarkovInstance, Query, ReductionCertificate, build_certificate, build_instance

__all__ = [
    "Lrs",
    "MarkovInstance",
    "Matrix",
    "Polynomial",
    "Query",
    "ReductionCertificate",
    "build_certificate",
    "build_instance",
    "char_poly",
    "check_ergodicity",
    "companion_matrix",
    "cyclotomic",
    "decide_infinite_equality",
    "degeneracy_orders",
    "eval_range",
    "find_nonzero_window",
    "mat_pow",
    "query_scan",
    "resultant",
    "reverse_reduce",
    "shift",
    "sml_decompose",
    "squarefree_part",
    "stride_subsequence",
    "verify_certificate",
]
