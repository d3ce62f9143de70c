"""Exact computation and verification of restricted Hurwitz class number sums."""

from .arith import divisor_functions, isqrt, legendre, sieve_primes
from .classsums import (
    FitResult,
    Radius,
    SumQuery,
    correction_sum,
    correction_term,
    restricted_sum,
    scan_conjectures,
    verify_hurwitz_kronecker,
    verify_theorem,
    verify_theorem5,
)
from .hurwitz import HurwitzTable, hurwitz_single, hurwitz_table, load_table, save_table
from .report import VerificationReport

__version__ = "0.1.0"
