"""Exact WZ certification of hypergeometric identities.

Rationals come back as fractions.Fraction.
"""

from ._core import (
    BudgetExceeded,
    Error,
    ParseError,
    __version__,
    ahlgren_ono_eval,
    apery_number,
    canonical,
    cli,
    constant_term,
    document,
    exact_sum,
    identity_hash,
    prove,
    verify,
)

__all__ = [
    "BudgetExceeded",
    "Error",
    "ParseError",
    "__version__",
    "ahlgren_ono_eval",
    "apery_number",
    "canonical",
    "cli",
    "constant_term",
    "document",
    "exact_sum",
    "identity_hash",
    "prove",
    "verify",
]
