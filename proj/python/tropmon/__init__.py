"""Generating sets and factorization for max-plus and Boolean matrix monoids."""

from ._core import (
    MembershipError,
    closure,
    eval_word,
    factor,
    format_matrix,
    generators,
    is_regular,
    phi,
    prime_certificate,
    rank_search,
    x_family_j_related,
)

__all__ = [
    "MembershipError",
    "closure",
    "eval_word",
    "factor",
    "format_matrix",
    "generators",
    "is_regular",
    "phi",
    "prime_certificate",
    "rank_search",
    "x_family_j_related",
]
