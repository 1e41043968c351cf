"""Exact certificate toolkit for polynomial-type contraction conditions.

Thin wrapper over the C++ core. All rationals cross the boundary as
strings ("3/4", "0.25") so values stay exact.
"""

from polycontract._core import (
    InputError,
    __version__,
    a_priori_bound,
    demo,
    demo_document,
    demo_names,
    eval_expr,
    iterate,
    search,
    validate,
    verify,
)

__all__ = [
    "InputError",
    "__version__",
    "a_priori_bound",
    "demo",
    "demo_document",
    "demo_names",
    "eval_expr",
    "iterate",
    "search",
    "validate",
    "verify",
]
