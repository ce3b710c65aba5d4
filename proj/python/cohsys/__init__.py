"""Exact-arithmetic analysis of coherent systems on nodal curves of compact type.

Inputs mirror the ``cohsys`` CLI documents (component ids are 1-based);
reports come back as plain dicts with rationals rendered as ``"p/q"`` strings.
"""

from cohsys._core import (
    BoundsError,
    CohsysError,
    Curve,
    InternalError,
    ValidationError,
    alpha_g,
    bn,
    check,
    dims,
    dual_span,
    invariants,
    star,
    subcurve,
    suite_names,
    verify,
    walls,
)

__all__ = [
    "BoundsError",
    "CohsysError",
    "Curve",
    "InternalError",
    "ValidationError",
    "alpha_g",
    "bn",
    "check",
    "dims",
    "dual_span",
    "invariants",
    "star",
    "subcurve",
    "suite_names",
    "verify",
    "walls",
]
