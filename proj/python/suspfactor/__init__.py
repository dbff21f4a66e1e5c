"""Exact suspension flows over rotation codings, and the factor maps between them.

Thin wrapper over the C++ core. All numeric payloads are exact rationals or
coefficient vectors serialized as strings; nothing is rounded on the way out.
"""

import json as _json

from ._suspfactor import (
    Bundle,
    BoundaryHitError,
    build_example,
    compare_numbers,
    default_rho,
    set_precision,
)

__all__ = [
    "Bundle",
    "BoundaryHitError",
    "build_example",
    "compare_numbers",
    "default_rho",
    "set_precision",
    "verify",
    "fixtures",
]


def verify(example, samples=200, seed=1):
    """Run the deterministic invariant suite; returns the report as a dict."""
    return _json.loads(build_example(example).verify_json(samples=samples, seed=seed))


def fixtures(example):
    """The frozen expected values for one example, as a dict."""
    return _json.loads(build_example(example).fixtures_json())
