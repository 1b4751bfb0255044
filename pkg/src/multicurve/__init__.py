"""Exact computations for generalized line bundles on primitive multiple curves.

The local model is A = F_p[x]/(x^N) [y]/(y^n); stalks of generalized line
bundles are generalized invertible submodules of A.  The package computes
their indices and filtrations, normal forms, duals, semistability and
Jordan-Holder data, Ext^1 lengths via periodic resolutions, and the
component/connectivity bookkeeping of the moduli space.
"""

from .errors import MultiCurveError
from .invariants import CurveParams
from .ring import RingElem, RingParams, parse_elem, required_precision

__all__ = [
    "MultiCurveError",
    "CurveParams",
    "RingElem",
    "RingParams",
    "parse_elem",
    "required_precision",
]

__version__ = "0.1.0"
