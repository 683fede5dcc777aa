"""Explicitly badly approximable pairs from the cubic field of 2cos(2pi/7).

Subpackages:
  field    - exact arithmetic in Q(theta) and certified embeddings
  cfrac    - continued fraction streams and convergents
  patterns - pattern scanning over partial quotients
  cusick   - integral bases, the closed-form constant, certificates
  approx   - sup-norm best-approximant enumeration (verification path)
  cli      - command-line pipeline
"""

import sys as _sys

# convergent numerators/denominators routinely exceed 10^4 digits and are
# serialized as decimal strings; lift CPython's conversion guard accordingly
if hasattr(_sys, "set_int_max_str_digits"):
    _sys.set_int_max_str_digits(max(_sys.get_int_max_str_digits(), 2_000_000))

from .cfrac import Convergent, CubicRoot, THETA_ROOT, convergents
from .field import Embedding, FieldElement, fe_eval

__all__ = [
    "Convergent",
    "CubicRoot",
    "THETA_ROOT",
    "convergents",
    "Embedding",
    "FieldElement",
    "fe_eval",
]
