"""Generalized rings over rigs, the term calculus for tensor powers of the
integers, differentials of the naturals, local zeta factors and small spectra."""

from .genring import (FIELD_WITH_ONE_ELEMENT, FiberVec, GenRing, GRing, axiom_suite, make_FM,
                      parse_ring)
from .kernels import BACKEND
from .rigs import Rig, get_rig

__version__ = "0.1.0"

__all__ = ["BACKEND", "FIELD_WITH_ONE_ELEMENT", "FiberVec", "GRing", "GenRing", "Rig",
           "axiom_suite", "get_rig", "make_FM", "parse_ring", "__version__"]
