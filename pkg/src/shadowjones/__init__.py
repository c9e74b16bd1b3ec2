"""Colored Jones invariants of links in 3-manifolds from shadow state sums."""

from .kernels import BACKEND
from .qalg import HalfInt, qbinom, qfact, qint, sixj_numeric, sixj_symmetric
from .qring import POLE, ZERO_VALUE, LaurentPoly, RationalFunc, UnitEval, eval_at_root
from .shadow import ShadowPolyhedron, enumerate_colorings, finiteness_check, first_betti, validate
from .statesum import jones_numeric, jones_symbolic, rt_invariant, state_sum_symbolic, vc_record

__version__ = "0.1.0"

__all__ = [
    "BACKEND", "HalfInt", "LaurentPoly", "POLE", "RationalFunc", "ShadowPolyhedron", "UnitEval",
    "ZERO_VALUE", "enumerate_colorings", "eval_at_root", "finiteness_check", "first_betti",
    "jones_numeric", "jones_symbolic", "qbinom", "qfact", "qint", "rt_invariant", "sixj_numeric",
    "sixj_symmetric", "state_sum_symbolic", "validate", "vc_record",
]
