"""Witt-equivariant triply graded homology of braid closures.

Typical use::

    from artifact import parse_braid, bracket, hh_of_complex, homology
    H = homology(hh_of_complex(bracket(parse_braid("1,1,1"))), q_max=12)
"""
from .gradedlin import euler_characteristic, homology, induced_operator, poincare
from .hochschild import hh_of_complex
from .homfly_oracle import homfly, homfly_unreduced_series
from .qpoly import Polynomial, VarSet, apply_witt, parse
from .rouquier import BraidWord, bracket, parse_braid
from .soergel import StrandContext, diagonal, elementary, soergel3

__all__ = [
    "BraidWord",
    "Polynomial",
    "StrandContext",
    "VarSet",
    "apply_witt",
    "bracket",
    "diagonal",
    "elementary",
    "euler_characteristic",
    "hh_of_complex",
    "homfly",
    "homfly_unreduced_series",
    "homology",
    "induced_operator",
    "parse",
    "parse_braid",
    "poincare",
    "soergel3",
]

__version__ = "0.1.0"
