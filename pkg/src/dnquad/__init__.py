"""Search, verification and parametric families for D(n)-quadruples."""

from .arith import is_square, isqrt, sqrt_residues
from .families import (
    curve_point_check,
    d0_quadruple,
    dn_family_quadruple,
    pell17_family,
    pell_solutions,
    prop1_quadruple,
)
from .graphsearch import PairGraph, SearchBounds, build_graph, find_quadruples, regular_extend
from .model import DnFailure, DnWitness, QuadClass, equivalent, normalize, scale, verify_dn
from .secondn import find_all_n

__version__ = "0.1.0"
