"""Exact arithmetic where fractions and negatives are built, not assumed.

Localization and the Grothendieck construction turn a commutative semiring
into one where chosen elements can be divided or subtracted, and the
library reports when that extension stops being faithful (a non-cancellative
element was inverted) or collapses to the zero ring.
"""

from .core import (
    ADDITIVE,
    INF,
    MULTIPLICATIVE,
    Cancellation,
    Element,
    FiniteMonoid,
    Integers,
    Naturals,
    Rationals,
    RingContext,
    Tropical,
    Verdict,
    ZeroRing,
    ZMod,
    add,
    is_cancellative,
    law_violations,
    mul,
)
from .dualcalc import DualNumber, DualRing, derivative, dual_inv, extend, seventeenth_century_quotient
from .eqsolve import LinearEquation, SolveTrace, check_solution, solve, unadd, unmultiply
from .errors import *  # noqa: F401,F403
from .expr import EvalReport, evaluate, format_report, parse
from .polyfrac import (
    PolynomialRing,
    RationalFunction,
    formal_derivative,
    poly_eval,
    ratfunc_eq_as_fractions,
    ratfunc_eq_as_functions,
)
from .quantity import Quantity, UnitMonomial, parse_quantity, q_add, q_div, q_mul, solve_rate
from .ratiogeom import OrientedRatio, Ratio, monodromy, oriented_lift, to_angle, to_fraction
from .universal import (
    Grothendieck,
    InvertedSet,
    Localized,
    collapse_detect,
    diff_eq,
    frac_add,
    frac_eq,
    frac_inv,
    frac_mul,
    grothendieck,
    injectivity_oracle,
    localize,
)

__version__ = "0.1.0"
