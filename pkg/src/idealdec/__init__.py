"""idealdec: modular decomposition data for equidimensional curve ideals.

Given an ideal in Q[X1..Xn] defining an equidimensional curve, the pipeline
reports the number of rational components, their degrees, multiplicities,
conjugacy-class sizes, and (for reduced components) the initial ideal and
affine Hilbert function, all computed through well-chosen prime reductions.
"""

__version__ = "0.1.0"

from .arith import QQ, GF, Rational, UniPoly, FpElem, fp_inv
from .mpoly import MultiPoly, TermOrder, CoordChange
from .groebner import Ideal, GroebnerBasis, buchberger, normal_form
from .pipeline import PipelineConfig, DecompositionReport, decompose

__all__ = [
    "QQ", "GF", "Rational", "UniPoly", "FpElem", "fp_inv",
    "MultiPoly", "TermOrder", "CoordChange",
    "Ideal", "GroebnerBasis", "buchberger", "normal_form",
    "PipelineConfig", "DecompositionReport", "decompose",
]
