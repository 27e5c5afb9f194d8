"""Exact-arithmetic modules for the loop algebra of sl2.

Everything in this package computes over the rationals, exactly: matrices of
Fractions, univariate polynomials and truncated power series, a symbolic
enveloping algebra with PBW straightening, a bigraded polynomial quotient
model, and the finite-dimensional highest-weight modules themselves as
explicit matrix representations.  There is no floating point anywhere.
"""

from loopweyl import exactnum, polyseries, rootdata, uea_sl2, ideal_engine, weyl_sl2

__all__ = [
    "exactnum",
    "polyseries",
    "rootdata",
    "uea_sl2",
    "ideal_engine",
    "weyl_sl2",
]

__version__ = "0.1.0"
