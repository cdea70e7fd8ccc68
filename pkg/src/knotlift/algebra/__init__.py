from .laurent import LaurentPoly, exact_div
from .rational import RationalFn, rational_normalize, poly_gcd
from .series import TruncSeries, TruncMSeries
from .cyclotomic import CycInt, cyclotomic_poly, laurent_at_root
from .padic import PAdicCycElement, padic_reduce
from .bernoulli import BernoulliTable, bernoulli_polys, bernoulli_number, neg_polylog

__all__ = [
    "LaurentPoly",
    "exact_div",
    "RationalFn",
    "rational_normalize",
    "poly_gcd",
    "TruncSeries",
    "TruncMSeries",
    "CycInt",
    "cyclotomic_poly",
    "laurent_at_root",
    "PAdicCycElement",
    "padic_reduce",
    "BernoulliTable",
    "bernoulli_polys",
    "bernoulli_number",
    "neg_polylog",
]
