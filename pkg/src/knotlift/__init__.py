"""knotlift: exact computation of colored Jones polynomials from braid words,
together with the Alexander polynomial, Nahm-equation data, the loop
expansion at q=1, one-sided cyclotomic coefficients, leading expansions at
roots of unity, and p-adic gluing checks."""

__version__ = "0.1.0"
