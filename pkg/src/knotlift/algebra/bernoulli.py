"""Bernoulli polynomials and negative polylogarithms."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb

from .laurent import LaurentPoly
from .rational import RationalFn


@lru_cache(maxsize=None)
def bernoulli_number(n: int) -> Fraction:
    """B_n with the B_1 = -1/2 convention."""
    if n == 0:
        return Fraction(1)
    # sum_{j=0}^{n} C(n+1, j) B_j = 0
    s = Fraction(0)
    for j in range(n):
        s += comb(n + 1, j) * bernoulli_number(j)
    return -s / (n + 1)


class BernoulliTable:
    """B_l(a) for l = 0..max_degree as coefficient lists in a."""

    def __init__(self, max_degree: int):
        if max_degree < 0:
            raise ValueError("max degree must be >= 0")
        self.max_degree = max_degree
        self.polys = []
        for n in range(max_degree + 1):
            # B_n(a) = sum_k C(n,k) B_k a^{n-k}
            coeffs = [Fraction(0)] * (n + 1)
            for k in range(n + 1):
                coeffs[n - k] += comb(n, k) * bernoulli_number(k)
            self.polys.append(coeffs)

    def poly(self, n):
        """Coefficients of B_n(a), low degree first."""
        return list(self.polys[n])

    def eval(self, n, a):
        v = Fraction(0)
        for i, c in enumerate(self.polys[n]):
            v += c * Fraction(a) ** i
        return v


def bernoulli_polys(max_degree: int) -> BernoulliTable:
    return BernoulliTable(max_degree)


@lru_cache(maxsize=None)
def neg_polylog_basis(d: int) -> tuple:
    """Li_{-d}(t) in the basis (1-t)^{-j}: returns c with
    Li_{-d}(t) = sum_j c[j] * (1-t)^{-j}, j = 0..d+1, integer c."""
    if d < 0:
        raise ValueError("d must be >= 0")
    if d == 0:
        # t/(1-t) = 1/(1-t) - 1
        return (-1, 1)
    prev = neg_polylog_basis(d - 1)
    # t d/dt: d/dt (1-t)^{-j} = j (1-t)^{-j-1};
    # t (1-t)^{-j-1} = (1-t)^{-j-1} - (1-t)^{-j}
    out = [0] * (d + 2)
    for j, c in enumerate(prev):
        if c and j:
            out[j + 1] += c * j
            out[j] -= c * j
    return tuple(out)


def neg_polylog(d: int, tvar: str = "t") -> RationalFn:
    """Li_{-d}(t) as a rational function with denominator (1-t)^(d+1)."""
    basis = neg_polylog_basis(d)
    vars = (tvar,)
    one_minus_t = LaurentPoly(vars, {(0,): 1, (1,): -1})
    num = LaurentPoly.zero(vars)
    for j, c in enumerate(basis):
        if c:
            num = num + one_minus_t ** (d + 1 - j) * c
    return RationalFn(num, one_minus_t ** (d + 1))
