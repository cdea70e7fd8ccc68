"""Truncated power series: univariate lists and multivariate total-degree dicts.

Coefficients live in any exact ring (int, Fraction, LaurentPoly, RationalFn,
CycInt); the zero and one of the ring are passed explicitly where needed.
Arithmetic truncates consistently: order-L inputs give order-L outputs.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product


class TruncSeries:
    """Univariate truncated series sum_{i<=L} c_i x^i."""

    __slots__ = ("order", "coeffs", "zero")

    def __init__(self, order, coeffs, zero=0):
        if order < 0:
            raise ValueError("order must be >= 0")
        self.order = order
        self.zero = zero
        cs = list(coeffs)[: order + 1]
        while len(cs) < order + 1:
            cs.append(zero)
        self.coeffs = cs

    @classmethod
    def const(cls, order, c, zero=0):
        return cls(order, [c], zero)

    @classmethod
    def gen(cls, order, one=1, zero=0):
        return cls(order, [zero, one], zero)

    def __getitem__(self, i):
        return self.coeffs[i]

    def __eq__(self, other):
        return (
            isinstance(other, TruncSeries)
            and self.order == other.order
            and all(a == b for a, b in zip(self.coeffs, other.coeffs))
        )

    def __repr__(self):
        return f"TruncSeries(L={self.order}, {self.coeffs})"

    def __add__(self, other):
        if not isinstance(other, TruncSeries):
            cs = list(self.coeffs)
            cs[0] = cs[0] + other
            return TruncSeries(self.order, cs, self.zero)
        L = min(self.order, other.order)
        return TruncSeries(
            L, [a + b for a, b in zip(self.coeffs, other.coeffs)], self.zero
        )

    __radd__ = __add__

    def __neg__(self):
        return TruncSeries(self.order, [-c for c in self.coeffs], self.zero)

    def __sub__(self, other):
        if not isinstance(other, TruncSeries):
            cs = list(self.coeffs)
            cs[0] = cs[0] - other
            return TruncSeries(self.order, cs, self.zero)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, TruncSeries):
            return TruncSeries(
                self.order, [c * other for c in self.coeffs], self.zero
            )
        L = min(self.order, other.order)
        out = [self.zero for _ in range(L + 1)]
        for i, a in enumerate(self.coeffs[: L + 1]):
            if a == self.zero:
                continue
            for j in range(L + 1 - i):
                b = other.coeffs[j]
                out[i + j] = out[i + j] + a * b
        return TruncSeries(L, out, self.zero)

    __rmul__ = __mul__

    def shift(self, k):
        """Multiply by x^k (k >= 0)."""
        return TruncSeries(
            self.order, [self.zero] * k + self.coeffs[: self.order + 1 - k], self.zero
        )

    def inverse(self, one=1):
        """Multiplicative inverse; constant term must be invertible."""
        c0 = self.coeffs[0]
        if isinstance(c0, int):
            if c0 == 0:
                raise ZeroDivisionError("series has zero constant term")
            inv0 = Fraction(1, c0) if abs(c0) != 1 else c0
        elif isinstance(c0, Fraction):
            inv0 = 1 / c0
        elif hasattr(c0, "monomial_inverse"):
            inv0 = c0.monomial_inverse()
        else:
            inv0 = one / c0
        out = [inv0] + [self.zero] * self.order
        for n in range(1, self.order + 1):
            s = self.zero
            for i in range(1, n + 1):
                s = s + self.coeffs[i] * out[n - i]
            out[n] = -(inv0 * s)
        return TruncSeries(self.order, out, self.zero)

    def compose(self, inner):
        """Substitute a series with zero constant term for the variable."""
        if not _is_zero(inner.coeffs[0]):
            raise ValueError("inner series must have zero constant term")
        L = min(self.order, inner.order)
        result = TruncSeries.const(L, self.coeffs[0], self.zero)
        acc = None
        for i in range(1, L + 1):
            acc = inner.truncate(L) if acc is None else acc * inner
            result = result + acc * self.coeffs[i]
        return result

    def truncate(self, L):
        return TruncSeries(min(L, self.order), self.coeffs, self.zero)


class TruncMSeries:
    """Multivariate series truncated by total degree."""

    __slots__ = ("vars", "order", "terms")

    def __init__(self, vars, order, terms):
        self.vars = tuple(vars)
        self.order = order
        self.terms = {
            tuple(m): c
            for m, c in terms.items()
            if sum(m) <= order and not _is_zero(c)
        }

    @classmethod
    def const(cls, vars, order, c):
        return cls(vars, order, {(0,) * len(tuple(vars)): c})

    @classmethod
    def gen(cls, vars, order, i, one=1):
        vars = tuple(vars)
        m = [0] * len(vars)
        m[i] = 1
        return cls(vars, order, {tuple(m): one})

    def coeff(self, mono):
        return self.terms.get(tuple(mono), 0)

    def __eq__(self, other):
        return (
            isinstance(other, TruncMSeries)
            and self.vars == other.vars
            and self.order == other.order
            and self.terms == other.terms
        )

    def __repr__(self):
        n = len(self.terms)
        return f"TruncMSeries(vars={self.vars}, L={self.order}, {n} terms)"

    def __add__(self, other):
        if not isinstance(other, TruncMSeries):
            out = dict(self.terms)
            key = (0,) * len(self.vars)
            out[key] = out.get(key, 0) + other
            return TruncMSeries(self.vars, self.order, out)
        L = min(self.order, other.order)
        out = {m: c for m, c in self.terms.items() if sum(m) <= L}
        for m, c in other.terms.items():
            if sum(m) > L:
                continue
            s = out.get(m, 0) + c
            if _is_zero(s):
                out.pop(m, None)
            else:
                out[m] = s
        return TruncMSeries(self.vars, L, out)

    __radd__ = __add__

    def __neg__(self):
        return TruncMSeries(
            self.vars, self.order, {m: -c for m, c in self.terms.items()}
        )

    def __sub__(self, other):
        if not isinstance(other, TruncMSeries):
            return self + (-other if not isinstance(other, int) else -other)
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, TruncMSeries):
            if _is_zero(other):
                return TruncMSeries(self.vars, self.order, {})
            return TruncMSeries(
                self.vars, self.order, {m: c * other for m, c in self.terms.items()}
            )
        L = min(self.order, other.order)
        out = {}
        small, big = self.terms, other.terms
        if len(small) > len(big):
            small, big = big, small
        for m1, c1 in small.items():
            d1 = sum(m1)
            for m2, c2 in big.items():
                if d1 + sum(m2) > L:
                    continue
                m = tuple(x + y for x, y in zip(m1, m2))
                s = out.get(m, 0) + c1 * c2
                if _is_zero(s):
                    out.pop(m, None)
                else:
                    out[m] = s
        return TruncMSeries(self.vars, L, out)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        result = TruncMSeries.const(self.vars, self.order, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def inverse(self):
        """Inverse of a series with invertible constant term."""
        key = (0,) * len(self.vars)
        c0 = self.terms.get(key, 0)
        if _is_zero(c0):
            raise ZeroDivisionError("series has zero constant term")
        if isinstance(c0, int):
            inv0 = Fraction(1, c0) if abs(c0) != 1 else c0
        elif isinstance(c0, Fraction):
            inv0 = 1 / c0
        else:
            inv0 = c0.inverse() if hasattr(c0, "inverse") else 1 / c0
        rest = self - TruncMSeries.const(self.vars, self.order, c0)
        # 1/(c0 + r) = inv0 * sum_k (-inv0 * r)^k
        t = (-rest) * inv0
        result = TruncMSeries.const(self.vars, self.order, 1)
        acc = TruncMSeries.const(self.vars, self.order, 1)
        for _ in range(self.order):
            acc = acc * t
            if not acc.terms:
                break
            result = result + acc
        return result * inv0

    def truncate(self, L):
        return TruncMSeries(self.vars, min(L, self.order), self.terms)

    def with_order(self, L):
        """Reinterpret at order L; caller asserts correctness beyond the
        current order (used by iterative solvers)."""
        return TruncMSeries(self.vars, L, self.terms)

    def graded_parts(self):
        out = {}
        for m, c in self.terms.items():
            out.setdefault(sum(m), {})[m] = c
        return out

    def map_coeffs(self, f):
        return TruncMSeries(
            self.vars, self.order, {m: f(c) for m, c in self.terms.items()}
        )

    def substitute_values(self, values):
        """Evaluate at scalars (exact), ignoring truncation tails."""
        total = 0
        for m, c in self.terms.items():
            v = c
            for x, e in zip(values, m):
                v = v * x**e
            total = total + v
        return total


def _is_zero(c):
    if isinstance(c, (int, Fraction)):
        return c == 0
    if hasattr(c, "is_zero"):
        return c.is_zero()
    return not c
