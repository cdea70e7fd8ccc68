"""Cyclotomic integers Z[zeta_m] in the power basis mod the m-th cyclotomic
polynomial, with embeddings realizing the compatible family zeta_m = zeta_mm'
^ m' (concretely zeta_m = exp(2*pi*i/m))."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache


@lru_cache(maxsize=None)
def cyclotomic_poly(m: int) -> tuple:
    """Coefficients (low to high) of the m-th cyclotomic polynomial."""
    if m < 1:
        raise ValueError("order must be positive")
    # x^m - 1 divided by the product of proper cyclotomic factors
    num = [0] * (m + 1)
    num[0], num[m] = -1, 1
    for d in range(1, m):
        if m % d == 0:
            num = _polydiv_exact(num, list(cyclotomic_poly(d)))
    return tuple(num)


def _polydiv_exact(a, b):
    a = list(a)
    out = [0] * (len(a) - len(b) + 1)
    for i in range(len(a) - len(b), -1, -1):
        c = a[i + len(b) - 1]
        if c % b[-1]:
            raise ArithmeticError("inexact cyclotomic division")
        q = c // b[-1]
        out[i] = q
        if q:
            for j, bc in enumerate(b):
                a[i + j] -= q * bc
    if any(a):
        raise ArithmeticError("nonzero remainder in cyclotomic division")
    return out


@lru_cache(maxsize=None)
def _reduction_rows(m: int):
    """x^k mod Phi_m for k = deg..2*deg-2, as tuples in the power basis."""
    phi = cyclotomic_poly(m)
    deg = len(phi) - 1
    rows = []
    # x^deg = -(phi[0] + ... + phi[deg-1] x^{deg-1})   (phi is monic)
    prev = [-c for c in phi[:deg]]
    rows.append(tuple(prev))
    for _ in range(deg - 2):
        nxt = [0] + prev[:-1]
        top = prev[-1]
        if top:
            for j in range(deg):
                nxt[j] += top * rows[0][j]
        prev = nxt
        rows.append(tuple(prev))
    return rows


class CycInt:
    """Element of Z[zeta_m] (or Q[zeta_m] with Fraction coordinates)."""

    __slots__ = ("m", "coords")

    def __init__(self, m: int, coords):
        self.m = m
        deg = len(cyclotomic_poly(m)) - 1
        coords = list(coords)
        if len(coords) > deg:
            coords = _reduce(m, coords)
        while len(coords) < deg:
            coords.append(0)
        self.coords = tuple(coords)

    @classmethod
    def zero(cls, m):
        return cls(m, [])

    @classmethod
    def const(cls, m, c):
        return cls(m, [c])

    @classmethod
    def zeta_power(cls, m, e):
        """zeta_m^e for any integer e."""
        e %= m
        coords = [0] * (e + 1)
        coords[e] = 1
        return cls(m, coords)

    def is_zero(self):
        return all(c == 0 for c in self.coords)

    def is_rational(self):
        return all(c == 0 for c in self.coords[1:])

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if isinstance(other, CycInt):
            return self.m == other.m and self.coords == other.coords
        return self.is_rational() and self.coords[0] == other

    def __hash__(self):
        return hash((self.m, self.coords))

    def __repr__(self):
        return f"CycInt(m={self.m}, {list(self.coords)})"

    def _coerce(self, other):
        if isinstance(other, CycInt):
            if other.m != self.m:
                raise ValueError("mixed cyclotomic orders; embed first")
            return other
        return CycInt.const(self.m, other)

    def __add__(self, other):
        other = self._coerce(other)
        return CycInt(self.m, [a + b for a, b in zip(self.coords, other.coords)])

    __radd__ = __add__

    def __neg__(self):
        return CycInt(self.m, [-a for a in self.coords])

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, CycInt):
            return CycInt(self.m, [a * other for a in self.coords])
        other = self._coerce(other)
        n = len(self.coords)
        prod = [0] * (2 * n - 1)
        for i, a in enumerate(self.coords):
            if a == 0:
                continue
            for j, b in enumerate(other.coords):
                if b:
                    prod[i + j] += a * b
        return CycInt(self.m, _reduce(self.m, prod))

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative powers: use zeta_power for units")
        result = CycInt.const(self.m, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def embed(self, m2: int) -> "CycInt":
        """Image under zeta_m -> zeta_m2^(m2/m); requires m | m2."""
        if m2 % self.m:
            raise ValueError("target order must be a multiple")
        step = m2 // self.m
        out = CycInt.zero(m2)
        for e, c in enumerate(self.coords):
            if c:
                out = out + CycInt.zeta_power(m2, e * step) * c
        return out

    def conjugates_sum(self):
        """Trace to Q (sum of Galois conjugates), handy for sanity checks."""
        # trace of zeta^e over Q: deg * [e == 0] + Ramanujan sum otherwise;
        # computed here naively via the reduction of the power sums
        deg = len(self.coords)
        total = 0
        for e, c in enumerate(self.coords):
            if c == 0:
                continue
            tr = deg if e == 0 else _zeta_trace(self.m, e)
            total += c * tr
        return total


@lru_cache(maxsize=None)
def _zeta_trace(m, e):
    # sum over primitive residues r mod m of zeta^(e r), via Mobius
    from math import gcd

    d = m // gcd(m, e)
    mu = _mobius(d)
    phi_m = len(cyclotomic_poly(m)) - 1
    phi_d = len(cyclotomic_poly(d)) - 1
    return mu * phi_m // phi_d


def _mobius(n):
    out, p = 1, 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            out = -out
        p += 1
    if n > 1:
        out = -out
    return out


def _reduce(m, coords):
    phi = cyclotomic_poly(m)
    deg = len(phi) - 1
    coords = list(coords)
    if len(coords) <= deg:
        return coords
    rows = _reduction_rows(m)
    out = coords[:deg] + [0] * max(0, deg - len(coords))
    for k in range(deg, len(coords)):
        c = coords[k]
        if c == 0:
            continue
        if k - deg < len(rows):
            row = rows[k - deg]
        else:
            # fall back: reduce x^k by repeated squaring style reduction
            row = _power_mod(m, k)
        for j in range(deg):
            out[j] += c * row[j]
    return out


@lru_cache(maxsize=None)
def _power_mod(m, k):
    phi = cyclotomic_poly(m)
    deg = len(phi) - 1
    k %= m  # zeta^m = 1
    if k < deg:
        row = [0] * deg
        row[k] = 1
        return tuple(row)
    rows = _reduction_rows(m)
    cur = list(rows[0])  # x^deg
    for _ in range(k - deg):
        top = cur[-1]
        cur = [0] + cur[:-1]
        if top:
            for j in range(deg):
                cur[j] += top * rows[0][j]
    return tuple(cur)


def laurent_at_root(poly, qvar: str, m: int):
    """Evaluate a LaurentPoly at q = zeta_m, keeping the other variables.

    Returns a LaurentPoly over the remaining variables with CycInt
    coefficients.  Exponents of q must be integral.
    """
    from .laurent import LaurentPoly

    i = poly.vars.index(qvar)
    rest = poly.vars[:i] + poly.vars[i + 1 :]
    out = {}
    for mono, c in poly.terms.items():
        e = mono[i]
        if e % poly.den:
            raise ValueError("fractional exponent of q at a root of unity")
        z = CycInt.zeta_power(m, (e // poly.den) % m)
        key = mono[:i] + mono[i + 1 :]
        cur = out.get(key)
        val = z * c
        out[key] = val if cur is None else cur + val
    out = {k: v for k, v in out.items() if not v.is_zero()}
    return LaurentPoly(rest, out, poly.den)
