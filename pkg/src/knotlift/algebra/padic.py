"""p-adic cyclotomic quotients Z[zeta_m]/(p^M) and the reduction map."""

from __future__ import annotations

from .cyclotomic import CycInt, cyclotomic_poly


class PAdicCycElement:
    """Element of Z[zeta_m]/(p^M), coordinates in the power basis."""

    __slots__ = ("p", "prec", "m", "coords")

    def __init__(self, p, prec, m, coords):
        self.p = p
        self.prec = prec
        self.m = m
        mod = p**prec
        deg = len(cyclotomic_poly(m)) - 1
        coords = list(coords)
        while len(coords) < deg:
            coords.append(0)
        self.coords = tuple(c % mod for c in coords)

    @classmethod
    def from_cyc(cls, x: CycInt, p, prec):
        return cls(p, prec, x.m, x.coords)

    @classmethod
    def const(cls, p, prec, m, c):
        return cls(p, prec, m, [c])

    def _check(self, other):
        if (self.p, self.prec, self.m) != (other.p, other.prec, other.m):
            raise ValueError("mixed p-adic parameters")

    def is_zero(self):
        return all(c == 0 for c in self.coords)

    def __eq__(self, other):
        if not isinstance(other, PAdicCycElement):
            return PAdicCycElement.const(self.p, self.prec, self.m, other) == self
        self._check(other)
        return self.coords == other.coords

    def __repr__(self):
        return (
            f"PAdicCycElement(p={self.p}, M={self.prec}, m={self.m}, "
            f"{list(self.coords)})"
        )

    def __add__(self, other):
        other = self._coerce(other)
        return PAdicCycElement(
            self.p, self.prec, self.m,
            [a + b for a, b in zip(self.coords, other.coords)],
        )

    __radd__ = __add__

    def __neg__(self):
        return PAdicCycElement(self.p, self.prec, self.m, [-a for a in self.coords])

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __mul__(self, other):
        if isinstance(other, int):
            return PAdicCycElement(
                self.p, self.prec, self.m, [a * other for a in self.coords]
            )
        other = self._coerce(other)
        a = CycInt(self.m, self.coords) * CycInt(self.m, other.coords)
        return PAdicCycElement(self.p, self.prec, self.m, a.coords)

    __rmul__ = __mul__

    def _coerce(self, other):
        if isinstance(other, PAdicCycElement):
            self._check(other)
            return other
        if isinstance(other, CycInt):
            if other.m != self.m:
                raise ValueError("mixed cyclotomic orders")
            return PAdicCycElement.from_cyc(other, self.p, self.prec)
        return PAdicCycElement.const(self.p, self.prec, self.m, other)

    def inverse(self):
        """Inverse in Z[zeta_m]/(p^M) via xgcd mod p and Hensel lifting."""
        phi = list(cyclotomic_poly(self.m))
        inv_p = _poly_inverse_mod_p(list(self.coords), phi, self.p)
        if inv_p is None:
            raise ZeroDivisionError("element is not a unit mod p")
        x = PAdicCycElement(self.p, self.prec, self.m, inv_p)
        # Newton: x <- x(2 - a x) doubles precision per step
        steps = max(0, (self.prec - 1).bit_length())
        for _ in range(steps):
            x = x * (PAdicCycElement.const(self.p, self.prec, self.m, 2) - self * x)
        assert (self * x) == 1, "inverse lifting failed"
        return x


def _poly_inverse_mod_p(a, phi, p):
    """Inverse of a modulo (phi, p) by extended Euclid over GF(p)."""

    def norm(f):
        while f and f[-1] % p == 0:
            f.pop()
        return [c % p for c in f]

    def polymod_divmod(f, g):
        f = list(f)
        ginv = pow(g[-1], -1, p)
        q = [0] * max(1, len(f) - len(g) + 1)
        for i in range(len(f) - len(g), -1, -1):
            c = (f[i + len(g) - 1] * ginv) % p
            q[i] = c
            if c:
                for j, gc in enumerate(g):
                    f[i + j] = (f[i + j] - c * gc) % p
        return q, norm(f)

    r0, r1 = norm(list(phi)), norm(list(a))
    s0, s1 = [0], [1]
    if not r1:
        return None
    while True:
        if len(r1) == 1:
            c = pow(r1[0], -1, p)
            return [x * c % p for x in s1]
        q, r = polymod_divmod(r0, r1)
        if not r:
            return None  # common factor: not a unit
        # s = s0 - q*s1
        s = list(s0) + [0] * max(0, len(q) + len(s1) - 1 - len(s0))
        for i, qc in enumerate(q):
            if qc:
                for j, sc in enumerate(s1):
                    if i + j >= len(s):
                        s.extend([0] * (i + j + 1 - len(s)))
                    s[i + j] = (s[i + j] - qc * sc) % p
        r0, r1 = r1, r
        s0, s1 = s1, norm(s)


def padic_reduce(poly, p, prec, m=1, t0=None, qvar="q", tvar="t"):
    """Reduce a Laurent polynomial over Z[zeta_m] in t^(1/m) to Z[zeta_m]/(p^M).

    ``poly`` is a LaurentPoly whose coefficients are ints or CycInt of order m.
    If t0 is given, t (including fractional powers scaled integrally) is
    evaluated at t0 via modular inverses; t0 must be a unit mod p whenever
    negative exponents occur.  Without t0 the polynomial must be constant.
    """
    mod = p**prec
    tidx = poly.vars.index(tvar) if tvar in poly.vars else None
    acc = PAdicCycElement(p, prec, m, [])
    for mono, c in poly.terms.items():
        if isinstance(c, CycInt):
            if c.m != m:
                c = c.embed(m) if m % c.m == 0 else None
                if c is None:
                    raise ValueError("coefficient order incompatible")
            cv = PAdicCycElement.from_cyc(c, p, prec)
        else:
            cv = PAdicCycElement.const(p, prec, m, c)
        scale = 1
        for i, e in enumerate(mono):
            if e == 0:
                continue
            if tidx is None or i != tidx:
                raise ValueError("unexpected symbolic variable in reduction")
            if t0 is None:
                raise ValueError("polynomial is non-constant; supply t0")
            num = e
            if num % poly.den:
                raise ValueError("fractional t-exponent does not clear")
            ee = num // poly.den
            if ee >= 0:
                scale = (scale * pow(t0 % mod, ee, mod)) % mod
            else:
                if t0 % p == 0:
                    raise ZeroDivisionError("t0 not invertible mod p")
                inv = pow(t0 % mod, -1, mod)
                scale = (scale * pow(inv, -ee, mod)) % mod
        acc = acc + cv * scale
    return acc
