"""Rational functions in canonical form.

Canonical form: numerator and denominator are integer-coefficient Laurent
polynomials, coprime after clearing content, with no negative exponents in
the denominator and the denominator's graded-lex leading coefficient
positive.  Two equal rational functions then compare syntactically equal.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd as int_gcd
from math import lcm

from .laurent import LaurentPoly, exact_div

# Inputs larger than this skip the polynomial gcd during canonicalization
# (content and unit normalization still apply); equality stays decidable
# through cross multiplication in __eq__.
GCD_TERM_LIMIT = 6000


def _clear_fractions(p: LaurentPoly) -> LaurentPoly:
    denoms = 1
    for c in p.terms.values():
        if isinstance(c, Fraction):
            denoms = lcm(denoms, c.denominator)
    if denoms == 1:
        return p.map_coeffs(lambda x: int(x) if isinstance(x, Fraction) else x)
    return p.map_coeffs(lambda x: int(Fraction(x) * denoms))


def _poly_coeffs_in(p: LaurentPoly, i: int):
    """View p as a univariate polynomial in vars[i]: exponent -> LaurentPoly."""
    rest = p.vars[:i] + p.vars[i + 1 :]
    out = {}
    for m, c in p.terms.items():
        e = m[i]
        key = m[:i] + m[i + 1 :]
        out.setdefault(e, {})[key] = c
    return {e: LaurentPoly(rest, t, p.den) for e, t in out.items()}


def _univar_int_gcd(a: dict, b: dict) -> dict:
    """gcd of two primitive integer univariate polys given as exp->int dicts."""

    def norm(d):
        if not d:
            return d
        g = 0
        for c in d.values():
            g = int_gcd(g, c)
        d = {e: c // g for e, c in d.items()}
        if d[max(d)] < 0:
            d = {e: -c for e, c in d.items()}
        return d

    def rem(a, b):
        a = dict(a)
        db = max(b)
        lb = b[db]
        while a and max(a) >= db:
            da = max(a)
            la = a[da]
            g = int_gcd(la, lb)
            mul_a = lb // g
            mul_b = la // g
            if mul_a != 1:
                a = {e: c * mul_a for e, c in a.items()}
            for e, c in b.items():
                key = e + da - db
                s = a.get(key, 0) - mul_b * c
                if s:
                    a[key] = s
                else:
                    a.pop(key, None)
        return a

    a, b = norm(a), norm(b)
    while b:
        a, b = b, norm(rem(a, b))
    return a


def poly_gcd(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    """gcd over Q up to units, via recursive primitive PRS.

    Both inputs must have integer coefficients and no negative exponents.
    """
    if a.is_zero():
        return b
    if b.is_zero():
        return a
    a = a.reduced()
    b = b.reduced()
    d = lcm(a.den, b.den)
    a = a.with_den(d)
    b = b.with_den(d)
    nv = len(a.vars)
    if nv == 0:
        return LaurentPoly.one(a.vars)
    if nv == 1:
        da = {m[0]: c for m, c in a.terms.items()}
        db = {m[0]: c for m, c in b.terms.items()}
        g = _univar_int_gcd(da, db)
        return LaurentPoly(a.vars, {(e,): c for e, c in g.items()}, d)
    # recurse on the variable of highest degree spread
    i = max(
        range(nv),
        key=lambda j: max(m[j] for m in a.terms) + max(m[j] for m in b.terms),
    )
    if all(m[i] == 0 for m in a.terms) and all(m[i] == 0 for m in b.terms):
        rest = a.vars[:i] + a.vars[i + 1 :]
        drop = lambda p: LaurentPoly(
            rest, {m[:i] + m[i + 1 :]: c for m, c in p.terms.items()}, d
        )
        g = poly_gcd(drop(a), drop(b))
        return g.extend_vars(a.vars)

    def _joint_clear(parts):
        scale = 1
        for q in parts.values():
            for c in q.terms.values():
                if isinstance(c, Fraction):
                    scale = lcm(scale, c.denominator)
        if scale == 1:
            return {
                e: q.map_coeffs(lambda x: int(x) if isinstance(x, Fraction) else x)
                for e, q in parts.items()
            }
        return {
            e: q.map_coeffs(lambda x: int(Fraction(x) * scale))
            for e, q in parts.items()
        }

    def content_prim(p):
        cs = _poly_coeffs_in(p, i)
        cont = LaurentPoly.zero(p.vars[:i] + p.vars[i + 1 :])
        for c in cs.values():
            cont = poly_gcd(cont, c)
        prim = {}
        for e, c in cs.items():
            q = exact_div(c, cont)
            if q is None:
                raise ArithmeticError("content division failed")
            prim[e] = q
        return cont, _joint_clear(prim)

    ca, pa = content_prim(a)
    cb, pb = content_prim(b)
    cg = poly_gcd(ca, cb)

    def prim_norm(p):
        if not p:
            return p
        # divide by the gcd of all coefficients (a polynomial content)
        cont = LaurentPoly.zero(a.vars[:i] + a.vars[i + 1 :])
        for c in p.values():
            cont = poly_gcd(cont, c)
        if cont.is_one():
            return p
        out = {e: exact_div(c, cont) for e, c in p.items()}
        return _joint_clear(out)

    def pseudo_rem(pa, pb):
        pa = dict(pa)
        db = max(pb)
        lb = pb[db]
        while pa and max(pa) >= db:
            da = max(pa)
            la = pa[da]
            new = {}
            for e, c in pa.items():
                new[e] = c * lb
            for e, c in pb.items():
                key = e + da - db
                s = new.get(key, LaurentPoly.zero(la.vars)) - la * c
                new[key] = s
            pa = {e: c for e, c in new.items() if not c.is_zero()}
        return pa

    while pb:
        pa, pb = pb, prim_norm(pseudo_rem(pa, pb))
    g_main = pa
    rest = a.vars[:i] + a.vars[i + 1 :]
    result = LaurentPoly.zero(a.vars)
    for e, c in g_main.items():
        lifted = c.extend_vars(a.vars)
        mono = [0] * nv
        mono[i] = e
        result = result + lifted * LaurentPoly(a.vars, {tuple(mono): 1}, d)
    cgl = cg.extend_vars(a.vars)
    return _clear_fractions(result * cgl)


class RationalFn:
    __slots__ = ("num", "den")

    def __init__(self, num: LaurentPoly, den: LaurentPoly, canonical=False):
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if num.vars != den.vars:
            raise ValueError("variable lists differ")
        if canonical:
            self.num, self.den = num, den
        else:
            self.num, self.den = _canonicalize(num, den)

    @classmethod
    def from_poly(cls, p: LaurentPoly):
        return cls(p, LaurentPoly.one(p.vars))

    @classmethod
    def const(cls, vars, c):
        return cls.from_poly(LaurentPoly.const(vars, c))

    @property
    def vars(self):
        return self.num.vars

    def is_zero(self):
        return self.num.is_zero()

    def is_poly(self):
        return self.den.is_one()

    def __eq__(self, other):
        if not isinstance(other, RationalFn):
            if isinstance(other, LaurentPoly):
                other = RationalFn.from_poly(other)
            else:
                return self.is_poly() and self.num == other
        if self.vars != other.vars:
            return False
        if self.num == other.num and self.den == other.den:
            return True
        return self.num * other.den == other.num * self.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        if self.is_poly():
            return f"RationalFn({self.num!s})"
        return f"RationalFn(({self.num!s}) / ({self.den!s}))"

    def __add__(self, other):
        other = self._coerce(other)
        return RationalFn(
            self.num * other.den + other.num * self.den, self.den * other.den
        )

    __radd__ = __add__

    def __neg__(self):
        return RationalFn(-self.num, self.den, canonical=True)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        return RationalFn(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other.num.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RationalFn(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __pow__(self, n):
        if n == 0:
            return RationalFn.const(self.vars, 1)
        if n < 0:
            return RationalFn(self.den, self.num) ** (-n)
        return RationalFn(self.num**n, self.den**n)

    def _coerce(self, other):
        if isinstance(other, RationalFn):
            return other
        if isinstance(other, LaurentPoly):
            return RationalFn.from_poly(other)
        return RationalFn.const(self.vars, other)

    def substitute(self, name, value):
        num = self.num.substitute(name, value)
        den = self.den.substitute(name, value)
        if isinstance(num, LaurentPoly):
            return RationalFn(num, den)
        return Fraction(num) / Fraction(den)

    def evaluate(self, values):
        return Fraction(self.num.evaluate(values)) / Fraction(
            self.den.evaluate(values)
        )

    def derivative(self, name):
        n = self.num.derivative(name) * self.den - self.num * self.den.derivative(name)
        return RationalFn(n, self.den * self.den)

    def to_json(self):
        return {"num": self.num.to_json_terms(), "den": self.den.to_json_terms(),
                "vars": list(self.vars)}


def _canonicalize(num: LaurentPoly, den: LaurentPoly):
    vars = num.vars
    if num.is_zero():
        return LaurentPoly.zero(vars), LaurentPoly.one(vars)
    num = _clear_fractions(num.reduced())
    den = _clear_fractions(den.reduced())
    d = lcm(num.den, den.den)
    num, den = num.with_den(d), den.with_den(d)
    # push Laurent units out: make all exponents nonnegative, then strip the
    # common monomial so the pair is monomial-free
    mins = tuple(
        min(a, b) for a, b in zip(num.min_exponents(), den.min_exponents())
    )
    num = num.shift_exponents(tuple(-x for x in mins))
    den = den.shift_exponents(tuple(-x for x in mins))
    if len(num.terms) + len(den.terms) <= GCD_TERM_LIMIT and not den.is_one():
        g = poly_gcd(num, den)
        if not g.is_one() and len(g.terms) > 0 and not g.is_constant():
            qn = exact_div(num, g)
            qd = exact_div(den, g)
            if qn is not None and qd is not None:
                num, den = _clear_fractions(qn), _clear_fractions(qd)
    # denominator must have no negative exponents (numerator keeps units)
    dmins = den.min_exponents()
    shift = tuple(-min(0, x) for x in dmins)
    if any(shift):
        num = num.shift_exponents(shift)
        den = den.shift_exponents(shift)
    # strip content
    cn = num.content()
    cd = den.content()
    g = Fraction(
        int_gcd(cn.numerator * cd.denominator, cd.numerator * cn.denominator),
        cn.denominator * cd.denominator,
    )
    if g != 1:
        num = num.map_coeffs(lambda x: int(Fraction(x) / g))
        den = den.map_coeffs(lambda x: int(Fraction(x) / g))
    # sign: graded-lex leading coefficient of the denominator positive
    _, lead = den.grlex_leading()
    if lead < 0:
        num, den = -num, -den
    return num.reduced(), den.reduced()


def rational_normalize(num: LaurentPoly, den: LaurentPoly) -> RationalFn:
    """Public canonicalizing constructor."""
    return RationalFn(num, den)
