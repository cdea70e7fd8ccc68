"""Multivariate Laurent polynomials with fractional exponents.

Exponents are stored as integers scaled by a per-polynomial denominator,
so t^(1/2) is the exponent 1 with denominator 2.  Coefficients are exact:
Python ints, Fractions, or any ring element supporting +, -, *, ==, bool.
All values are immutable; every operation returns a new polynomial.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm


class LaurentPoly:
    __slots__ = ("vars", "den", "terms")

    def __init__(self, vars, terms, den=1):
        if den < 1:
            raise ValueError("exponent denominator must be >= 1")
        self.vars = tuple(vars)
        self.den = den
        clean = {}
        for mono, c in terms.items():
            if len(mono) != len(self.vars):
                raise ValueError("exponent tuple length mismatch")
            if c:
                clean[tuple(mono)] = c
        self.terms = clean

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, vars):
        return cls(vars, {})

    @classmethod
    def const(cls, vars, c):
        vars = tuple(vars)
        if not c:
            return cls(vars, {})
        return cls(vars, {(0,) * len(vars): c})

    @classmethod
    def one(cls, vars):
        return cls.const(vars, 1)

    @classmethod
    def var(cls, vars, name, num=1, den=1):
        """The monomial name^(num/den) over the given variable list."""
        vars = tuple(vars)
        i = vars.index(name)
        mono = [0] * len(vars)
        mono[i] = num
        return cls(vars, {tuple(mono): 1}, den)

    @classmethod
    def monomial(cls, vars, exps, coeff=1, den=1):
        return cls(vars, {tuple(exps): coeff}, den)

    # -- basic structure ----------------------------------------------

    def is_zero(self):
        return not self.terms

    def is_one(self):
        return self.terms == {(0,) * len(self.vars): 1}

    def is_constant(self):
        return all(all(e == 0 for e in m) for m in self.terms)

    def constant_coeff(self):
        return self.terms.get((0,) * len(self.vars), 0)

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def _norm_key(self):
        """Canonical (den, terms) pair with the exponent gcd reduced."""
        if not self.terms:
            return 1, ()
        g = self.den
        for mono in self.terms:
            for e in mono:
                if e:
                    g = gcd(g, abs(e))
            if g == 1:
                break
        if g == 1 and self.den == 1:
            items = self.terms
        else:
            items = {tuple(e // g for e in m): c for m, c in self.terms.items()}
        return self.den // g, tuple(sorted(items.items(), key=lambda kv: kv[0]))

    def __eq__(self, other):
        if not isinstance(other, LaurentPoly):
            if other == 0:
                return self.is_zero()
            return self.is_constant() and self.constant_coeff() == other
        if self.vars != other.vars:
            return False
        return self._norm_key() == other._norm_key()

    def __hash__(self):
        d, items = self._norm_key()
        return hash((self.vars, d, items))

    def __repr__(self):
        return f"LaurentPoly({self!s})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for mono, c in sorted(self.terms.items()):
            factors = []
            for name, e in zip(self.vars, mono):
                if e == 0:
                    continue
                if e % self.den == 0:
                    ex = e // self.den
                    factors.append(name if ex == 1 else f"{name}^{ex}")
                else:
                    factors.append(f"{name}^({e}/{self.den})")
            body = "*".join(factors)
            if not body:
                parts.append(str(c))
            elif c == 1:
                parts.append(body)
            elif c == -1:
                parts.append(f"-{body}")
            else:
                parts.append(f"{c}*{body}")
        return " + ".join(parts).replace("+ -", "- ")

    # -- denominator alignment ----------------------------------------

    def with_den(self, den):
        if den == self.den:
            return self
        if den % self.den:
            raise ValueError("new denominator must be a multiple")
        f = den // self.den
        return LaurentPoly(
            self.vars, {tuple(e * f for e in m): c for m, c in self.terms.items()}, den
        )

    def reduced(self):
        d, items = self._norm_key()
        return LaurentPoly(self.vars, dict(items), d)

    def _aligned(self, other):
        if self.vars != other.vars:
            raise ValueError(f"variable lists differ: {self.vars} vs {other.vars}")
        d = lcm(self.den, other.den)
        return self.with_den(d), other.with_den(d), d

    # -- arithmetic ----------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, LaurentPoly):
            other = LaurentPoly.const(self.vars, other)
        a, b, d = self._aligned(other)
        out = dict(a.terms)
        for m, c in b.terms.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return LaurentPoly(self.vars, out, d)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly(self.vars, {m: -c for m, c in self.terms.items()}, self.den)

    def __sub__(self, other):
        if not isinstance(other, LaurentPoly):
            other = LaurentPoly.const(self.vars, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, LaurentPoly):
            if not other:
                return LaurentPoly.zero(self.vars)
            return LaurentPoly(
                self.vars, {m: c * other for m, c in self.terms.items()}, self.den
            )
        a, b, d = self._aligned(other)
        if len(a.terms) > len(b.terms):
            a, b = b, a
        out = {}
        bt = b.terms
        for m1, c1 in a.terms.items():
            for m2, c2 in bt.items():
                m = tuple(x + y for x, y in zip(m1, m2))
                s = out.get(m, 0) + c1 * c2
                if s:
                    out[m] = s
                else:
                    del out[m]
        return LaurentPoly(self.vars, out, d)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            inv = self.monomial_inverse()
            return inv ** (-n)
        result = LaurentPoly.one(self.vars).with_den(self.den)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def monomial_inverse(self):
        """Inverse, defined only when the polynomial is a single term."""
        if len(self.terms) != 1:
            raise ValueError("only monomials are invertible")
        (mono, c), = self.terms.items()
        if c == 1:
            inv = 1
        elif c == -1:
            inv = -1
        else:
            inv = Fraction(1, 1) / c
        return LaurentPoly(self.vars, {tuple(-e for e in mono): inv}, self.den)

    # -- queries and transforms -----------------------------------------

    def coeff(self, exps, den=1):
        d = lcm(self.den, den)
        key = tuple(e * (d // den) for e in exps)
        return self.with_den(d).terms.get(key, 0)

    def degree_range(self, name):
        """(min, max) exponent of a variable as Fractions, or None if absent."""
        i = self.vars.index(name)
        es = [m[i] for m in self.terms]
        if not es:
            return None
        return Fraction(min(es), self.den), Fraction(max(es), self.den)

    def map_coeffs(self, f):
        return LaurentPoly(
            self.vars, {m: f(c) for m, c in self.terms.items()}, self.den
        )

    def scale_exponents(self, num, den=1):
        """Substitute every variable v by v^(num/den)."""
        d = self.den * den
        out = {tuple(e * num for e in m): c for m, c in self.terms.items()}
        return LaurentPoly(self.vars, out, d).reduced()

    def derivative(self, name):
        """Formal derivative; fractional exponents yield Fraction factors."""
        i = self.vars.index(name)
        out = {}
        for m, c in self.terms.items():
            e = m[i]
            if e == 0:
                continue
            factor = Fraction(e, self.den)
            if factor.denominator == 1:
                factor = int(factor)
            m2 = list(m)
            m2[i] = e - self.den
            key = tuple(m2)
            s = out.get(key, 0) + c * factor
            if s:
                out[key] = s
            else:
                out.pop(key, None)
        return LaurentPoly(self.vars, out, self.den)

    def substitute(self, name, value):
        """Replace a variable by a LaurentPoly in the remaining variables.

        Requires integer exponents of the substituted variable unless the
        value is itself a monomial.
        """
        i = self.vars.index(name)
        rest = self.vars[:i] + self.vars[i + 1 :]
        if isinstance(value, LaurentPoly) and len(value.terms) == 1:
            (vm, vc), = value.terms.items()
            out = LaurentPoly.zero(rest).with_den(self.den * value.den)
            for m, c in self.terms.items():
                e = m[i]
                base = tuple(x * value.den for x in m[:i] + m[i + 1 :])
                add = tuple(x * e for x in vm)
                mono = tuple(b + a for b, a in zip(base, add))
                if vc == 1:
                    coeff = c
                elif e % self.den == 0:
                    epow = e // self.den
                    cf = Fraction(vc) ** epow
                    coeff = c * (int(cf) if cf.denominator == 1 else cf)
                else:
                    raise ValueError("fractional power of non-unit coefficient")
                out = out + LaurentPoly(rest, {mono: coeff}, self.den * value.den)
            return out.reduced()
        result = LaurentPoly.zero(rest)
        for m, c in self.terms.items():
            e = m[i]
            if e % self.den:
                raise ValueError("fractional exponent needs a monomial substitution")
            epow = e // self.den
            if isinstance(value, LaurentPoly):
                vpow = value ** epow
            else:
                if epow < 0:
                    vf = Fraction(1, 1) * value
                    vpow = (1 / vf) ** (-epow)
                else:
                    vpow = value**epow
            term = LaurentPoly(rest, {m[:i] + m[i + 1 :]: c}, self.den)
            if isinstance(vpow, LaurentPoly):
                result = result + term * vpow
            else:
                result = result + term.map_coeffs(lambda x: x * vpow)
        return result.reduced()

    def evaluate(self, values):
        """Evaluate at a dict name -> value (Fraction arithmetic for ints)."""
        total = 0
        for m, c in self.terms.items():
            v = c
            for name, e in zip(self.vars, m):
                if e == 0:
                    continue
                x = values[name]
                if x == 1:
                    continue
                if e % self.den:
                    raise ValueError("cannot evaluate fractional exponent exactly")
                ee = e // self.den
                if ee < 0:
                    v = v * (Fraction(1, 1) / x) ** (-ee)
                else:
                    v = v * x**ee
            total = total + v
        return total

    def extend_vars(self, new_vars):
        """Reinterpret over a superset variable list (order respected)."""
        new_vars = tuple(new_vars)
        idx = [new_vars.index(v) for v in self.vars]
        out = {}
        for m, c in self.terms.items():
            mono = [0] * len(new_vars)
            for j, e in zip(idx, m):
                mono[j] = e
            out[tuple(mono)] = c
        return LaurentPoly(new_vars, out, self.den)

    # -- integer coefficient utilities ----------------------------------

    def content(self):
        """gcd of integer coefficients (clears Fractions first)."""
        if not self.terms:
            return 1
        denoms = 1
        for c in self.terms.values():
            if isinstance(c, Fraction):
                denoms = lcm(denoms, c.denominator)
        g = 0
        for c in self.terms.values():
            g = gcd(g, int(c * denoms))
        return Fraction(g, denoms)

    def primitive(self):
        """Divide by content; returns (content, primitive integer part)."""
        c = self.content()
        if c == 0:
            return Fraction(0), self
        prim = self.map_coeffs(lambda x: int(Fraction(x) / c))
        return c, prim

    def shift_exponents(self, shifts):
        """Multiply by the monomial prod v_i^shifts[i] (scaled ints)."""
        return LaurentPoly(
            self.vars,
            {tuple(e + s for e, s in zip(m, shifts)): c for m, c in self.terms.items()},
            self.den,
        )

    def min_exponents(self):
        if not self.terms:
            return (0,) * len(self.vars)
        return tuple(min(m[i] for m in self.terms) for i in range(len(self.vars)))

    def grlex_leading(self):
        """(monomial, coeff) maximal in graded-lexicographic order."""
        key = max(self.terms, key=lambda m: (sum(m), m))
        return key, self.terms[key]

    def to_json_terms(self):
        """Serialize as [[e_1, ..., e_v, den, coeff], ...], sorted."""
        out = []
        for m, c in sorted(self.terms.items()):
            if isinstance(c, Fraction) and c.denominator == 1:
                c = int(c)
            out.append(list(m) + [self.den, str(c) if isinstance(c, Fraction) else c])
        return out


def exact_div(a: LaurentPoly, b: LaurentPoly):
    """Exact division a / b of Laurent polynomials; None if not divisible.

    Works over int/Fraction coefficients with a graded-lex long division
    after clearing the Laurent units.
    """
    if b.is_zero():
        raise ZeroDivisionError("division by zero polynomial")
    if a.is_zero():
        return LaurentPoly.zero(a.vars)
    a2, b2, d = a._aligned(b)
    sa = a2.min_exponents()
    sb = b2.min_exponents()
    a2 = a2.shift_exponents(tuple(-x for x in sa))
    b2 = b2.shift_exponents(tuple(-x for x in sb))
    q = {}
    rem = dict(a2.terms)
    blead, bc = b2.grlex_leading()
    bterms = list(b2.terms.items())
    while rem:
        mono = max(rem, key=lambda m: (sum(m), m))
        c = rem[mono]
        qm = tuple(x - y for x, y in zip(mono, blead))
        if any(x < 0 for x in qm):
            return None
        qc = Fraction(c) / Fraction(bc) if not isinstance(c, Fraction) else c / bc
        if isinstance(c, int) and isinstance(bc, int) and c % bc == 0:
            qc = c // bc
        q[qm] = qc
        for bm, bcf in bterms:
            key = tuple(x + y for x, y in zip(qm, bm))
            s = rem.get(key, 0) - qc * bcf
            if s:
                rem[key] = s
            else:
                rem.pop(key, None)
    shift = tuple(x - y for x, y in zip(sa, sb))
    return LaurentPoly(a.vars, q, d).shift_exponents(shift).reduced()
