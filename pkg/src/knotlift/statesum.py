"""Exact evaluation of the colored Jones state sum and its x-deformation.

The colored Jones evaluator sweeps the braid bottom to top, summing over
admissible edge labels; per-crossing weights are the R-matrix entries (the
q^(+-n^2/4) prefactors cancel against the writhe and are omitted), times
t^(-sign/2) bookkeeping, with t = q^(n-1).  Weights are Laurent polynomials
in q^(1/4) packed into big integers: one signed 64-bit digit per exponent
slot, so polynomial multiplication is integer multiplication.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .algebra.cyclotomic import CycInt
from .algebra.laurent import LaurentPoly
from .algebra.series import TruncMSeries
from .braid import BraidWord, StateSumData, statesum_data

_B = 64
_MASK = (1 << _B) - 1
_HALF = 1 << (_B - 1)


class _Packed:
    """Laurent polynomial in q^(1/4): digits of a big integer."""

    __slots__ = ("val", "off", "mass")

    def __init__(self, val, off, mass):
        self.val = val
        self.off = off
        self.mass = mass

    @classmethod
    def monomial(cls, e4, coeff=1):
        return cls(coeff if coeff >= 0 else coeff, e4, abs(coeff))

    @classmethod
    def from_terms(cls, terms):
        """terms: dict quarter-exponent -> int coefficient."""
        if not terms:
            return cls(0, 0, 0)
        off = min(terms)
        val = 0
        mass = 0
        for e, c in terms.items():
            val += c << (_B * (e - off))
            mass += abs(c)
        return cls(val, off, mass)

    def __mul__(self, other):
        mass = self.mass * other.mass
        if mass >= _HALF:
            raise OverflowError("packed coefficient mass overflow")
        return _Packed(self.val * other.val, self.off + other.off, mass)

    def __add__(self, other):
        if self.val == 0:
            return other
        if other.val == 0:
            return self
        off = min(self.off, other.off)
        val = (self.val << (_B * (self.off - off))) + (
            other.val << (_B * (other.off - off))
        )
        mass = self.mass + other.mass
        if mass >= _HALF:
            raise OverflowError("packed coefficient mass overflow")
        return _Packed(val, off, mass)

    def to_terms(self):
        out = {}
        val, e = self.val, self.off
        neg = val < 0
        if neg:
            # decode -val and flip signs
            val = -val
        while val:
            d = val & _MASK
            if d >= _HALF:
                d -= 1 << _B
                val += 1 << _B
            if d:
                out[e] = -d if neg else d
            val >>= _B
            e += 1
        return out


_ZERO = _Packed(0, 0, 0)


def _one_minus_qpow4(e4):
    """1 - q^(e4/4), packed; the zero polynomial when e4 == 0."""
    if e4 == 0:
        return _ZERO
    return _Packed.from_terms({0: 1, e4: -1})


@lru_cache(maxsize=None)
def qbinom_poly(a: int, k: int):
    """Gaussian binomial [a, k]_q as a dict exponent -> int; the truncated
    convention: zero unless 0 <= k <= a."""
    if k < 0 or a < 0 or k > a:
        return {}
    if k == 0 or k == a:
        return {0: 1}
    # Pascal: [a,k] = [a-1,k-1] + q^k [a-1,k]
    left = qbinom_poly(a - 1, k - 1)
    right = qbinom_poly(a - 1, k)
    out = dict(left)
    for e, c in right.items():
        out[e + k] = out.get(e + k, 0) + c
    return {e: c for e, c in out.items() if c}


@lru_cache(maxsize=None)
def _qbinom_packed(a, k):
    return _Packed.from_terms({4 * e: c for e, c in qbinom_poly(a, k).items()})


@lru_cache(maxsize=None)
def _poch_packed(b, k, n):
    """(q^-b t; q^-1)_k = prod_{s<k} (1 - q^(n-1-b-s)) at t = q^(n-1), packed."""
    acc = _Packed.from_terms({0: 1})
    for s in range(k):
        acc = acc * _one_minus_qpow4(4 * (n - 1 - b - s))
    return acc


@lru_cache(maxsize=None)
def _crossing_weight(sign, a, b, k, n):
    """Per-crossing weight of the label sweep (no q^(+-n^2/4) prefactor)."""
    if sign > 0:
        e4 = 4 * a * b + 2 * k * k - 2 * k - 2 * (n - 1) * k - 2 * (n - 1) * (a + b + 1)
        sgn = -1 if k % 2 else 1
    else:
        e4 = -4 * (a - k) * (b + k) - 2 * (n - 1) * k + 2 * (n - 1) * (a + b + 1)
        sgn = 1
    w = _Packed.monomial(e4, sgn) * _qbinom_packed(a, k)
    return w * _poch_packed(b, k, n)


def _sweep(word: BraidWord, n: int, init_labels):
    """Sum of weight products over label states starting from init_labels,
    returning dict final-labels -> packed weight."""
    states = {tuple(init_labels): _Packed.from_terms({0: 1})}
    for j, sign in word.letters:
        new_states = {}
        for labels, weight in states.items():
            left, right = labels[j - 1], labels[j]
            a, b = (left, right) if sign > 0 else (right, left)
            kmax = min(a, n - 1 - b)
            for k in range(kmax + 1):
                w = _crossing_weight(sign, a, b, k, n)
                if w.val == 0:
                    continue
                if sign > 0:
                    nl, nr = right + k, left - k
                else:
                    nl, nr = right - k, left + k
                if nl < 0 or nr < 0 or nl >= n or nr >= n:
                    continue
                nt = list(labels)
                nt[j - 1], nt[j] = nl, nr
                key = tuple(nt)
                acc = new_states.get(key)
                piece = weight * w
                new_states[key] = piece if acc is None else acc + piece
        states = new_states
    return states


def _closure_values(word: BraidWord, n: int, chunks=1):
    """Packed contributions q^(-sum u) * diag weight, split deterministically."""
    from itertools import product

    r = word.strands
    all_u = sorted(product(range(n), repeat=r - 1))
    size = (len(all_u) + chunks - 1) // chunks
    parts = []
    for c in range(chunks):
        total = _ZERO
        for u in all_u[c * size : (c + 1) * size]:
            init = (0,) + u
            final = _sweep(word, n, init)
            w = final.get(init)
            if w is None or w.val == 0:
                continue
            total = total + _Packed.monomial(-4 * sum(u)) * w
        parts.append(total)
    total = _ZERO
    for p in parts:
        total = total + p
    return total


class StateSumError(ArithmeticError):
    pass


def colored_jones(data: StateSumData, n: int, threads: int = 1) -> LaurentPoly:
    """J_{K,n}(q) in Z[q^(+-1)], normalized to 1 on the unknot."""
    if n < 1:
        raise ValueError("color must be >= 1")
    word = data.word
    total = _closure_values(word, n, chunks=max(1, threads))
    # global prefactor t^((r-1)/2) with t = q^(n-1); the per-crossing weights
    # already carry the t^(-sign/2) factors that assemble the writhe shift
    pref4 = 2 * (n - 1) * (data.strands - 1)
    total = total * _Packed.monomial(pref4)
    terms = total.to_terms()
    out = {}
    for e4, c in terms.items():
        if e4 % 4:
            raise StateSumError("fractional q-exponent survived assembly")
        out[(e4 // 4,)] = c
    return LaurentPoly(("q",), out)


def colored_jones_direct(
    data: StateSumData, n: int, box_hi: int | None = None
) -> LaurentPoly:
    """Direct summation over the k-box (slow reference path).

    box_hi is the inclusive upper bound of each k_i; default n-1.
    """
    from itertools import product

    if box_hi is None:
        box_hi = n - 1
    N = data.n_crossings
    acols = [data.binom_form(i) for i in range(N)]
    bcols = [data.poch_form(i) for i in range(N)]
    total = _ZERO
    for k in product(range(box_hi + 1), repeat=N):
        e4 = 2 * data.quad_value(k) - 4 * sum(
            c * x for c, x in zip(data.closure, k)
        )
        w = _Packed.monomial(e4)
        dead = False
        for i in range(N):
            a = acols[i].eval(k)
            b = bcols[i].eval(k)
            ki = k[i]
            sign = data.signs[i]
            if sign > 0:
                f4 = -2 * ki - 2 * (n - 1) * ki - 2 * (n - 1) * (a + b + 1)
                sgn = -1 if ki % 2 else 1
            else:
                f4 = -2 * (n - 1) * ki + 2 * (n - 1) * (a + b + 1)
                sgn = 1
            piece = _Packed.monomial(f4, sgn) * _qbinom_packed(a, ki)
            acc = _Packed.from_terms({0: 1})
            for s in range(ki):
                acc = acc * _one_minus_qpow4(4 * (n - 1 - b - s))
            piece = piece * acc
            if piece.val == 0:
                dead = True
                break
            w = w * piece
        if dead:
            continue
        total = total + w
    pref4 = 2 * (n - 1) * (data.strands - 1)
    total = total * _Packed.monomial(pref4)
    out = {}
    for e4, c in total.to_terms().items():
        if e4 % 4:
            raise StateSumError("fractional q-exponent survived assembly")
        out[(e4 // 4,)] = c
    return LaurentPoly(("q",), out)


def rmatrix_entry(sign: int, i: int, j: int, k: int, n: int) -> LaurentPoly:
    """Single R-matrix entry for the n-dimensional color, t = q^(n-1),
    including the q^(+-n^2/4) prefactor; Laurent polynomial in q^(1/4)."""
    if not (0 <= i <= n - 1 and 0 <= j <= n - 1):
        raise ValueError("basis indices out of range")
    qv = ("q",)
    zero = LaurentPoly.zero(qv)
    if k < 0:
        return zero
    t_exp = n - 1  # t = q^(n-1)

    def qpow4(e4):
        return LaurentPoly(qv, {(e4,): 1}, 4)

    if sign > 0:
        if k > i:
            return zero
        # (-1)^k q^(ij + k(k-1)/2) t^(-(i+j+k)/2) [i,k]_q (q^-j t; q^-1)_k
        e4 = n * n + 4 * i * j + 2 * k * (k - 1) - 2 * t_exp * (i + j + k)
        coeff = -1 if k % 2 else 1
        out = qpow4(e4) * coeff
        binom = qbinom_poly(i, k)
        out = out * LaurentPoly(qv, {(4 * e,): c for e, c in binom.items()}, 4)
        for s in range(k):
            e4 = 4 * (t_exp - j - s)
            fac = LaurentPoly.zero(qv) if e4 == 0 else LaurentPoly(
                qv, {(0,): 1, (e4,): -1}, 4)
            out = out * fac
        return out.reduced()
    if k > j:
        return zero
    e4 = -n * n - 4 * (i + k) * (j - k) + 2 * t_exp * (i + j - k)
    out = qpow4(e4)
    binom = qbinom_poly(j, k)
    out = out * LaurentPoly(qv, {(4 * e,): c for e, c in binom.items()}, 4)
    for s in range(k):
        e4 = 4 * (t_exp - i - s)
        fac = LaurentPoly.zero(qv) if e4 == 0 else LaurentPoly(
            qv, {(0,): 1, (e4,): -1}, 4)
        out = out * fac
    return out.reduced()


def summand_exponent(data: StateSumData, k) -> Fraction:
    """Total q-exponent of the monomial prefactor of the multisum summand."""
    e = Fraction(data.quad_value(k), 2) - sum(
        c * x for c, x in zip(data.closure, k)
    )
    for i, ki in enumerate(k):
        e += Fraction(ki * (-data.signs[i] - 1), 4)
    return e


def deformed_multisum(
    data: StateSumData, x_degree: int, root_order: int | None = None
) -> TruncMSeries:
    """x-deformed multisum truncated at total x-degree x_degree.

    Coefficient of x^k is the exact summand: a Laurent polynomial in t^(1/2)
    and q (root_order None), or in t^(1/2) with coefficients in Z[zeta_m]
    (root_order m).  The x=0 coefficient is t^((r-1-writhe)/2).
    """
    from itertools import product as iproduct

    N = data.n_crossings
    acols = [data.binom_form(i) for i in range(N)]
    bcols = [data.poch_form(i) for i in range(N)]
    xvars = tuple(f"x{i+1}" for i in range(N))
    terms = {}
    for k in _degree_box(N, x_degree):
        coeff = _summand_tq(data, k, acols, bcols, root_order)
        if coeff is not None and not coeff.is_zero():
            terms[k] = coeff
    return TruncMSeries(xvars, x_degree, terms)


def _degree_box(N, L):
    def rec(prefix, remaining, slots):
        if slots == 0:
            yield tuple(prefix)
            return
        for v in range(remaining + 1):
            yield from rec(prefix + [v], remaining - v, slots - 1)

    yield from rec([], L, N)


def _summand_tq(data: StateSumData, k, acols, bcols, root_order):
    """Exact multisum summand as a Laurent polynomial in (t[, q])."""
    m = root_order
    if m is None:
        vars = ("q", "t")

        def qmono(qe4, te2):
            return LaurentPoly(vars, {(qe4, 2 * te2): 1}, 4)
    else:
        vars = ("t",)

        def qmono(qe4, te2):
            if qe4 % 4:
                raise StateSumError("fractional q-exponent at a root of unity")
            z = CycInt.zeta_power(m, (qe4 // 4) % m)
            return LaurentPoly(vars, {(2 * te2,): z}, 4)

    e = summand_exponent(data, k)
    e4 = int(4 * e)
    if e4 % 4:
        raise StateSumError("total q-exponent is not an integer")
    N = data.n_crossings
    # t-exponent in half units: r-1 plus per-crossing contributions
    te2_const = data.strands - 1
    total = None
    sgn = 1
    te2 = te2_const
    for i in range(N):
        ki = k[i]
        a = acols[i].eval(k)
        b = bcols[i].eval(k)
        s = data.signs[i]
        if s > 0 and ki % 2:
            sgn = -sgn
        te2 += -ki - s * (a + b + 1)
        binom = qbinom_poly(a, ki)
        if not binom:
            return None
        if m is None:
            piece = LaurentPoly(vars, {(4 * e_, 0): c for e_, c in binom.items()}, 4)
        else:
            val = CycInt.zero(m)
            for e_, c in binom.items():
                val = val + CycInt.zeta_power(m, e_ % m) * c
            if val.is_zero():
                return None
            piece = LaurentPoly(vars, {(0,): val}, 4)
        for sidx in range(ki):
            # 1 - q^(-b - sidx) t
            if m is None:
                factor = LaurentPoly(vars, {(0, 0): 1, (-4 * (b + sidx), 4): -1}, 4)
            else:
                z = CycInt.zeta_power(m, (-(b + sidx)) % m)
                factor = LaurentPoly(vars, {(0,): 1, (4,): -z}, 4)
            piece = piece * factor
        total = piece if total is None else total * piece
        if total.is_zero():
            return None
    mono = qmono(e4, te2)
    out = mono * sgn
    if total is not None:
        out = out * total
    return out.reduced()


def make_statesum(word_or_data) -> StateSumData:
    if isinstance(word_or_data, StateSumData):
        return word_or_data
    return statesum_data(word_or_data)
