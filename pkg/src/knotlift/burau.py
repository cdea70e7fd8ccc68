"""Burau representations, Alexander polynomials, symmetric-power traces and
the residue identity relating the unreduced and reduced determinants."""

from __future__ import annotations

from fractions import Fraction

from .algebra.laurent import LaurentPoly, exact_div
from .algebra.rational import RationalFn
from .algebra.series import TruncSeries
from .braid import BraidWord, closure_is_knot

TVARS = ("t",)


def _t(num, den=1):
    return LaurentPoly.var(TVARS, "t", num, den)


def _mat_mul(A, B):
    n, m, p = len(A), len(B), len(B[0])
    out = [[LaurentPoly.zero(TVARS) for _ in range(p)] for _ in range(n)]
    for i in range(n):
        for k in range(m):
            a = A[i][k]
            if a.is_zero():
                continue
            for j in range(p):
                b = B[k][j]
                if not b.is_zero():
                    out[i][j] = out[i][j] + a * b
    return out


def _identity(n):
    return [
        [LaurentPoly.one(TVARS) if i == j else LaurentPoly.zero(TVARS) for j in range(n)]
        for i in range(n)
    ]


def burau_rep(word: BraidWord):
    """Unreduced Burau matrix of the braid word (product in word order)."""
    r = word.strands
    one = LaurentPoly.one(TVARS)
    zero = LaurentPoly.zero(TVARS)
    th = _t(1, 2)  # t^(1/2)
    thm = _t(-1, 2)
    mat = _identity(r)
    for j, sign in word.letters:
        block = _identity(r)
        if sign > 0:
            block[j - 1][j - 1] = one - _t(-1)
            block[j - 1][j] = thm
            block[j][j - 1] = thm
            block[j][j] = zero
        else:
            block[j - 1][j - 1] = zero
            block[j - 1][j] = th
            block[j][j - 1] = th
            block[j][j] = one - _t(1)
        mat = _mat_mul(mat, block)
    return mat


def trimmed(mat):
    """Delete the first row and column."""
    return [row[1:] for row in mat[1:]]


def reduced(word: BraidWord):
    """Reduced Burau: the action induced on U_r modulo the invariant vector
    w = (t^(-(j-1)/2))_j of the unreduced representation."""
    mat = burau_rep(word)
    r = word.strands
    out = []
    for i in range(1, r):
        row = []
        wi = _t(-i, 2)
        for j in range(1, r):
            row.append(mat[i][j] - mat[0][j] * wi)
        out.append(row)
    return out


def det(mat):
    """Exact determinant by cofactor expansion (small matrices)."""
    n = len(mat)
    if n == 0:
        return LaurentPoly.one(TVARS)
    if n == 1:
        return mat[0][0]
    total = LaurentPoly.zero(mat[0][0].vars)
    for j in range(n):
        a = mat[0][j]
        if a.is_zero():
            continue
        minor = [row[:j] + row[j + 1 :] for row in mat[1:]]
        cof = det(minor)
        term = a * cof
        total = total + (term if j % 2 == 0 else -term)
    return total


def _i_minus(mat):
    n = len(mat)
    out = [[-x for x in row] for row in mat]
    for i in range(n):
        out[i][i] = out[i][i] + 1
    return out


class AlexanderError(ArithmeticError):
    pass


def alexander(word: BraidWord, route: str = "trim") -> LaurentPoly:
    """Alexander polynomial, symmetric with Delta(1) = 1.

    route 'trim' uses det(I - trimmed Burau) = t^((r-1-writhe)/2) Delta(t);
    route 'reduced' clears the extra (1 - t^r)/(1 - t) factor first.
    """
    if not closure_is_knot(word):
        raise AlexanderError("closure is not a knot")
    r, w = word.strands, word.writhe
    if route == "trim":
        d = det(_i_minus(trimmed(burau_rep(word))))
        d = d * _t(-(r - 1 - w), 2)
    elif route == "reduced":
        d = det(_i_minus(reduced(word)))
        d = d * _t(r - 1 + w, 2)
        cyclo = LaurentPoly(TVARS, {(i,): 1 for i in range(r)})  # 1 + t + ... + t^(r-1)
        q = exact_div(d, cyclo)
        if q is None:
            raise AlexanderError("reduced determinant missing the cyclotomic factor")
        d = q
    else:
        raise ValueError("route must be 'trim' or 'reduced'")
    return _normalize_alexander(d)


def _normalize_alexander(d: LaurentPoly) -> LaurentPoly:
    d = d.reduced()
    if d.is_zero():
        raise AlexanderError("vanishing determinant")
    if d.den != 1:
        # a leftover fractional power means the word was not a knot closure
        exps = sorted(m[0] for m in d.terms)
        if (exps[0] + exps[-1]) % 2:
            raise AlexanderError("asymmetric exponent span; normalization impossible")
        d = d.shift_exponents((-(exps[0] + exps[-1]) // 2,)).reduced()
        if d.den != 1:
            raise AlexanderError("fractional exponents persist; not a knot")
    exps = sorted(m[0] for m in d.terms)
    lo, hi = exps[0], exps[-1]
    if (lo + hi) % 2:
        raise AlexanderError("asymmetric exponent span; normalization impossible")
    d = d.shift_exponents((-(lo + hi) // 2,))
    at1 = d.evaluate({"t": Fraction(1)})
    if at1 == -1:
        d = -d
    elif at1 != 1:
        raise AlexanderError(f"Delta(1) = {at1}; normalization impossible")
    mirror = LaurentPoly(TVARS, {(-m[0],): c for m, c in d.terms.items()}, d.den)
    if mirror != d:
        raise AlexanderError("polynomial is not symmetric; not a knot closure")
    return d


def symmetric_power_trace(mat, power: int):
    """Trace of the power-th symmetric power, via the monomial basis action
    x_j -> sum_i mat[i][j] x_i."""
    n = len(mat)
    if power == 0:
        return LaurentPoly.one(mat[0][0].vars) if n else 1
    vars_ = mat[0][0].vars

    def monomials(total, slots):
        if slots == 1:
            yield (total,)
            return
        for v in range(total + 1):
            for rest in monomials(total - v, slots - 1):
                yield (v,) + rest

    basis = list(monomials(power, n))
    total = LaurentPoly.zero(vars_)
    for mono in basis:
        # expand prod_j (sum_i mat[i][j] x_i)^mono_j and take the mono coefficient
        poly = {(0,) * n: LaurentPoly.one(vars_)}
        for j in range(n):
            for _ in range(mono[j]):
                new = {}
                for mx, c in poly.items():
                    for i in range(n):
                        a = mat[i][j]
                        if a.is_zero():
                            continue
                        key = tuple(
                            x + (1 if idx == i else 0) for idx, x in enumerate(mx)
                        )
                        if sum(key) > power:
                            continue
                        v = c * a
                        cur = new.get(key)
                        new[key] = v if cur is None else cur + v
                poly = new
        c = poly.get(mono)
        if c is not None:
            total = total + c
    return total


def macmahon_check(mat, order: int) -> bool:
    """1/det(I - y*mat) = sum_l y^l Tr Sym^l(mat) through y^order."""
    n = len(mat)
    vars_ = mat[0][0].vars
    one = LaurentPoly.one(vars_)
    zero = LaurentPoly.zero(vars_)
    # det(I - y M) as a polynomial in y: compute over series in y
    ident = TruncSeries.const(order, one, zero)
    ymat = [
        [TruncSeries(order, [zero, -mat[i][j]], zero) for j in range(n)]
        for i in range(n)
    ]
    for i in range(n):
        ymat[i][i] = ymat[i][i] + ident
    dser = _series_det(ymat, order, one, zero)
    inv = dser.inverse(one)
    for el in range(order + 1):
        lhs = inv[el]
        rhs = symmetric_power_trace(mat, el)
        if not isinstance(rhs, LaurentPoly):
            rhs = LaurentPoly.const(vars_, rhs)
        if lhs != rhs:
            return False
    return True


def _series_det(mat, order, one, zero):
    """Determinant of a matrix of TruncSeries by cofactor expansion."""
    n = len(mat)
    if n == 1:
        return mat[0][0]
    total = TruncSeries.const(order, zero, zero)
    for j in range(n):
        minor = [row[:j] + row[j + 1 :] for row in mat[1:]]
        cof = _series_det(minor, order, one, zero)
        term = mat[0][j] * cof
        total = total + (term if j % 2 == 0 else -term)
    return total


def residue_identity_check(word: BraidWord) -> bool:
    """-Res_{y=1} det(I - y Burau)^{-1} dy  ==  det(I - reduced Burau)^{-1}.

    The residue is computed algebraically: det(I - y B) = (1 - y) E(y) by
    exact division, then Res = -1/E(1)."""
    if not closure_is_knot(word):
        raise AlexanderError("closure is not a knot")
    full = burau_rep(word)
    r = word.strands
    # det(I - y*full) as polynomial in y over Laurent(t^(1/2))
    yvars = ("y", "t")

    def lift(p, ydeg):
        return LaurentPoly(
            yvars, {(ydeg * p.den, *m): c for m, c in p.terms.items()}, p.den
        )

    mat = [
        [
            lift(-full[i][j], 1) + (lift(LaurentPoly.one(TVARS), 0) if i == j else 0)
            for j in range(r)
        ]
        for i in range(r)
    ]
    dpoly = det(mat)
    one_minus_y = LaurentPoly(yvars, {(0, 0): 1, (1, 0): -1})
    e = exact_div(dpoly, one_minus_y)
    if e is None:
        return False  # no simple (1-y) factor
    e1 = e.substitute("y", LaurentPoly.one(TVARS))
    if e1.is_zero():
        raise AlexanderError("pole at y=1 is not simple")
    red = det(_i_minus(reduced(word)))
    return e1.reduced() == red.reduced()
