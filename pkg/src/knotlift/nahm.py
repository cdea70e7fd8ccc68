"""Nahm equations: power-series solutions, delta determinants, Lagrange
inversion checks, rational reconstruction and the knot specialization."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import comb, gcd

from .algebra.laurent import LaurentPoly, exact_div
from .algebra.rational import RationalFn, rational_normalize
from .algebra.series import TruncMSeries
from .braid import StateSumData, y_specialization_exponents


class NahmError(ArithmeticError):
    pass


class ReconstructionError(NahmError):
    pass


def yvars(n):
    return tuple(f"y{i+1}" for i in range(n))


@dataclass
class NahmSolution:
    matrix: list  # N x N integer matrix
    order: int
    series: list  # TruncMSeries z_i, constant term 1
    rational: list | None = None  # RationalFn z_i when reconstructed
    delta_series: TruncMSeries | None = None
    delta_rational: RationalFn | None = None


def binom_general(a: int, k: int) -> int:
    """Generalized binomial a(a-1)...(a-k+1)/k! for k >= 0, any integer a."""
    if k < 0:
        return 0
    num = 1
    for j in range(k):
        num *= a - j
    if num == 0:
        return 0
    f = 1
    for j in range(2, k + 1):
        f *= j
    assert num % f == 0
    return num // f


def _zpowers(zs, row, order):
    """prod_j z_j^{row[j]} as a TruncMSeries."""
    vs = zs[0].vars
    acc = TruncMSeries.const(vs, order, 1)
    for j, e in enumerate(row):
        if e == 0:
            continue
        zj = zs[j] if e > 0 else zs[j].inverse()
        for _ in range(abs(e)):
            acc = acc * zj
    return acc


def solve_nahm_series(matrix, order: int) -> NahmSolution:
    """Unique solution with z_i = 1 + y_i + O(deg 2), by fixed-point sweeps
    of z_i <- 1 + y_i prod_j z_j^(A_ij) with increasing truncation order."""
    n = len(matrix)
    vs = yvars(n)
    zs = [TruncMSeries.const(vs, 0, 1) for _ in range(n)]
    for d in range(1, order + 1):
        cur = [z.with_order(d) for z in zs]
        new = []
        for i in range(n):
            prod_ = _zpowers(cur, matrix[i], d)
            yi = TruncMSeries.gen(vs, d, i)
            new.append(TruncMSeries.const(vs, d, 1) + yi * prod_)
        zs = new
    zs = [z.with_order(order) for z in zs]
    sol = NahmSolution(matrix=matrix, order=order, series=zs)
    sol.delta_series = delta_of(matrix, zs)
    return sol


def solve_nahm_newton(matrix, order: int):
    """Independent solver: Newton iteration with a truncated Neumann inverse
    of the Jacobian; doubles the correct order each step."""
    n = len(matrix)
    vs = yvars(n)
    zs = [TruncMSeries.const(vs, order, 1) for _ in range(n)]

    def residual(zs):
        out = []
        for i in range(n):
            prod_ = _zpowers(zs, matrix[i], order)
            yi = TruncMSeries.gen(vs, order, i)
            out.append(TruncMSeries.const(vs, order, 1) - zs[i] + yi * prod_)
        return out

    steps = max(1, (order).bit_length() + 1)
    for _ in range(steps):
        F = residual(zs)
        if all(not f.terms for f in F):
            break
        # J = dF/dz = -I + H with H_ik = y_i A_ik prod z^(A_i) / z_k;
        # J^{-1} = -(I - H)^{-1} = -(I + H + H^2 + ...)
        H = [[None] * n for _ in range(n)]
        for i in range(n):
            prod_ = _zpowers(zs, matrix[i], order)
            yi = TruncMSeries.gen(vs, order, i)
            base = yi * prod_
            for k in range(n):
                if matrix[i][k]:
                    H[i][k] = base * zs[k].inverse() * matrix[i][k]
        # delta_z = (I + H + H^2 + ...) F   (H raises y-order by 1)
        acc = list(F)
        corr = list(F)
        for _ in range(order):
            nxt = [None] * n
            any_ = False
            for i in range(n):
                s = None
                for k in range(n):
                    if H[i][k] is not None and corr[k].terms:
                        piece = H[i][k] * corr[k]
                        s = piece if s is None else s + piece
                if s is not None and s.terms:
                    any_ = True
                    nxt[i] = s
                else:
                    nxt[i] = TruncMSeries.const(vs, order, 0)
            corr = nxt
            if not any_:
                break
            acc = [a + c for a, c in zip(acc, corr)]
        zs = [z + a for z, a in zip(zs, acc)]
    F = residual(zs)
    if any(f.terms for f in F):
        raise NahmError("Newton solver failed to converge")
    return zs


def principal_minors(matrix):
    """det of every principal submatrix, keyed by frozenset of indices."""
    n = len(matrix)
    out = {frozenset(): 1}
    for bits in range(1, 1 << n):
        idx = [i for i in range(n) if bits >> i & 1]
        sub = [[Fraction(matrix[i][j]) for j in idx] for i in idx]
        out[frozenset(idx)] = int(_det_fraction(sub))
    return out


def _det_fraction(mat):
    n = len(mat)
    mat = [row[:] for row in mat]
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if mat[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            mat[col], mat[piv] = mat[piv], mat[col]
            det = -det
        det *= mat[col][col]
        inv = 1 / mat[col][col]
        for r in range(col + 1, n):
            f = mat[r][col] * inv
            if f:
                mat[r] = [x - f * y for x, y in zip(mat[r], mat[col])]
    return det


def delta_of(matrix, zs) -> TruncMSeries:
    """delta = det(I + diag(1-z_i) A diag(z_j^{-1})) via the subset-minor
    expansion det(I + X) = sum_S det(A_S) prod_{i in S} (1-z_i)/z_i."""
    n = len(matrix)
    vs = zs[0].vars
    order = zs[0].order
    minors = principal_minors(matrix)
    gs = []
    for i in range(n):
        gs.append((TruncMSeries.const(vs, order, 1) - zs[i]) * zs[i].inverse())
    total = TruncMSeries.const(vs, order, 1)
    # iterate subsets, reusing products along a recursion over the last index
    cache = {frozenset(): TruncMSeries.const(vs, order, 1)}

    def subset_product(s):
        if s in cache:
            return cache[s]
        i = max(s)
        val = subset_product(s - {i}) * gs[i]
        cache[s] = val
        return val

    for s, mdet in minors.items():
        if not s or mdet == 0:
            continue
        total = total + subset_product(s) * mdet
    return total


def delta_rational(matrix, zs_rational) -> RationalFn:
    """Exact delta for rational z (cofactor determinant; small N only)."""
    n = len(matrix)
    vs = zs_rational[0].vars
    one = RationalFn.const(vs, 1)
    zero = RationalFn.const(vs, 0)
    mat = []
    for i in range(n):
        row = []
        for j in range(n):
            e = one if i == j else zero
            if matrix[i][j]:
                # X_ij = (1 - z_i) A_ij / z_j
                e = e + (one - zs_rational[i]) * matrix[i][j] / zs_rational[j]
            row.append(e)
        mat.append(row)
    return _det_rat(mat)


def _det_rat(mat):
    n = len(mat)
    if n == 1:
        return mat[0][0]
    total = None
    for j in range(n):
        a = mat[0][j]
        if a.is_zero():
            continue
        minor = [row[:j] + row[j + 1 :] for row in mat[1:]]
        term = a * _det_rat(minor)
        if j % 2:
            term = -term
        total = term if total is None else total + term
    if total is None:
        return RationalFn.const(mat[0][0].vars, 0)
    return total


def binomial_sum_series(matrix, shifts, order: int) -> TruncMSeries:
    """sum_k prod_i binom(shifts_i + (A^t k)_i, k_i) y^k, |k| <= order.

    Generalized binomial convention (nonzero for negative tops)."""
    n = len(matrix)
    vs = yvars(n)
    terms = {}
    for k in _box(n, order):
        coeff = 1
        for i in range(n):
            top = shifts[i] + sum(matrix[j][i] * k[j] for j in range(n))
            coeff *= binom_general(top, k[i])
            if coeff == 0:
                break
        if coeff:
            terms[k] = coeff
    return TruncMSeries(vs, order, terms)


def _box(n, total):
    def rec(prefix, rem, slots):
        if slots == 0:
            yield tuple(prefix)
            return
        for v in range(rem + 1):
            yield from rec(prefix + [v], rem - v, slots - 1)

    yield from rec([], total, n)


def lagrange_check(matrix, shifts, order: int, solution: NahmSolution | None = None):
    """prod z_i^(s_i) == delta(y) * binomial sum, through total degree order."""
    if solution is None or solution.order < order:
        solution = solve_nahm_series(matrix, order)
    zs = [z.truncate(order) for z in solution.series]
    lhs = _zpowers(zs, list(shifts), order)
    delta = solution.delta_series.truncate(order)
    rhs = delta * binomial_sum_series(matrix, shifts, order)
    return lhs == rhs


# -- rational reconstruction -------------------------------------------------


def _monomials_pervar(n, bound, cap=None):
    out = []
    for m in product(range(bound + 1), repeat=n):
        if cap is None or sum(m) <= cap:
            out.append(m)
    return out


def _rational_reconstruct(r, m):
    """Find n/d = r mod m with |n|, d <= sqrt(m/2); None on failure."""
    a0, a1 = m, r % m
    b0, b1 = 0, 1
    bound = int((m // 2) ** 0.5)
    while a1 > bound:
        q = a0 // a1
        a0, a1 = a1, a0 - q * a1
        b0, b1 = b1, b0 - q * b1
    if abs(b1) > bound or gcd(abs(b1), m) != 1:
        return None
    n, d = a1, b1
    if d < 0:
        n, d = -n, -d
    return Fraction(n, d)


def reconstruct_rational(
    solution: NahmSolution, max_bound: int = 4, monomial_budget: int = 4096
) -> NahmSolution:
    """Fit z_i = N_i/D_i with per-variable degree bounds 1, 2, 4, ... and
    certify the fit exactly; raises ReconstructionError when no candidate
    fits within the budget."""
    import numpy as np

    matrix = solution.matrix
    n = len(matrix)
    vs = yvars(n)
    bound = 1
    last_err = "budget exhausted"
    while bound <= max_bound:
        monos = _monomials_pervar(n, bound)
        if len(monos) > monomial_budget:
            last_err = f"monomial budget exceeded at bound {bound}"
            break
        # fit degree: enough equations for 2*len(monos)-1 unknowns
        unknowns = 2 * len(monos) - 1
        fit_deg = 1
        while _count_box(n, fit_deg) < unknowns + max(8, unknowns // 4):
            fit_deg += 1
        done = None
        for attempt in range(3):
            deg = fit_deg + attempt
            if solution.order < deg:
                solution = solve_nahm_series(matrix, deg)
            try:
                rats = _fit_all(solution, monos, deg, np)
            except ReconstructionError as exc:
                last_err = str(exc)
                break
            ok, err = _certify(matrix, rats, solution)
            if ok:
                done = rats
                break
            last_err = err
        if done is not None:
            out = NahmSolution(
                matrix=matrix,
                order=solution.order,
                series=solution.series,
                rational=done,
                delta_series=solution.delta_series,
            )
            if n <= 6:
                out.delta_rational = delta_rational(matrix, done)
            return out
        bound *= 2
    raise ReconstructionError(last_err)


def _count_box(n, total):
    return comb(total + n, n)


def _fit_all(solution, monos, fit_deg, np):
    n = len(solution.matrix)
    primes = (1073741789, 1073741783)
    mono_set = set(monos)
    out = []
    for i in range(n):
        z = solution.series[i]
        residues = []
        for p in primes:
            sol = _fit_modp(z, monos, mono_set, fit_deg, p, np)
            if sol is None:
                raise ReconstructionError(
                    f"no rational fit for z_{i+1} at this bound"
                )
            residues.append(sol)
        m = primes[0] * primes[1]
        coeffs = []
        for a, b in zip(*residues):
            # CRT
            inv = pow(primes[0], -1, primes[1])
            x = (int(a) + primes[0] * ((int(b) - int(a)) * inv % primes[1])) % m
            f = _rational_reconstruct(x, m)
            if f is None:
                raise ReconstructionError("rational reconstruction failed")
            coeffs.append(f)
        k = len(monos)
        num = {m_: c for m_, c in zip(monos, coeffs[:k]) if c}
        den = {m_: c for m_, c in zip(monos[1:], coeffs[k:]) if c}
        den[(0,) * n] = Fraction(1)
        out.append(
            rational_normalize(
                LaurentPoly(z.vars, num), LaurentPoly(z.vars, den)
            )
        )
    return out


def _fit_modp(z, monos, mono_set, fit_deg, p, np):
    """Solve N - z*D = 0 mod p with D constant term 1.

    The N unknowns are eliminated analytically: rows indexed by ansatz
    monomials simply define N once D is known, so the modular elimination
    only sees the rows outside the ansatz support.  Returns the combined
    (N coeffs, D non-constant coeffs) vector or None."""
    n_mon = len(monos)
    zred = {m: int(Fraction(c) % p) for m, c in z.terms.items()}
    extra_rows = [m for m in _box(len(monos[0]), fit_deg) if m not in mono_set]
    row_pos = {m: i for i, m in enumerate(extra_rows)}
    M = np.zeros((len(extra_rows), n_mon - 1), dtype=np.int64)
    rhs = np.zeros(len(extra_rows), dtype=np.int64)
    for col, mono in enumerate(monos[1:]):
        for zm, zc in zred.items():
            tot = tuple(a + b for a, b in zip(zm, mono))
            r = row_pos.get(tot)
            if r is not None:
                M[r, col] = (M[r, col] - zc) % p
    for zm, zc in zred.items():
        r = row_pos.get(zm)
        if r is not None:
            rhs[r] = zc % p
    dsol = _solve_modp(M, rhs, p, np)
    if dsol is None:
        return None
    # back-substitute the numerator: N_mu = [z * D]_mu on ansatz monomials
    dfull = {(0,) * len(monos[0]): 1}
    for mono, c in zip(monos[1:], dsol):
        if c:
            dfull[mono] = int(c)
    nsol = []
    for mono in monos:
        total = 0
        for dm, dc in dfull.items():
            need = tuple(a - b for a, b in zip(mono, dm))
            if min(need) < 0:
                continue
            zc = zred.get(need)
            if zc:
                total += dc * zc
        nsol.append(total % p)
    return nsol + [int(c) for c in dsol]


def _solve_modp(M, rhs, p, np):
    M = M % p
    rhs = rhs % p
    rows, cols = M.shape
    aug = np.concatenate([M, rhs.reshape(-1, 1)], axis=1)
    piv_cols = []
    r = 0
    for c in range(cols):
        piv = None
        for rr in range(r, rows):
            if aug[rr, c] % p:
                piv = rr
                break
        if piv is None:
            continue
        aug[[r, piv]] = aug[[piv, r]]
        inv = pow(int(aug[r, c]), -1, p)
        aug[r] = (aug[r] * inv) % p
        colvals = aug[:, c].copy()
        colvals[r] = 0
        aug = (aug - np.outer(colvals, aug[r])) % p
        piv_cols.append(c)
        r += 1
        if r == rows:
            break
    if any((aug[rr, :-1] % p == 0).all() and aug[rr, -1] % p for rr in range(rows)):
        return None
    # particular solution: free variables set to zero (deterministic pivots);
    # the exact certification downstream rejects spurious members of an
    # underdetermined family, prompting a higher fit degree
    x = np.zeros(cols, dtype=np.int64)
    for i, c in enumerate(piv_cols):
        x[c] = aug[i, -1] % p
    return [int(v) for v in x]


def _certify(matrix, rats, solution):
    n = len(matrix)
    # match the series to its full order
    for i in range(n):
        if not _series_matches(rats[i], solution.series[i]):
            return False, f"candidate z_{i+1} disagrees with the series"
    ok = nahm_exact_verify(matrix, rats)
    if not ok:
        return False, "exact substitution into the equations failed"
    return True, ""


def _series_matches(rat, series):
    order = series.order
    num_s = _poly_to_series(rat.num, series.vars, order)
    den_s = _poly_to_series(rat.den, series.vars, order)
    return num_s == den_s * series


def _poly_to_series(p, vs, order):
    terms = {}
    for m, c in p.terms.items():
        if any(e % p.den for e in m):
            raise NahmError("fractional exponents in candidate")
        key = tuple(e // p.den for e in m)
        if min(key) < 0:
            raise NahmError("negative exponents in candidate")
        if sum(key) <= order:
            terms[key] = c
    return TruncMSeries(vs, order, terms)


def nahm_exact_verify(matrix, rats) -> bool:
    """Exact check of 1 - z_i = -y_i prod_j z_j^(A_ij) for rational z.

    Factored strategy: collect numerator and denominator factor multisets,
    cancel syntactically equal factors (after sign normalization), and
    expand only the reduced remainder."""
    n = len(matrix)
    vs = rats[0].vars

    def norm_factor(p):
        # returns (sign, canonical poly)
        _, lead = p.grlex_leading()
        if (lead < 0) if not isinstance(lead, Fraction) else (lead < 0):
            return -1, -p
        return 1, p

    for i in range(n):
        Ni, Di = rats[i].num, rats[i].den
        lhs_num = [Di - Ni]  # (1 - z_i) = (D_i - N_i)/D_i
        lhs_den = [Di]
        rhs_num = [LaurentPoly.var(vs, f"y{i+1}")]
        rhs_den = []
        rhs_sign = -1
        for j in range(n):
            e = matrix[i][j]
            if e > 0:
                rhs_num += [rats[j].num] * e
                rhs_den += [rats[j].den] * e
            elif e < 0:
                rhs_num += [rats[j].den] * (-e)
                rhs_den += [rats[j].num] * (-e)
        # cross-multiplied identity: lhs_num * rhs_den == rhs_sign * rhs_num * lhs_den
        left = lhs_num + rhs_den
        right = rhs_num + lhs_den
        sign = rhs_sign
        lf, ls = _normalize_factors(left, norm_factor)
        rf, rs = _normalize_factors(right, norm_factor)
        sign *= ls * rs
        lf, rf = _cancel(lf, rf)
        lp = _expand(lf, vs)
        rp = _expand(rf, vs)
        if sign == -1:
            rp = -rp
        if lp != rp:
            return False
    return True


def _normalize_factors(factors, norm):
    out = []
    sign = 1
    for f in factors:
        s, p = norm(f)
        sign *= s
        out.append(p)
    return out, sign


def _cancel(a, b):
    b = list(b)
    rem = []
    for f in a:
        hit = next((i for i, g in enumerate(b) if f == g), None)
        if hit is None:
            rem.append(f)
        else:
            b.pop(hit)
    return rem, b


def _expand(factors, vs):
    total = LaurentPoly.one(vs)
    for f in sorted(factors, key=lambda p: len(p.terms)):
        total = total * f
    return total


# -- knot specialization ------------------------------------------------------


def y_of_t(data: StateSumData):
    """y_i(t) = (t^(sign_i) - 1) t^(c_i) as Laurent polynomials in t^(1/2)."""
    cs = y_specialization_exponents(data)
    out = []
    for i in range(data.n_crossings):
        e = data.signs[i]
        c2 = int(2 * cs[i])
        base = LaurentPoly(("t",), {(2 * e,): 1, (0,): -1}, 2)
        out.append(base * LaurentPoly(("t",), {(c2,): 1}, 2))
    return out


def delta_at_knot(data: StateSumData) -> LaurentPoly:
    """delta(y(t)) = det(I + diag(1 - t^eps_i) A diag(t^-eps_j)), exact."""
    n = data.n_crossings
    tv = ("t",)
    mat = []
    for i in range(n):
        row = []
        gi = LaurentPoly(tv, {(0,): 1, (2 * data.signs[i],): -1}, 2)
        for j in range(n):
            e = LaurentPoly.one(tv) if i == j else LaurentPoly.zero(tv)
            a = data.binom[i][j]
            if a:
                e = e + gi * LaurentPoly(tv, {(-2 * data.signs[j],): a}, 2)
            row.append(e)
        mat.append(row)
    return _det_bareiss(mat).reduced()


def _det_bareiss(mat):
    """Fraction-free determinant over Laurent polynomials."""
    n = len(mat)
    mat = [row[:] for row in mat]
    sign = 1
    prev = None
    for k in range(n - 1):
        if mat[k][k].is_zero():
            piv = next((r for r in range(k + 1, n) if not mat[r][k].is_zero()), None)
            if piv is None:
                return LaurentPoly.zero(mat[0][0].vars)
            mat[k], mat[piv] = mat[piv], mat[k]
            sign = -sign
        new = [row[:] for row in mat]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                val = mat[i][j] * mat[k][k] - mat[i][k] * mat[k][j]
                if prev is not None:
                    q = exact_div(val, prev)
                    if q is None:
                        raise NahmError("Bareiss division failed")
                    val = q
                new[i][j] = val
        mat = new
        prev = mat[k][k]
    d = mat[n - 1][n - 1]
    return -d if sign < 0 else d


def knot_specialization_check(data: StateSumData) -> bool:
    """z_i = t^(sign_i) solves the equations at y = y(t), and delta(y(t))
    equals t^((r-1-writhe)/2) * Delta(t)."""
    from .burau import alexander

    n = data.n_crossings
    tv = ("t",)
    ys = y_of_t(data)
    for i in range(n):
        lhs = LaurentPoly(tv, {(0,): 1, (2 * data.signs[i],): -1}, 2)  # 1 - t^eps
        prod_e = sum(data.binom[i][j] * data.signs[j] for j in range(n))
        rhs = -ys[i] * LaurentPoly(tv, {(2 * prod_e,): 1}, 2)
        if lhs != rhs:
            return False
    dd = delta_at_knot(data)
    alex = alexander(data.word)
    r, w = data.strands, data.writhe
    expected = alex * LaurentPoly(tv, {(r - 1 - w,): 1}, 2)
    return dd == expected.reduced()
