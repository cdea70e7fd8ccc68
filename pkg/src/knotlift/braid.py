"""Braid words, knot-closure checks, edge labelings and state-sum data.

Conventions (fixed throughout the package):

* a word's letters act bottom to top on the braid diagram, word order is
  left to right;
* at a positive crossing the left input strand passes over; at a negative
  crossing the left input passes under;
* crossing variables k_i are numbered in word order;
* edge labels propagate as (left, right) -> (right + k, left - k) at a
  positive crossing and (right - k, left + k) at a negative one, with the
  bottom of strand 1 labeled 0 and closure arcs matching top to bottom on
  strands 2..r.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction


class BraidError(ValueError):
    pass


@dataclass(frozen=True)
class BraidWord:
    strands: int
    letters: tuple  # ((index, sign), ...) one entry per crossing

    def __post_init__(self):
        if self.strands < 2:
            raise BraidError("need at least two strands")
        if not self.letters:
            raise BraidError("empty braid word")
        for j, s in self.letters:
            if not 1 <= j <= self.strands - 1:
                raise BraidError(f"generator index {j} out of range")
            if s not in (1, -1):
                raise BraidError("crossing sign must be +1 or -1")

    @property
    def crossings(self):
        return len(self.letters)

    @property
    def writhe(self):
        return sum(s for _, s in self.letters)

    def signs(self):
        return tuple(s for _, s in self.letters)

    def permutation(self):
        """Bottom-to-top permutation: perm[i] = final position of strand i."""
        pos = list(range(self.strands))  # pos[slot] = strand currently there
        for j, _ in self.letters:
            pos[j - 1], pos[j] = pos[j], pos[j - 1]
        perm = [0] * self.strands
        for slot, strand in enumerate(pos):
            perm[strand] = slot
        return tuple(perm)

    def word_str(self):
        out = []
        for j, s in self.letters:
            out.append(f"s{j}" if s > 0 else f"s{j}^-1")
        return " ".join(out)


_TOKEN = re.compile(r"^s(\d+)(?:\^(-?\d+))?$")


def parse_braid_word(text: str) -> BraidWord:
    """Parse either `s1^-3 s2 ...` tokens or a comma list `-1,-1,2`."""
    text = text.strip()
    if not text:
        raise BraidError("empty braid word")
    letters = []
    if re.fullmatch(r"[-+\d,\s]+", text) and ("," in text or text.lstrip("+-").isdigit()):
        for tok in text.split(","):
            tok = tok.strip()
            if not tok:
                raise BraidError("empty entry in comma list")
            try:
                v = int(tok)
            except ValueError as exc:
                raise BraidError(f"malformed entry {tok!r}") from exc
            if v == 0:
                raise BraidError("generator index 0 is not allowed")
            letters.append((abs(v), 1 if v > 0 else -1))
    else:
        for tok in text.split():
            m = _TOKEN.match(tok)
            if not m:
                raise BraidError(f"malformed token {tok!r}")
            j = int(m.group(1))
            if j == 0:
                raise BraidError("generator index 0 is not allowed")
            e = int(m.group(2)) if m.group(2) else 1
            if e == 0:
                raise BraidError(f"zero exponent in token {tok!r}")
            sign = 1 if e > 0 else -1
            letters.extend([(j, sign)] * abs(e))
    strands = 1 + max(j for j, _ in letters)
    return BraidWord(strands, tuple(letters))


def closure_is_knot(word: BraidWord) -> bool:
    """True iff the underlying permutation is a single r-cycle."""
    perm = word.permutation()
    seen = 1
    cur = perm[0]
    while cur != 0:
        cur = perm[cur]
        seen += 1
        if seen > word.strands:
            return False
    return seen == word.strands


class Form:
    """Integer linear form in the crossing variables k_1..k_N."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        self.coeffs = tuple(coeffs)

    @classmethod
    def zero(cls, n):
        return cls((0,) * n)

    @classmethod
    def unit(cls, n, i):
        c = [0] * n
        c[i] = 1
        return cls(c)

    def __add__(self, other):
        return Form(a + b for a, b in zip(self.coeffs, other.coeffs))

    def __sub__(self, other):
        return Form(a - b for a, b in zip(self.coeffs, other.coeffs))

    def __neg__(self):
        return Form(-a for a in self.coeffs)

    def __eq__(self, other):
        return isinstance(other, Form) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        parts = []
        for i, c in enumerate(self.coeffs):
            if c:
                parts.append(f"{'+' if c > 0 else '-'}{abs(c) if abs(c) != 1 else ''}k{i+1}")
        return "".join(parts) or "0"

    def eval(self, k):
        return sum(c * x for c, x in zip(self.coeffs, k))

    def is_zero(self):
        return all(c == 0 for c in self.coeffs)


@dataclass
class EdgeLabeling:
    """Labels of every edge slot, as integer forms in k."""

    word: BraidWord
    bottom: list  # label of the bottom of each strand position
    levels: list  # levels[i][pos] = label above the i-th crossing row
    crossing_inputs: list  # (left_in, right_in) per crossing
    crossing_outputs: list  # (left_out, right_out) per crossing

    def top(self):
        return self.levels[-1]


def edge_labels(word: BraidWord) -> EdgeLabeling:
    """Propagate edge labels and solve the closure constraints.

    Raises BraidError when the closure constraints are inconsistent, which
    happens exactly when the closure is not a knot.
    """
    if not closure_is_knot(word):
        raise BraidError("closure of the braid is not a knot")
    r, n = word.strands, word.crossings

    # labels carry unknown bottom labels u_2..u_r alongside the k-forms
    class Lab:
        __slots__ = ("k", "u")

        def __init__(self, k, u):
            self.k = tuple(k)
            self.u = tuple(u)

        def __add__(self, o):
            return Lab(
                (a + b for a, b in zip(self.k, o.k)),
                (a + b for a, b in zip(self.u, o.u)),
            )

        def __sub__(self, o):
            return Lab(
                (a - b for a, b in zip(self.k, o.k)),
                (a - b for a, b in zip(self.u, o.u)),
            )

    def kunit(i):
        c = [0] * n
        c[i] = 1
        return Lab(c, (0,) * (r - 1))

    def uunit(j):
        c = [0] * (r - 1)
        c[j] = 1
        return Lab((0,) * n, c)

    zero = Lab((0,) * n, (0,) * (r - 1))
    cur = [zero] + [uunit(j) for j in range(r - 1)]
    levels = [list(cur)]
    ins, outs = [], []
    for i, (j, sign) in enumerate(word.letters):
        left, right = cur[j - 1], cur[j]
        k = kunit(i)
        if sign > 0:
            new_left, new_right = right + k, left - k
        else:
            new_left, new_right = right - k, left + k
        ins.append((left, right))
        outs.append((new_left, new_right))
        cur = list(cur)
        cur[j - 1], cur[j] = new_left, new_right
        levels.append(list(cur))

    # closure: top of strand position j equals its bottom label, j = 2..r
    # (top of position 1 must come out as 0; guaranteed by conservation)
    mat = []  # rows over u_2..u_r
    rhs = []  # k-forms
    for j in range(1, r):
        lab = cur[j]
        row = list(lab.u)
        row[j - 1] -= 1
        mat.append([Fraction(x) for x in row])
        rhs.append([-x for x in lab.k])

    sol = _solve_integer(mat, rhs)
    if sol is None:
        raise BraidError("inconsistent edge labeling; closure is not a knot")

    def resolve(lab):
        k = list(lab.k)
        for j, c in enumerate(lab.u):
            if c:
                for idx in range(n):
                    k[idx] += c * sol[j][idx]
        return Form(k)

    top1 = resolve(cur[0])
    if not top1.is_zero():
        raise BraidError("top label of the open strand is nonzero")

    return EdgeLabeling(
        word=word,
        bottom=[resolve(l) for l in levels[0]],
        levels=[[resolve(l) for l in row] for row in levels],
        crossing_inputs=[(resolve(a), resolve(b)) for a, b in ins],
        crossing_outputs=[(resolve(a), resolve(b)) for a, b in outs],
    )


def _solve_integer(mat, rhs):
    """Solve mat * u = rhs for integer vector-of-forms u; None if singular."""
    m = len(mat)
    if m == 0:
        return []
    ncols = len(rhs[0])
    aug = [list(mat[i]) + [Fraction(x) for x in rhs[i]] for i in range(m)]
    for col in range(m):
        piv = next((r for r in range(col, m) if aug[r][col] != 0), None)
        if piv is None:
            return None
        aug[col], aug[piv] = aug[piv], aug[col]
        pv = aug[col][col]
        aug[col] = [x / pv for x in aug[col]]
        for r in range(m):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    out = []
    for i in range(m):
        row = aug[i][m:]
        ints = []
        for x in row:
            if x.denominator != 1:
                raise BraidError("non-integer edge labels; internal error")
            ints.append(int(x))
        out.append(ints)
    return out


@dataclass
class StateSumData:
    """Combinatorial data of a braid-word state sum.

    Matrices are stored so that column i holds the linear form attached to
    crossing i (binom: the over-strand input, poch: the under-strand input).
    """

    word: BraidWord
    n_crossings: int
    strands: int
    binom: list  # N x N integer matrix
    poch: list  # N x N integer matrix
    quad: list  # N x N symmetric integer matrix
    closure: list  # length-N integer vector
    signs: tuple  # crossing signs
    under_first: tuple  # +1 if the knot first meets the crossing underneath
    cycle_drop: tuple  # crossing-count defect of the associated cycle
    writhe: int
    labels: EdgeLabeling = field(repr=False, default=None)

    def binom_form(self, i):
        return Form(tuple(self.binom[j][i] for j in range(self.n_crossings)))

    def poch_form(self, i):
        return Form(tuple(self.poch[j][i] for j in range(self.n_crossings)))

    def quad_value(self, k):
        n = self.n_crossings
        total = 0
        for i in range(n):
            if not k[i]:
                continue
            row = self.quad[i]
            total += k[i] * sum(row[j] * k[j] for j in range(n) if k[j])
        return total


def statesum_data(word: BraidWord) -> StateSumData:
    lab = edge_labels(word)
    n = word.crossings
    r = word.strands
    signs = word.signs()

    a_cols, b_cols = [], []
    for i, (j, sign) in enumerate(word.letters):
        left, right = lab.crossing_inputs[i]
        over, under = (left, right) if sign > 0 else (right, left)
        a_cols.append(over)
        b_cols.append(under)

    A = [[a_cols[i].coeffs[j] for i in range(n)] for j in range(n)]
    B = [[b_cols[i].coeffs[j] for i in range(n)] for j in range(n)]

    # quadratic form from its closed formula
    Q = [[0] * n for _ in range(n)]

    def rank1_sym(u, v, scale):
        for x in range(n):
            ux = u[x]
            vx = v[x]
            if not ux and not vx:
                continue
            for y in range(n):
                Q[x][y] += scale * (ux * v[y] + vx * u[y])

    for i in range(n):
        a = list(a_cols[i].coeffs)
        b = list(b_cols[i].coeffs)
        e = [0] * n
        e[i] = 1
        if signs[i] > 0:
            rank1_sym(a, b, 1)
            Q[i][i] += 1
        else:
            am = [x - y for x, y in zip(a, e)]
            bp = [x + y for x, y in zip(b, e)]
            rank1_sym(am, bp, -1)

    closure = [0] * n
    for j in range(1, r):
        for idx, c in enumerate(lab.bottom[j].coeffs):
            closure[idx] += c

    under_first, cycle_drop = _traverse_cycles(word)

    data = StateSumData(
        word=word,
        n_crossings=n,
        strands=r,
        binom=A,
        poch=B,
        quad=Q,
        closure=closure,
        signs=signs,
        under_first=under_first,
        cycle_drop=cycle_drop,
        writhe=word.writhe,
        labels=lab,
    )
    _check_consistency(data)
    return data


def _traverse_cycles(word: BraidWord):
    """Walk the knot once; derive first-under flags and cycle defects.

    The cycle of crossing i runs from the first visit of i to the second;
    crossings strictly between the visits are counted with multiplicity.
    """
    r, n = word.strands, word.crossings
    # crossing rows: for each level, which positions it touches
    visits = []  # sequence of crossing indices as the knot passes them
    pos, level, going_up = 0, 0, True
    # walk from bottom of strand position 0 (strand 1)
    steps = 0
    while True:
        steps += 1
        if steps > 4 * n * r + 4 * r + 4:
            raise BraidError("traversal failed to close")
        nxt = None
        for i in range(level, n):
            j = word.letters[i][0] - 1
            if pos in (j, j + 1):
                nxt = i
                break
        if nxt is None:
            # reached the top of this strand position
            if pos == 0:
                break
            pos, level = pos, 0  # closure arc: top of pos -> bottom of pos
            continue
        i = nxt
        j = word.letters[i][0] - 1
        visits.append((i, pos == j))
        pos = j + 1 if pos == j else j
        level = i + 1

    if len(visits) != 2 * n:
        raise BraidError("traversal did not visit every crossing twice")

    first_at = {}
    second_at = {}
    for t, (i, from_left) in enumerate(visits):
        if i not in first_at:
            first_at[i] = t
        else:
            second_at[i] = t

    signs = word.signs()
    under_first = []
    for i in range(n):
        _, from_left = visits[first_at[i]]
        under = from_left if signs[i] < 0 else not from_left
        under_first.append(1 if under else -1)

    cycle_drop = []
    for i in range(n):
        neg = pos_ = 0
        for t in range(first_at[i] + 1, second_at[i]):
            jj, _ = visits[t]
            if signs[jj] < 0:
                neg += 1
            else:
                pos_ += 1
        d = neg - pos_ - signs[i] * (1 + under_first[i])
        cycle_drop.append(d)
    return tuple(under_first), tuple(cycle_drop)


def _check_consistency(d: StateSumData):
    n = d.n_crossings
    if d.writhe != sum(d.signs):
        raise BraidError("writhe mismatch")
    for i in range(n):
        if (d.quad[i][i] - (d.signs[i] + 1) // 2) % 2:
            raise BraidError("quadratic form diagonal parity violated")
    # first-under flags agree with the binom matrix diagonal
    for i in range(n):
        if d.under_first[i] != 2 * d.binom[i][i] - 1:
            raise BraidError("first-under flags disagree with binom diagonal")
    # cycle defects agree with the sign-weighted column sums of binom+poch
    for j in range(n):
        colsum = sum(d.signs[i] * (d.binom[j][i] + d.poch[j][i]) for i in range(n))
        if d.under_first[j] * d.cycle_drop[j] != -colsum - d.signs[j]:
            raise BraidError("cycle defects disagree with matrix data")


def y_specialization_exponents(d: StateSumData):
    """Half-integer exponents c_i with y_i(t) = (t^{signs_i} - 1) t^{c_i}.

    Returned as Fractions; c_i = under_first_i * cycle_drop_i / 2.
    """
    return [
        Fraction(d.under_first[i] * d.cycle_drop[i], 2) for i in range(d.n_crossings)
    ]
