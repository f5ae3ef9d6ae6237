"""Exact arithmetic and linear algebra over Z/p^r for odd primes p.

Z/p^r is a local ring, not a field, so echelon forms use minimal-valuation
unit-normalized pivots plus Howell saturation rows (p^(r-v) times each
pivot row re-enters the elimination).  Two matrices have the same row span
as Z/p^r-modules, p-multiples included, exactly when their Howell forms
agree.

Residues are canonical in [0, p^r); equality is structural throughout.
All values are immutable; all functions are pure.
"""

from dataclasses import dataclass
from fractions import Fraction

from .arith import invmod, is_prime, valuation
from .errors import (
    DenominatorNotUnit,
    NonResidue,
    NoSolution,
    NotUnit,
    ZeroInput,
)


@dataclass(frozen=True)
class PrimePower:
    """Modulus p^r with p an odd prime and r >= 1."""

    p: int
    r: int

    def __post_init__(self):
        if self.p < 3 or not is_prime(self.p):
            raise ValueError("p must be an odd prime")
        if self.r < 1:
            raise ValueError("r must be >= 1")

    @property
    def modulus(self):
        return self.p**self.r

    def __str__(self):
        return f"{self.p}^{self.r}"


@dataclass(frozen=True)
class ZmodPr:
    """Canonical residue in Z/p^r."""

    m: PrimePower
    v: int

    def __post_init__(self):
        object.__setattr__(self, "v", self.v % self.m.modulus)

    def _lift(self, other):
        if isinstance(other, ZmodPr):
            if other.m != self.m:
                raise ValueError("modulus mismatch")
            return other.v
        return int(other)

    def __add__(self, other):
        return ZmodPr(self.m, self.v + self._lift(other))

    __radd__ = __add__

    def __sub__(self, other):
        return ZmodPr(self.m, self.v - self._lift(other))

    def __rsub__(self, other):
        return ZmodPr(self.m, self._lift(other) - self.v)

    def __mul__(self, other):
        return ZmodPr(self.m, self.v * self._lift(other))

    __rmul__ = __mul__

    def __neg__(self):
        return ZmodPr(self.m, -self.v)

    def is_unit(self):
        return self.v % self.m.p != 0

    def inverse(self):
        if not self.is_unit():
            raise NotUnit(f"{self.v} is not a unit mod {self.m}")
        return ZmodPr(self.m, invmod(self.v, self.m.modulus))

    def val(self):
        """p-adic valuation of the residue, reported as r for 0."""
        if self.v == 0:
            return self.m.r
        return valuation(self.v, self.m.p)

    def __int__(self):
        return self.v


def valp(x, p):
    """Exact p-adic valuation of a nonzero rational (possibly negative)."""
    if x == 0:
        raise ZeroInput("valuation of 0 requested")
    return valuation(Fraction(x), p)


def reduce_mod(x, m):
    """Canonical residue of a rational whose denominator is a unit."""
    x = Fraction(x)
    if x.denominator % m.p == 0:
        raise DenominatorNotUnit(f"denominator of {x} is divisible by {m.p}")
    return ZmodPr(m, x.numerator * invmod(x.denominator, m.modulus))


def sqrt_mod_p(a, p):
    """A square root of a mod an odd prime p (Tonelli-Shanks)."""
    a %= p
    if a == 0:
        return 0
    if pow(a, (p - 1) // 2, p) != 1:
        raise NonResidue(f"{a} is not a quadratic residue mod {p}")
    if p % 4 == 3:
        return pow(a, (p + 1) // 4, p)
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z += 1
    m, c, t, rt = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        i, tt = 0, t
        while tt != 1:
            tt = tt * tt % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c = i, b * b % p
        t = t * c % p
        rt = rt * b % p
    return rt


def hensel_sqrt(u):
    """The two square roots of a unit square in Z/p^r.

    Returns (root, -root) with root the lesser canonical residue of the
    pair.  Raises NotUnit if p | u and NonResidue if u is not a square
    mod p; since p is odd the Hensel lift is unique.
    """
    m = u.m
    if not u.is_unit():
        raise NotUnit(f"{u.v} is not a unit mod {m}")
    x = sqrt_mod_p(u.v, m.p)
    mod = m.p
    while mod < m.modulus:
        mod = min(mod * mod, m.modulus)
        x = (x - (x * x - u.v) * invmod(2 * x, mod)) % mod
    x %= m.modulus
    lo = min(x, m.modulus - x)
    return ZmodPr(m, lo), ZmodPr(m, m.modulus - lo)


# ---------------------------------------------------------------------------
# matrices


class ZmodPrMatrix:
    """Immutable matrix over Z/p^r; entries stored as canonical ints."""

    __slots__ = ("m", "rows", "cols", "data")

    def __init__(self, m, data, cols=None):
        self.m = m
        mod = m.modulus
        self.data = tuple(tuple(int(x) % mod for x in row) for row in data)
        self.rows = len(self.data)
        if self.rows:
            self.cols = len(self.data[0])
            if any(len(r) != self.cols for r in self.data):
                raise ValueError("ragged rows")
        else:
            self.cols = 0 if cols is None else cols

    def __eq__(self, other):
        return (
            isinstance(other, ZmodPrMatrix)
            and self.m == other.m
            and self.cols == other.cols
            and self.data == other.data
        )

    def __hash__(self):
        return hash((self.m, self.cols, self.data))

    def __repr__(self):
        return f"ZmodPrMatrix({self.rows}x{self.cols} mod {self.m})"

    def mul_vector(self, vec):
        mod = self.m.modulus
        return [sum(a * b for a, b in zip(row, vec)) % mod for row in self.data]

    def transpose(self):
        return ZmodPrMatrix(self.m, list(zip(*self.data)), cols=self.rows)


def _val(x, p, r):
    if x % (p**r) == 0:
        return r
    x %= p**r
    v = 0
    while x % p == 0:
        x //= p
        v += 1
    return v


def _howell_rows(m, rows):
    """Howell reduction of (row, transform_row) pairs.

    Returns (pivots, zero_transforms): pivots is a list of
    (col, val, row, urow) sorted by column with pivot entry exactly
    p^val and entries above pivots reduced mod p^val; zero_transforms
    collects the transform rows of inputs that reduced to zero.
    Transform rows may be None when not tracked.
    """
    p, r, mod = m.p, m.r, m.modulus
    work = [(list(row), list(urow) if urow is not None else None) for row, urow in rows]
    pivots = {}  # col -> [val, row, urow]
    zeros = []

    def claim(col, vx, row, urow):
        u = (row[col] // p**vx) % mod
        ui = invmod(u, mod)
        nrow = [(ui * y) % mod for y in row]
        nurow = [(ui * y) % mod for y in urow] if urow is not None else None
        pivots[col] = [vx, nrow, nurow]
        if vx > 0:
            f = p ** (r - vx)
            work.append(
                (
                    [f * y % mod for y in nrow],
                    [f * y % mod for y in nurow] if nurow is not None else None,
                )
            )

    while work:
        row, urow = work.pop()
        row = [y % mod for y in row]
        claimed = False
        c = 0
        n = len(row)
        while c < n:
            x = row[c]
            if x == 0:
                c += 1
                continue
            vx = _val(x, p, r)
            if c not in pivots:
                claim(c, vx, row, urow)
                claimed = True
                break
            pv, prow, purow = pivots[c]
            if vx >= pv:
                t = x // p**pv
                row = [(a - t * b) % mod for a, b in zip(row, prow)]
                if urow is not None:
                    urow = [(a - t * b) % mod for a, b in zip(urow, purow)]
                # row[c] is now 0; keep scanning
            else:
                # better pivot: install this row, recycle the old pivot row
                claim(c, vx, row, urow)
                work.append((prow, purow))
                claimed = True
                break
        if not claimed and urow is not None:
            zeros.append(urow)

    # entries above each pivot reduced modulo the pivot value
    cols_sorted = sorted(pivots)
    for ci in cols_sorted:
        vi, rowi, urowi = pivots[ci]
        for cj in cols_sorted:
            if cj <= ci:
                continue
            vj, rowj, urowj = pivots[cj]
            t = rowi[cj] // p**vj
            if t:
                rowi = [(a - t * b) % mod for a, b in zip(rowi, rowj)]
                if urowi is not None:
                    urowi = [(a - t * b) % mod for a, b in zip(urowi, urowj)]
        pivots[ci] = [vi, rowi, urowi]

    out = [(c, pivots[c][0], pivots[c][1], pivots[c][2]) for c in cols_sorted]
    return out, zeros


def howell_form(matrix):
    """Canonical Howell normal form: two matrices have equal row spans
    (as Z/p^r-modules) iff their Howell forms are identical; idempotent."""
    pivots, _ = _howell_rows(matrix.m, [(r, None) for r in matrix.data])
    data = [row for _, _, row, _ in pivots]
    return ZmodPrMatrix(matrix.m, data, cols=matrix.cols)


def _howell_with_transform(matrix):
    n = matrix.rows
    rows = []
    for i, r in enumerate(matrix.data):
        u = [0] * n
        u[i] = 1
        rows.append((r, u))
    return _howell_rows(matrix.m, rows)


def _express_in_pivots(m, pivots, target):
    """Coefficients t with target = sum t_i * pivot_row_i, or None."""
    p, r, mod = m.p, m.r, m.modulus
    row = [x % mod for x in target]
    coef = [0] * len(pivots)
    for i, (c, v, prow, _) in enumerate(pivots):
        x = row[c]
        if x == 0:
            continue
        if _val(x, p, r) < v:
            return None
        t = x // p**v
        coef[i] = t % mod
        row = [(a - t * b) % mod for a, b in zip(row, prow)]
    if any(row):
        return None
    return coef


def member_of_span(matrix, vec):
    """Is vec in the row span (as a Z/p^r-module) of matrix?"""
    pivots, _ = _howell_rows(matrix.m, [(r, None) for r in matrix.data])
    return _express_in_pivots(matrix.m, pivots, list(vec)) is not None


def solve(a, b):
    """Solve a·x = b over Z/p^r.

    Returns (particular, kernel_generators); raises NoSolution when b is
    outside the column span.  The solution set is exactly particular
    plus the span of the kernel generators.
    """
    if len(b) != a.rows:
        raise ValueError("dimension mismatch")
    at = a.transpose()
    pivots, _ = _howell_with_transform(at)
    coef = _express_in_pivots(a.m, pivots, list(b))
    if coef is None:
        raise NoSolution("right-hand side outside the column span")
    mod = a.m.modulus
    x = [0] * a.cols
    for t, (_, _, _, urow) in zip(coef, pivots):
        if t:
            for j in range(a.cols):
                x[j] = (x[j] + t * urow[j]) % mod
    return x, kernel_modpr(a)


def kernel_modpr(a):
    """Generators of the solution module {x : a·x = 0} over Z/p^r."""
    at = a.transpose()
    pivots, zeros = _howell_with_transform(at)
    m = a.m
    p, r, mod = m.p, m.r, m.modulus
    gens = [list(z) for z in zeros]
    for i, (c, v, prow, urow) in enumerate(pivots):
        if v == 0:
            continue
        f = p ** (r - v)
        scaled = [f * y % mod for y in prow]
        coef = _express_in_pivots(m, pivots, scaled)
        assert coef is not None, "Howell saturation guarantees expressibility"
        gen = [f * y % mod for y in urow]
        for t, (_, _, _, ourow) in zip(coef, pivots):
            if t:
                for j in range(len(gen)):
                    gen[j] = (gen[j] - t * ourow[j]) % mod
        if any(gen):
            gens.append(gen)
    if not gens:
        return []
    km = ZmodPrMatrix(m, gens, cols=a.cols)
    return [list(row) for row in howell_form(km).data]
