"""Integer-based exact linear algebra kernels.

The public rational API lives in exactlin; this module holds the
machinery it and the modular-symbols engine share:

* sparse fraction-free Gaussian elimination (relation matrices are very
  sparse, so pivoting is chosen to limit fill-in),
* dense integer kernels via fraction-free forward elimination,
* exact matrix products that route through numpy int64 when a size bound
  certifies no overflow, with a pure-Python big-int fallback.

Vectors with rational entries are carried as (nums, den) pairs: a list of
ints plus a positive common denominator.  All results are exact.
"""

from fractions import Fraction
from math import gcd

import numpy as np

_NP_LIMIT = 2**62


# ---------------------------------------------------------------------------
# (nums, den) rational vectors


def vec_strip(nums, den):
    """Reduce a (nums, den) pair to lowest terms with den > 0."""
    g = 0
    for x in nums:
        g = gcd(g, x)
        if g == 1:
            break
    g = gcd(g, den)
    if den < 0:
        g = -g
    if g not in (0, 1):
        nums = [x // g for x in nums]
        den //= g
    elif g == 0:
        den = 1
    return nums, den


def vec_add_scaled(anums, aden, bnums, bden, coef_num, coef_den=1):
    """(a) + (coef_num/coef_den) * (b), as a stripped (nums, den) pair."""
    den = aden * bden * coef_den
    fa = bden * coef_den
    fb = aden * coef_num
    nums = [fa * x for x in anums]
    for i, y in enumerate(bnums):
        if y:
            nums[i] += fb * y
    return vec_strip(nums, den)


def vec_to_fractions(nums, den):
    return tuple(Fraction(x, den) for x in nums)


def fractions_to_vec(fracs):
    den = 1
    for f in fracs:
        den = den * f.denominator // gcd(den, f.denominator)
    return [int(f * den) for f in fracs], den


# ---------------------------------------------------------------------------
# exact matrix product


def int_matmul(a, b):
    """Exact product of integer matrices given as lists of row lists."""
    n = len(a)
    k = len(b)
    m = len(b[0]) if k else 0
    if n and k and m:
        max_a = max(max(abs(x) for x in row) if row else 0 for row in a)
        max_b = max(max(abs(x) for x in row) if row else 0 for row in b)
        if max_a * max_b * k < _NP_LIMIT:
            out = np.array(a, dtype=np.int64) @ np.array(b, dtype=np.int64)
            return [[int(x) for x in row] for row in out]
    bt = list(zip(*b)) if k else []
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def int_mat_vec(a, v):
    if a and max(max(abs(x) for x in row) if row else 0 for row in a) * (
        max(abs(x) for x in v) if v else 0
    ) * len(v) < _NP_LIMIT:
        out = np.array(a, dtype=np.int64) @ np.array(v, dtype=np.int64)
        return [int(x) for x in out]
    return [sum(x * y for x, y in zip(row, v)) for row in a]


class IntOp:
    """A linear map stored as integer rows over a common denominator.

    Represents the matrix rows/den acting on column vectors of length
    cols.  Kept integral so products route through the exact numpy path.
    """

    __slots__ = ("rows", "den", "nrows", "ncols")

    def __init__(self, rows, den, ncols=None):
        self.rows = [list(r) for r in rows]
        self.den = den
        self.nrows = len(self.rows)
        self.ncols = len(self.rows[0]) if self.rows else (ncols or 0)

    @staticmethod
    def from_columns(cols, nrows):
        """Build from per-column (nums, den) pairs."""
        den = 1
        for _, d in cols:
            den = den * d // gcd(den, d)
        rows = [[0] * len(cols) for _ in range(nrows)]
        for j, (nums, d) in enumerate(cols):
            f = den // d
            for i, x in enumerate(nums):
                if x:
                    rows[i][j] = f * x
        return IntOp(rows, den)

    def to_fraction_rows(self):
        return [[Fraction(x, self.den) for x in row] for row in self.rows]

    def apply_to_vec(self, nums, den):
        """Image of the column vector nums/den; returns (nums, den)."""
        out = int_mat_vec(self.rows, nums)
        return vec_strip(out, self.den * den)

    def apply_to_rows(self, rows, den):
        """Images of many column vectors given as rows of a matrix;
        returns (rows, den)."""
        out = int_matmul(rows, [list(c) for c in zip(*self.rows)])
        return out, den * self.den

    def compose(self, other):
        """self ∘ other."""
        rows = int_matmul(self.rows, other.rows)
        return IntOp(rows, self.den * other.den, ncols=other.ncols)


class EchelonBasis:
    """Basis rows in unit-transversal form: row i is the only row with a
    nonzero entry at its transversal column, so coordinates of a member
    vector are read off directly.  Rows are (nums, den) pairs."""

    __slots__ = ("ambient", "rows", "pivots")

    def __init__(self, ambient, rows, pivots):
        self.ambient = ambient
        self.rows = [vec_strip(list(n), d) for n, d in rows]
        self.pivots = list(pivots)

    @staticmethod
    def from_kernel(basis, ambient):
        """From int_kernel / SparseEliminator.kernel output.

        The transversal column of vector i is the column where it is the
        only nonzero vector.
        """
        n = len(basis)
        pivots = [None] * n
        for j in range(ambient):
            nz = [i for i, (nums, _) in enumerate(basis) if nums[j]]
            if len(nz) == 1 and pivots[nz[0]] is None:
                pivots[nz[0]] = j
        if any(p is None for p in pivots):
            raise ValueError("rows are not in unit-transversal form")
        order = sorted(range(n), key=lambda i: pivots[i])
        return EchelonBasis(ambient, [basis[i] for i in order], [pivots[i] for i in order])

    @property
    def dim(self):
        return len(self.rows)

    def coordinates(self, nums, den, check=True):
        """Coordinates (Fractions) of nums/den in this basis, or None if
        the vector is outside the span.  With check=False the transversal
        read-off is returned unverified (callers batch-verify)."""
        coords = []
        for (rnums, rden), p in zip(self.rows, self.pivots):
            coords.append(Fraction(nums[p] * rden, den * rnums[p]))
        if check and not self._verify(coords, nums, den):
            return None
        return coords

    def _verify(self, coords, nums, den):
        built = [Fraction(0)] * self.ambient
        for c, (rnums, rden) in zip(coords, self.rows):
            if c:
                for j, x in enumerate(rnums):
                    if x:
                        built[j] += c * Fraction(x, rden)
        return built == [Fraction(x, den) for x in nums]

    def contains(self, nums, den):
        return self.coordinates(nums, den) is not None

    def int_rows(self):
        """(rows, den): all basis rows over one common denominator."""
        den = 1
        for _, d in self.rows:
            den = den * d // gcd(den, d)
        return [[x * (den // d) for x in nums] for nums, d in self.rows], den

    def restrict(self, op, check=True):
        """Matrix (Fraction rows) of an IntOp on this stable subspace.

        With check=True the residual images - coords·basis is verified
        exactly in one batched integer product; raises ValueError when
        the operator leaves the subspace.
        """
        brows, bden = self.int_rows()
        img_rows, img_den = op.apply_to_rows(brows, bden)
        n = self.dim
        coords = []
        for img in img_rows:
            coords.append(
                [
                    Fraction(img[p] * rden, img_den * rnums[p])
                    for (rnums, rden), p in zip(self.rows, self.pivots)
                ]
            )
        if check:
            cd = 1
            for row in coords:
                for c in row:
                    cd = cd * c.denominator // gcd(cd, c.denominator)
            cmat = [[int(c * cd) for c in row] for row in coords]
            rebuilt = int_matmul(cmat, brows)
            # images*cd*bden == rebuilt*img_den exactly
            f1 = cd * bden
            for i in range(n):
                for j in range(self.ambient):
                    if img_rows[i][j] * f1 != rebuilt[i][j] * img_den:
                        raise ValueError("operator leaves the subspace")
        # operator matrix: column i = coords of image of basis vector i
        return [[coords[j][i] for j in range(n)] for i in range(n)]


# ---------------------------------------------------------------------------
# dense fraction-free elimination


def _strip_row(row):
    g = 0
    for x in row:
        g = gcd(g, x)
        if g == 1:
            return row
    if g > 1:
        return [x // g for x in row]
    return row


def int_forward_echelon(rows):
    """Fraction-free forward elimination on integer rows (in place on a
    copy).  Returns (echelon_rows, pivots) where pivots is a list of
    (row_index, col) in elimination order; rows below each pivot are
    zeroed in that column.
    """
    rows = [list(r) for r in rows]
    nrows = len(rows)
    ncols = len(rows[0]) if nrows else 0
    pivots = []
    r = 0
    for c in range(ncols):
        # smallest nonzero pivot keeps intermediate entries modest
        best = None
        for i in range(r, nrows):
            v = rows[i][c]
            if v and (best is None or abs(v) < abs(rows[best][c])):
                best = i
        if best is None:
            continue
        rows[r], rows[best] = rows[best], rows[r]
        pv = rows[r][c]
        for i in range(r + 1, nrows):
            v = rows[i][c]
            if v:
                g = gcd(pv, v)
                fa, fb = pv // g, v // g
                ri = rows[i]
                rr = rows[r]
                rows[i] = _strip_row([fa * x - fb * y for x, y in zip(ri, rr)])
        pivots.append((r, c))
        r += 1
        if r == nrows:
            break
    return rows, pivots


def int_kernel(rows, ncols):
    """Canonical kernel basis of an integer matrix.

    Returns a list of (nums, den) vectors of length ncols in
    unit-transversal form: vector i has entry 1 at its free column and 0
    at the free columns of the others, sorted by free column.
    """
    ech, pivots = int_forward_echelon(rows) if rows else ([], [])
    pivcols = [c for _, c in pivots]
    pivset = set(pivcols)
    free = [c for c in range(ncols) if c not in pivset]
    basis = []
    for f in free:
        # back-substitute x_f = 1, other free cols = 0
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for (ri, c) in reversed(pivots):
            row = ech[ri]
            s = row[f] + sum(row[pc] * x[pc] for _, pc in pivots if pc > c and row[pc])
            x[c] = Fraction(-s, row[c]) if s else Fraction(0)
        nums, den = fractions_to_vec(x)
        basis.append((nums, den))
    return basis


# ---------------------------------------------------------------------------
# sparse fraction-free elimination (relation matrices, stacked kernels)


class SparseEliminator:
    """Gaussian elimination over Q for very sparse integer matrices.

    Rows are dicts {col: int}.  After feeding all rows, `reduced_rows()`
    yields the fully reduced system: for every pivot column a row in
    which no other pivot column occurs, scaled integrally.  Pivot choice
    favours short rows and low-frequency columns to limit fill-in.
    """

    def __init__(self, ncols, col_weight=None):
        self.ncols = ncols
        self.piv = {}  # pivcol -> dict row
        self._clean = {}
        self.col_weight = col_weight or {}

    def _reduce(self, row):
        row = dict(row)
        while True:
            hit = None
            for c in row:
                if c in self.piv:
                    hit = c
                    break
            if hit is None:
                return self._strip(row)
            prow = self.piv[hit]
            pv = prow[hit]
            v = row[hit]
            g = gcd(pv, v)
            fa, fb = pv // g, v // g
            new = {}
            for c, y in row.items():
                new[c] = fa * y
            for c, y in prow.items():
                nv = new.get(c, 0) - fb * y
                if nv:
                    new[c] = nv
                else:
                    new.pop(c, None)
            assert hit not in new
            row = new

    @staticmethod
    def _strip(row):
        if not row:
            return row
        g = 0
        for v in row.values():
            g = gcd(g, v)
            if g == 1:
                return row
        if g > 1:
            return {c: v // g for c, v in row.items()}
        return row

    def add_row(self, row):
        """Feed one relation row; returns True if it added a pivot."""
        row = self._reduce(row)
        if not row:
            return False
        # pivot on the rarest column to keep later fill small
        c = min(row, key=lambda cc: (self.col_weight.get(cc, 0), cc))
        self.piv[c] = row
        return True

    def add_rows(self, rows):
        rows = sorted(rows, key=len)
        for row in rows:
            self.add_row(row)

    def rank(self):
        return len(self.piv)

    def reduced_rows(self):
        """Fully reduce every pivot row against the others; returns
        dict pivcol -> row dict containing that pivot and free cols only."""
        order = sorted(self.piv)
        state = {c: dict(self.piv[c]) for c in order}
        clean = {}

        def cleanse(c):
            if c in clean:
                return state[c]
            stack = [c]
            while stack:
                cur = stack[-1]
                row = state[cur]
                hit = None
                for cc in row:
                    if cc != cur and cc in state and cc not in clean:
                        hit = cc
                        break
                if hit is not None:
                    stack.append(hit)
                    continue
                # all referenced pivots clean; eliminate them
                changed = True
                while changed:
                    changed = False
                    for cc in list(row):
                        if cc != cur and cc in state:
                            prow = state[cc]
                            pv = prow[cc]
                            v = row[cc]
                            g = gcd(pv, v)
                            fa, fb = pv // g, v // g
                            new = {k: fa * y for k, y in row.items()}
                            for k, y in prow.items():
                                nv = new.get(k, 0) - fb * y
                                if nv:
                                    new[k] = nv
                                else:
                                    new.pop(k, None)
                            row = self._strip(new)
                            changed = True
                            break
                state[cur] = row
                clean[cur] = True
                stack.pop()
            return state[c]

        for c in order:
            cleanse(c)
        return state

    def kernel(self):
        """Canonical kernel basis (unit-transversal over the free columns),
        as (nums, den) vectors sorted by free column."""
        state = self.reduced_rows()
        pivset = set(state)
        free = [c for c in range(self.ncols) if c not in pivset]
        basis = []
        for f in free:
            x = [0] * self.ncols
            den = 1
            # x_f = 1; for each pivot col c: x_c = -row[f]/row[c]
            entries = []
            for c, row in state.items():
                v = row.get(f, 0)
                if v:
                    entries.append((c, v, row[c]))
            den = 1
            for _, _, pv in entries:
                den = den * pv // gcd(den, pv)
            x = [0] * self.ncols
            x[f] = den
            for c, v, pv in entries:
                x[c] = -v * (den // pv)
            nums, d = vec_strip(x, den)
            basis.append((nums, d))
        return basis
