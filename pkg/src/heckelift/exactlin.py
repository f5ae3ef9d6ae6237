"""Dense exact linear algebra over the rationals.

QMatrix and Subspace are immutable values; every operation is a pure
function, so independent computations can safely run concurrently.
Subspaces are kept in canonical reduced-echelon form sorted by pivot
column, which makes subspace equality structural.

Integer eigenvalue extraction never factors characteristic polynomials:
it scans the integer window and confirms candidates with exact kernels.
A modular determinant screen (two fixed word-sized primes) discards most
non-eigenvalues cheaply; a vanishing determinant over Z implies vanishing
mod every prime, so the screen can never lose a true eigenvalue.
"""

from fractions import Fraction
from math import gcd

import numpy as np

from .errors import DimensionMismatch, InternalInvariantError, NotStable
from .intmat import fractions_to_vec, int_forward_echelon, int_kernel, vec_to_fractions

_SCREEN_PRIMES = (2**31 - 1, 2**31 - 85)


def _frac(x):
    return x if isinstance(x, Fraction) else Fraction(x)


class QMatrix:
    """Immutable matrix with exact rational entries."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, data):
        data = tuple(tuple(_frac(x) for x in row) for row in data)
        self.rows = len(data)
        self.cols = len(data[0]) if data else 0
        if any(len(row) != self.cols for row in data):
            raise ValueError("ragged rows")
        self.data = data

    @staticmethod
    def identity(n):
        return QMatrix([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @staticmethod
    def zero(rows, cols):
        return QMatrix([[0] * cols for _ in range(rows)])

    def __getitem__(self, ij):
        i, j = ij
        return self.data[i][j]

    def __eq__(self, other):
        return isinstance(other, QMatrix) and self.data == other.data

    def __hash__(self):
        return hash(self.data)

    def __repr__(self):
        return f"QMatrix({self.rows}x{self.cols})"

    def __add__(self, other):
        self._same_shape(other)
        return QMatrix(
            [
                [a + b for a, b in zip(r1, r2)]
                for r1, r2 in zip(self.data, other.data)
            ]
        )

    def __sub__(self, other):
        self._same_shape(other)
        return QMatrix(
            [
                [a - b for a, b in zip(r1, r2)]
                for r1, r2 in zip(self.data, other.data)
            ]
        )

    def _same_shape(self, other):
        if self.rows != other.rows or self.cols != other.cols:
            raise ValueError("shape mismatch")

    def __mul__(self, other):
        if isinstance(other, QMatrix):
            if self.cols != other.rows:
                raise ValueError("shape mismatch")
            bt = list(zip(*other.data))
            return QMatrix(
                [
                    [sum(a * b for a, b in zip(row, col)) for col in bt]
                    for row in self.data
                ]
            )
        return QMatrix([[_frac(other) * x for x in row] for row in self.data])

    __rmul__ = __mul__

    def mul_vector(self, vec):
        return tuple(sum(a * b for a, b in zip(row, vec)) for row in self.data)

    def transpose(self):
        return QMatrix(list(zip(*self.data)))

    def is_zero(self):
        return all(all(x == 0 for x in row) for row in self.data)

    def rank(self):
        return len(rref(self)[1])


def rref(matrix):
    """Reduced row echelon form and pivot columns. Row span is preserved
    and the result is idempotent."""
    rows = [list(row) for row in matrix.data]
    nrows, ncols = matrix.rows, matrix.cols
    pivots = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, nrows) if rows[i][c] != 0), None)
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        pv = rows[r][c]
        if pv != 1:
            rows[r] = [x / pv for x in rows[r]]
        for i in range(nrows):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return QMatrix(rows), tuple(pivots)


class Subspace:
    """Subspace of Q^n with a canonical reduced-echelon basis.

    Structural equality of canonical subspaces is mathematical equality.
    Engine code may construct subspaces flagged non-canonical (basis in
    unit-transversal but not position-sorted echelon form); those compare
    via `same_space`.
    """

    __slots__ = ("ambient", "basis", "pivots", "canonical")

    def __init__(self, ambient, basis, pivots, canonical=True):
        self.ambient = ambient
        self.basis = tuple(tuple(_frac(x) for x in v) for v in basis)
        self.pivots = tuple(pivots)
        self.canonical = canonical

    @staticmethod
    def from_vectors(ambient, vectors):
        vectors = [v for v in vectors if any(_frac(x) != 0 for x in v)]
        if not vectors:
            return Subspace(ambient, (), ())
        red, piv = rref(QMatrix(vectors))
        basis = [red.data[i] for i in range(len(piv))]
        return Subspace(ambient, basis, piv)

    @staticmethod
    def zero(ambient):
        return Subspace(ambient, (), ())

    @staticmethod
    def full(ambient):
        return Subspace(
            ambient, QMatrix.identity(ambient).data, range(ambient)
        )

    @property
    def dim(self):
        return len(self.basis)

    def __eq__(self, other):
        return (
            isinstance(other, Subspace)
            and self.ambient == other.ambient
            and self.basis == other.basis
        )

    def __hash__(self):
        return hash((self.ambient, self.basis))

    def __repr__(self):
        return f"Subspace(dim {self.dim} of Q^{self.ambient})"

    def canonicalized(self):
        if self.canonical:
            return self
        return Subspace.from_vectors(self.ambient, self.basis)

    def coordinates(self, vec):
        """Coordinates of vec in the basis, or None if vec is outside.

        Basis vectors form a unit transversal over self.pivots, so the
        candidate coordinates are just the entries of vec at the pivots.
        """
        vec = [_frac(x) for x in vec]
        coords = [vec[p] for p in self.pivots]
        residual = list(vec)
        for cf, bv in zip(coords, self.basis):
            if cf:
                residual = [x - cf * y for x, y in zip(residual, bv)]
        if any(residual):
            return None
        return tuple(coords)

    def contains(self, vec):
        return self.coordinates(vec) is not None

    def same_space(self, other):
        """Mathematical equality regardless of canonical flags."""
        return (
            self.ambient == other.ambient
            and self.dim == other.dim
            and all(other.contains(v) for v in self.basis)
        )

    def matrix(self):
        return QMatrix(self.basis)


def kernel_basis(matrix):
    """Canonical basis of the right null space; dim = cols - rank."""
    nums_rows = []
    for row in matrix.data:
        nums, _ = fractions_to_vec(row)
        nums_rows.append(nums)
    vecs = [vec_to_fractions(n, d) for n, d in int_kernel(nums_rows, matrix.cols)]
    return Subspace.from_vectors(matrix.cols, vecs)


def restrict_operator(op, space):
    """Matrix of op in the basis of a stable subspace.

    Raises NotStable if op does not map the subspace into itself.
    """
    if op.cols != space.ambient:
        raise DimensionMismatch("operator and subspace ambient dimensions differ")
    cols = []
    for bv in space.basis:
        img = op.mul_vector(bv)
        coords = space.coordinates(img)
        if coords is None:
            raise NotStable("operator image leaves the subspace")
        cols.append(coords)
    # cols[i] are coordinates of op(b_i): transpose into matrix columns
    n = space.dim
    return QMatrix([[cols[j][i] for j in range(n)] for i in range(n)])


def intersect(a, b):
    """Canonical basis of the intersection of two subspaces."""
    if a.ambient != b.ambient:
        raise DimensionMismatch("ambient dimensions differ")
    if a.dim == 0 or b.dim == 0:
        return Subspace.zero(a.ambient)
    # x in A∩B  <=>  x = u·A_basis = v·B_basis: solve [A^T | -B^T] kernel
    stacked = [
        list(arow) + list(brow)
        for arow, brow in zip(
            zip(*[list(v) for v in a.basis]),
            zip(*[[-x for x in v] for v in b.basis]),
        )
    ]
    ker = kernel_basis(QMatrix(stacked))
    vecs = []
    for kv in ker.basis:
        u = kv[: a.dim]
        vec = [Fraction(0)] * a.ambient
        for cf, bv in zip(u, a.basis):
            if cf:
                vec = [x + cf * y for x, y in zip(vec, bv)]
        vecs.append(vec)
    return Subspace.from_vectors(a.ambient, vecs)


def subspace_sum(a, b):
    if a.ambient != b.ambient:
        raise DimensionMismatch("ambient dimensions differ")
    return Subspace.from_vectors(a.ambient, list(a.basis) + list(b.basis))


# ---------------------------------------------------------------------------
# integer eigenvalue splitting


def _clear_matrix(matrix):
    """(int rows, den) with matrix = rows/den."""
    den = 1
    for row in matrix.data:
        for x in row:
            den = den * x.denominator // gcd(den, x.denominator)
    rows = [[int(x * den) for x in row] for row in matrix.data]
    return rows, den


def _det_mod(rows, p):
    """Determinant of an integer matrix mod p via numpy elimination."""
    a = np.array([[x % p for x in row] for row in rows], dtype=np.int64)
    n = a.shape[0]
    det = 1
    for c in range(n):
        pr = None
        for i in range(c, n):
            if a[i, c]:
                pr = i
                break
        if pr is None:
            return 0
        if pr != c:
            a[[c, pr]] = a[[pr, c]]
            det = -det
        det = det * int(a[c, c]) % p
        inv = pow(int(a[c, c]), p - 2, p)
        a[c, c:] = a[c, c:] * inv % p
        for i in range(c + 1, n):
            f = int(a[i, c])
            if f:
                a[i, c:] = (a[i, c:] - f * a[c, c:]) % p
    return det % p


def _eigen_candidates(matrix, bound):
    """Integers a in [-bound, bound] with det(matrix - a) possibly zero."""
    rows, den = _clear_matrix(matrix)
    n = len(rows)
    cands = []
    for a in range(-bound, bound + 1):
        shifted = [
            [rows[i][j] - (a * den if i == j else 0) for j in range(n)]
            for i in range(n)
        ]
        if all(_det_mod(shifted, p) == 0 for p in _SCREEN_PRIMES):
            cands.append(a)
    return cands


def eigenspace(matrix, a):
    """ker(matrix - a·I) as a canonical subspace."""
    n = matrix.rows
    shifted = QMatrix(
        [
            [matrix.data[i][j] - (a if i == j else 0) for j in range(n)]
            for i in range(n)
        ]
    )
    return kernel_basis(shifted)


def integer_eigen_split(matrix, bound):
    """Split a square matrix by its integer eigenvalues within |a| <= bound.

    Returns (splits, remainder): splits is a list of (a, eigenspace) for
    each integer a with nontrivial kernel of (matrix - a), and remainder
    is a stable complement meeting no integer eigenspace.  Requires the
    matrix to act semisimply across the found eigenvalues (always the
    case for the commuting Hecke operators this engine feeds it);
    otherwise InternalInvariantError is raised.
    """
    if matrix.rows != matrix.cols:
        raise ValueError("square matrix required")
    if bound < 0:
        raise ValueError("bound must be >= 0")
    n = matrix.rows
    if n == 0:
        return [], Subspace.zero(0)
    splits = []
    for a in _eigen_candidates(matrix, bound):
        space = eigenspace(matrix, a)
        if space.dim:
            splits.append((a, space))
    if not splits:
        return [], Subspace.full(n)
    # remainder = image of prod (matrix - a): for semisimple action this is
    # the sum of all other (generalized) eigencomponents
    prod = QMatrix.identity(n)
    for a, _ in splits:
        shifted = QMatrix(
            [
                [matrix.data[i][j] - (a if i == j else 0) for j in range(n)]
                for i in range(n)
            ]
        )
        prod = shifted * prod
    remainder = Subspace.from_vectors(n, list(zip(*prod.data)))
    if sum(s.dim for _, s in splits) + remainder.dim != n:
        raise InternalInvariantError(
            "matrix is not semisimple across its integer eigenvalues"
        )
    return splits, remainder
