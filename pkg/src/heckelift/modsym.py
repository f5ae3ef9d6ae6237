"""Weight-k modular symbols for Gamma0(N) over exact rationals.

The space is presented by Manin symbols (i, (c:d)) with 0 <= i <= k-2 and
(c:d) in P^1(Z/N), modulo the two-term and three-term relations; the
quotient is cut out by one sparse exact elimination.  The cuspidal
subspace is the kernel of the boundary map to the cusp classes, Hecke and
U operators act through a fixed published family of integer matrices of
determinant n applied on the right of Manin symbols, and degeneracy maps
between levels N and lN realize the old/new decomposition.

Spaces are immutable once built; operators are cached by prime (cache
insertion is idempotent since values are deterministic).  Everything is
exact.
"""

from fractions import Fraction
from math import comb, gcd

from .arith import continued_fraction_convergents, gcdex, lift_to_sl2
from .dims import sturm_bound as _sturm
from .errors import (
    BadDivisor,
    InternalInvariantError,
    LevelTooSmall,
    UnsupportedWeight,
)
from .exactlin import QMatrix, Subspace, rref
from .intmat import EchelonBasis, IntOp, SparseEliminator, vec_strip
from .p1 import P1

_MEREL_CACHE = {}


def merel_matrices(n):
    """The fixed family X_n of integer matrices of determinant n whose
    right action on Manin symbols computes the n-th Hecke operator
    (U_n when n divides the level, with the usual zero convention for
    non-coprime images)."""
    if n in _MEREL_CACHE:
        return _MEREL_CACHE[n]
    out = []
    for a in range(1, n + 1):
        for d in range((n + a - 1) // a, n + 2 - a):
            bc = a * d - n
            if bc == 0:
                for b in range(a):
                    out.append((a, b, 0, d))
                for c in range(1, d):
                    out.append((a, 0, c, d))
            else:
                for b in range((bc - 1) // (d - 1) + 1, a):
                    if bc % b == 0:
                        out.append((a, b, bc // b, d))
    out = tuple(out)
    _MEREL_CACHE[n] = out
    return out


def sturm_bound(n, k):
    """floor(k*mu(N)/12), the congruence certification horizon."""
    return _sturm(n, k)


def _binom_pow(a, b, e):
    """Coefficient list of (a*X + b*Y)^e by X-degree."""
    return [comb(e, t) * a**t * b ** (e - t) for t in range(e + 1)]


def poly_compose(coeffs, mat, deg):
    """Coefficients of P(a*X+b*Y, c*X+d*Y) where P has the given
    X-degree coefficient list of homogeneous degree deg."""
    a, b, c, d = mat
    out = [0] * (deg + 1)
    for j, cf in enumerate(coeffs):
        if not cf:
            continue
        p1 = _binom_pow(a, b, j)
        p2 = _binom_pow(c, d, deg - j)
        for t, x in enumerate(p1):
            if not x:
                continue
            for s, y in enumerate(p2):
                if y:
                    out[t + s] += cf * x * y
    return out


def _normalize_cusp(u, v):
    g = gcd(u, v)
    if g:
        u, v = u // g, v // g
    if v < 0:
        u, v = -u, -v
    if v == 0:
        u = 1
    return u, v


def cusps_equivalent(c1, c2, n):
    """Gamma0(N)-equivalence of cusps given as coprime pairs (p, q)."""
    u1, v1 = c1
    u2, v2 = c2
    g1, s1, _ = gcdex(u1, v1)
    g2, s2, _ = gcdex(u2, v2)
    assert g1 == 1 and g2 == 1
    mod = gcd(v1 * v2, n)
    if mod == 0:
        mod = n
    return (s1 * v2 - s2 * v1) % mod == 0


class _VecAccum:
    """Accumulates rational vectors kept as integer arrays over one
    running denominator."""

    __slots__ = ("nums", "den")

    def __init__(self, m):
        self.nums = [0] * m
        self.den = 1

    def add(self, nums, den, coef):
        if den != self.den:
            g = gcd(self.den, den)
            f_self = den // g
            f_other = self.den // g
            if f_self != 1:
                self.nums = [x * f_self for x in self.nums]
                self.den *= f_self
        else:
            f_other = 1
        f = coef * f_other
        mine = self.nums
        for j, x in enumerate(nums):
            if x:
                mine[j] += f * x
    def add_unit(self, j, coef):
        self.nums[j] += coef * self.den

    def value(self):
        return vec_strip(self.nums, self.den)


class ModSymSpace:
    """Relation-quotient presentation of weight-k modular symbols for
    Gamma0(N), N >= 5, k >= 2 even (trivial character)."""

    def __init__(self, n, k):
        if k < 2 or k % 2:
            raise UnsupportedWeight(f"weight {k} is not an even integer >= 2")
        if n < 5:
            raise LevelTooSmall(f"level {n} < 5")
        self.N = n
        self.k = k
        self.deg = k - 2
        self.p1 = P1(n)
        self.n_p1 = len(self.p1)
        self.n_sym = (k - 1) * self.n_p1
        self._build_presentation()
        self._hecke = {}
        self._star = None
        self._rowcache = {}
        self._subspaces = {}
        self._boundary = None

    # -- symbols ----------------------------------------------------------

    def sym_index(self, i, p1_index):
        return i * self.n_p1 + p1_index

    def sym_parts(self, s):
        return divmod(s, self.n_p1)

    def _build_presentation(self):
        np1 = self.n_p1
        deg = self.deg
        pts = self.p1.points
        idx = self.p1.index_of

        # two-term identifications: x + (-1)^i * x|sigma = 0
        sigma = [None] * self.n_sym  # sym -> (coef, rep) or 'zero'
        for s in range(self.n_sym):
            if sigma[s] is not None:
                continue
            i, xi = self.sym_parts(s)
            c, d = pts[xi]
            t = self.sym_index(deg - i, idx(d, -c))
            if t == s:
                sigma[s] = "zero" if i % 2 == 0 else (1, s)
            else:
                sigma[s] = (1, s)
                sigma[t] = (-((-1) ** i), s)
        self._sigma = sigma

        reps = sorted({tgt for e in sigma if e != "zero" for _, tgt in [e]})
        rep_col = {r: j for j, r in enumerate(reps)}
        ncols = len(reps)

        # three-term relations over the surviving representatives
        seen = set()
        rows = []
        colfreq = {}
        for s in range(self.n_sym):
            i, xi = self.sym_parts(s)
            c, d = pts[xi]
            terms = [(1, s)]
            xt = idx(d, -c - d)
            for j in range(deg - i + 1):
                cf = (-1) ** (deg + j) * comb(deg - i, j)
                terms.append((cf, self.sym_index(j, xt)))
            xt2 = idx(-c - d, c)
            for j in range(i + 1):
                cf = (-1) ** (deg - i + j) * comb(i, j)
                terms.append((cf, self.sym_index(deg - i + j, xt2)))
            row = {}
            for cf, t in terms:
                e = sigma[t]
                if e == "zero":
                    continue
                c2, rep = e
                col = rep_col[rep]
                nv = row.get(col, 0) + cf * c2
                if nv:
                    row[col] = nv
                else:
                    row.pop(col, None)
            if not row:
                continue
            # sign/gcd-normalized dedup key
            items = sorted(row.items())
            g = 0
            for _, v in items:
                g = gcd(g, v)
            if items[0][1] < 0:
                g = -g
            key = tuple((cc, v // g) for cc, v in items)
            if key in seen:
                continue
            seen.add(key)
            row = dict(key)
            rows.append(row)
            for cc in row:
                colfreq[cc] = colfreq.get(cc, 0) + 1

        elim = SparseEliminator(ncols, col_weight=colfreq)
        elim.add_rows(rows)
        reduced = elim.reduced_rows()

        free_cols = [c for c in range(ncols) if c not in reduced]
        self.free = [reps[c] for c in free_cols]
        self.dimension = len(self.free)
        free_pos = {c: j for j, c in enumerate(free_cols)}

        # expansion of each representative over the free generators
        m = self.dimension
        exp = {}
        for j, c in enumerate(free_cols):
            exp[c] = ("u", j)
        for c, row in reduced.items():
            pv = row[c]
            nums = [0] * m
            for cc, v in row.items():
                if cc != c:
                    nums[free_pos[cc]] = -v
            nums, den = vec_strip(nums, pv)
            exp[c] = ("r", nums, den)
        self._rep_expansion = exp
        self._rep_col = rep_col

    def expansion(self, s):
        """Expansion of a Manin symbol over the free generators:
        ('z',) | ('u', j, coef) | ('r', nums, den, coef)."""
        e = self._sigma[s]
        if e == "zero":
            return ("z",)
        coef, rep = e
        kind = self._rep_expansion[self._rep_col[rep]]
        if kind[0] == "u":
            return ("u", kind[1], coef)
        return ("r", kind[1], kind[2], coef)

    def expansion_entry(self, s, t):
        """Coordinate t of the expansion of symbol s, as (num, den)."""
        e = self.expansion(s)
        if e[0] == "z":
            return 0, 1
        if e[0] == "u":
            return (e[2], 1) if e[1] == t else (0, 1)
        return e[1][t] * e[3], e[2]

    def _accumulate_terms(self, acc, terms):
        for coef, s in terms:
            e = self.expansion(s)
            if e[0] == "z":
                continue
            if e[0] == "u":
                acc.add_unit(e[1], coef * e[2])
            else:
                acc.add(e[1], e[2], coef * e[3])

    # -- group/Hecke actions on symbols -----------------------------------

    def symbol_action_terms(self, s, mat):
        """Right action of an integer 2x2 matrix on a Manin symbol, as a
        list of (coef, symbol) with the zero convention for non-coprime
        images."""
        i, xi = self.sym_parts(s)
        c, d = self.p1.points[xi]
        a, b, c2, d2 = mat
        c1 = c * a + d * c2
        d1 = c * b + d * d2
        target = self.p1.index_of(c1, d1)
        if target < 0:
            return []
        poly = poly_compose(
            [1 if j == i else 0 for j in range(self.deg + 1)], mat, self.deg
        )
        base = target
        return [
            (cf, self.sym_index(j, base)) for j, cf in enumerate(poly) if cf
        ]

    def _op_from_symbol_map(self, image_terms):
        """Operator whose column j is the expansion of image_terms(free_j)."""
        cols = []
        for g in self.free:
            acc = _VecAccum(self.dimension)
            self._accumulate_terms(acc, image_terms(g))
            cols.append(acc.value())
        return IntOp.from_columns(cols, self.dimension)

    def hecke_op(self, q):
        """T_q (U_q for q | N) as an integer operator on the quotient."""
        op = self._hecke.get(q)
        if op is None:
            mats = merel_matrices(q)
            op = self._op_from_symbol_map(
                lambda s: [
                    t for h in mats for t in self.symbol_action_terms(s, h)
                ]
            )
            self._hecke[q] = op
        return op

    def hecke_matrix(self, q):
        """T_q (or U_q) on the full quotient space, exact rational."""
        return QMatrix(self.hecke_op(q).to_fraction_rows())

    def star_op(self):
        """Involution induced by (-1, 0; 0, 1); squares to the identity."""
        if self._star is None:
            self._star = self._op_from_symbol_map(
                lambda s: self._star_terms(s)
            )
        return self._star

    def _star_terms(self, s):
        i, xi = self.sym_parts(s)
        c, d = self.p1.points[xi]
        return [((-1) ** i, self.sym_index(i, self.p1.index_of(-c, d)))]

    def star_matrix(self):
        return QMatrix(self.star_op().to_fraction_rows())

    # -- boundary ----------------------------------------------------------

    def boundary_data(self):
        """(rows, cusp_reps): integer boundary matrix rows (as dicts) and
        the list of cusp class representatives."""
        if self._boundary is None:
            reps = []
            rows = []

            def cusp_class(u, v):
                cu = _normalize_cusp(u, v)
                for ci, other in enumerate(reps):
                    if cusps_equivalent(cu, other, self.N):
                        return ci
                reps.append(cu)
                rows.append({})
                return len(reps) - 1

            for j, s in enumerate(self.free):
                i, xi = self.sym_parts(s)
                c, d = self.p1.points[xi]
                a, b, c0, d0 = lift_to_sl2(c, d, self.N)
                if i == self.deg:
                    ci = cusp_class(a, c0)
                    rows[ci][j] = rows[ci].get(j, 0) + 1
                if i == 0:
                    ci = cusp_class(b, d0)
                    rows[ci][j] = rows[ci].get(j, 0) - 1
            rows = [r for r in rows if r]
            self._boundary = (rows, reps)
        return self._boundary

    def boundary_matrix(self):
        """Matrix of the boundary map to the cusp space."""
        rows, reps = self.boundary_data()
        dense = [[0] * self.dimension for _ in reps]
        for i, r in enumerate(rows):
            for j, v in r.items():
                dense[i][j] = v
        return QMatrix(dense)

    def num_cusp_classes(self):
        return len(self.boundary_data()[1])

    # -- distinguished subspaces -------------------------------------------

    def _kernel_of_rows(self, rows):
        elim = SparseEliminator(self.dimension)
        elim.add_rows([dict(r) for r in rows if r])
        basis = elim.kernel()
        return EchelonBasis.from_kernel(basis, self.dimension)

    def _star_sign_rows(self, sign):
        """Rows of (star - sign), integer-cleared, as dicts."""
        op = self.star_op()
        rows = []
        for i, row in enumerate(op.rows):
            d = {j: v for j, v in enumerate(row) if v}
            d[i] = d.get(i, 0) - sign * op.den
            if not d[i]:
                del d[i]
            if d:
                rows.append(d)
        return rows

    def _op_rows_as_dicts(self, op):
        out = []
        for row in op.rows:
            d = {j: v for j, v in enumerate(row) if v}
            if d:
                out.append(d)
        return out

    def subspace_basis(self, *, cuspidal=False, sign=0, extra_ops=()):
        """Kernel of the stacked constraints: boundary map (cuspidal),
        (star - sign) for sign = +1/-1, plus any extra operators whose
        kernel is wanted (degeneracy maps).  Cached by constraint key."""
        key = (cuspidal, sign, tuple(id(op) for op in extra_ops))
        hit = self._subspaces.get(key)
        if hit is not None:
            return hit
        rows = []
        if cuspidal:
            rows.extend(self.boundary_data()[0])
        if sign:
            rows.extend(self._star_sign_rows(sign))
        for op in extra_ops:
            rows.extend(self._op_rows_as_dicts(op))
        basis = self._kernel_of_rows(rows)
        self._subspaces[key] = basis
        return basis

    def cuspidal_basis(self):
        return self.subspace_basis(cuspidal=True)

    def plus_cuspidal_basis(self):
        return self.subspace_basis(cuspidal=True, sign=1)

    def cuspidal_subspace(self):
        """Cuspidal subspace as a Subspace value (kernel of the boundary
        map; Hecke stable)."""
        return _to_subspace(self.cuspidal_basis())

    def plus_subspace(self):
        """+1 eigenspace of the star involution inside the cuspidal
        subspace."""
        return _to_subspace(self.plus_cuspidal_basis())

    # -- per-line eigenvalues ----------------------------------------------

    def hecke_coordinate_row(self, q, t):
        """Row t of T_q: the linear functional v -> (T_q v)_t, as
        (nums, den) over the free generators."""
        key = (q, t)
        hit = self._rowcache.get(key)
        if hit is not None:
            return hit
        mats = merel_matrices(q)
        vals = []
        den = 1
        for g in self.free:
            num = 0
            vden = 1
            for h in mats:
                for coef, s in self.symbol_action_terms(g, h):
                    en, ed = self.expansion_entry(s, t)
                    if en:
                        if ed != vden:
                            g2 = gcd(vden, ed)
                            f_old = ed // g2
                            num *= f_old
                            vden *= f_old
                        num += coef * en * (vden // ed)
            vals.append((num, vden))
            den = den * vden // gcd(den, vden)
        nums = [n * (den // d) for n, d in vals]
        row = vec_strip(nums, den)
        self._rowcache[key] = row
        return row

    def eigenvalue_on_line(self, line, q):
        """Eigenvalue of T_q on a 1-dimensional stable line given as a
        (nums, den) vector in quotient coordinates."""
        nums, _ = line
        t = next(j for j, x in enumerate(nums) if x)
        rn, rd = self.hecke_coordinate_row(q, t)
        num = sum(a * b for a, b in zip(rn, nums))
        return Fraction(num, rd * nums[t])

    # -- paths ---------------------------------------------------------------

    def path_vector(self, frm, to, poly):
        """The modular symbol {frm, to} tensor poly in quotient coordinates.

        Endpoints are rational pairs (num, den) with den = 0 for the
        infinite cusp; poly is an X-degree coefficient list of degree
        k - 2.  Returns (nums, den).
        """
        acc = _VecAccum(self.dimension)
        self._psi(acc, to, poly, +1)
        self._psi(acc, frm, poly, -1)
        return acc.value()

    def _psi(self, acc, endpoint, poly, sign):
        """Accumulate sign * {infinity, endpoint} tensor poly."""
        num, den = endpoint
        if den == 0:
            return
        g = gcd(num, den)
        if g:
            num, den = num // g, den // g
        if den < 0:
            num, den = -num, -den
        convs = continued_fraction_convergents(num, den)
        prev = (1, 0)
        for j, (p, q) in enumerate(convs):
            # det(p, s*p'; q, s*q') = s*(p*q' - p'*q) = s*(-1)^(j-1), so
            # s = (-1)^(j-1) makes each piece unimodular
            s = -1 if j % 2 == 0 else 1
            gmat = (p, s * prev[0], q, s * prev[1])
            self._accumulate_path_piece(acc, gmat, poly, sign)
            prev = (p, q)

    def _accumulate_path_piece(self, acc, gmat, poly, sign):
        a, b, c, d = gmat
        assert a * d - b * c == 1, "path piece must be unimodular"
        comp = poly_compose(poly, gmat, self.deg)
        target = self.p1.index_of(c, d)
        if target < 0:
            raise InternalInvariantError("unimodular bottom row not coprime")
        terms = [
            (sign * cf, self.sym_index(j, target))
            for j, cf in enumerate(comp)
            if cf
        ]
        self._accumulate_terms(acc, terms)


def _to_subspace(basis):
    vecs = [
        tuple(Fraction(x, den) for x in nums) for nums, den in basis.rows
    ]
    return Subspace(basis.ambient, vecs, basis.pivots, canonical=False)


def build_space(n, k):
    """Construct the weight-k modular symbol space for Gamma0(N)."""
    return ModSymSpace(n, k)


# ---------------------------------------------------------------------------
# maps between levels


def degeneracy_op(big, small, t):
    """Level-lowering map from level l*N to level N for t in {1, l},
    induced by the identity and by conjugation by diag(l, 1).

    Returns an IntOp with small.dimension rows and big.dimension columns.
    Hecke-equivariant away from l.
    """
    if big.k != small.k:
        raise BadDivisor("weights differ")
    if big.N % small.N:
        raise BadDivisor("small level must divide the big level")
    ell = big.N // small.N
    if t not in (1, ell):
        raise BadDivisor(f"t must be 1 or {ell}")
    deg = big.deg
    cols = []
    if t == 1:
        for s in big.free:
            i, xi = big.sym_parts(s)
            c, d = big.p1.points[xi]
            acc = _VecAccum(small.dimension)
            small._accumulate_terms(
                acc, [(1, small.sym_index(i, small.p1.index_of(c, d)))]
            )
            cols.append(acc.value())
    else:
        for s in big.free:
            i, xi = big.sym_parts(s)
            c, d = big.p1.points[xi]
            a, b, c0, d0 = lift_to_sl2(c, d, big.N)
            # {g0, g:inf} tensor P with P = X^i Y^(k-2-i) carried through
            # g^-1, then the diag(l, 1) twist (X, Y) -> (X, l*Y)
            ginv = (d0, -b, -c0, a)
            base = [1 if j == i else 0 for j in range(deg + 1)]
            q = poly_compose(base, ginv, deg)
            qtw = [q[j] * ell ** (deg - j) for j in range(deg + 1)]
            vec = small.path_vector((ell * b, d0), (ell * a, c0), qtw)
            cols.append(vec)
    return IntOp.from_columns(cols, small.dimension)


def degeneracy_map(big, small, t):
    """Degeneracy map as an exact rational matrix."""
    return QMatrix(degeneracy_op(big, small, t).to_fraction_rows())


def transfer_op(big, small):
    """Level-raising transfer from level N to level l*N: a Manin symbol
    maps to the sum of the symbols over the fiber of P^1(Z/lN) ->
    P^1(Z/N), same monomial index.  Returns an IntOp with big.dimension
    rows and small.dimension columns."""
    if big.N % small.N:
        raise BadDivisor("small level must divide the big level")
    fiber = {}
    for yi, (c, d) in enumerate(big.p1.points):
        xi = small.p1.index_of(c, d)
        if xi >= 0:
            fiber.setdefault(xi, []).append(yi)
    cols = []
    for s in small.free:
        i, xi = small.sym_parts(s)
        acc = _VecAccum(big.dimension)
        big._accumulate_terms(
            acc,
            [(1, big.sym_index(i, yi)) for yi in fiber.get(xi, ())],
        )
        cols.append(acc.value())
    return IntOp.from_columns(cols, big.dimension)


def l_new_basis(big, small, ell):
    """Cuspidal l-new subspace of the big space: cuspidal vectors killed
    by both degeneracy maps down to level N = big.N / l."""
    if big.N != small.N * ell:
        raise BadDivisor("levels must satisfy big = l * small")
    d1 = degeneracy_op(big, small, 1)
    dl = degeneracy_op(big, small, ell)
    return big.subspace_basis(cuspidal=True, extra_ops=(d1, dl))


def l_new_subspace(big, small, ell):
    return _to_subspace(l_new_basis(big, small, ell))


def plus_l_new_basis(big, small, ell):
    d1 = degeneracy_op(big, small, 1)
    dl = degeneracy_op(big, small, ell)
    return big.subspace_basis(cuspidal=True, sign=1, extra_ops=(d1, dl))


def old_basis_and_transport(big, small, ell):
    """The cuspidal l-old subspace and the transported level-N Hecke
    operator at l.

    The old space is spanned by the transfer image of the small cuspidal
    space together with its U_l translate.  Returns (basis, t_tilde,
    u_on_old) with t_tilde the matrix (Fraction rows) of the transported
    T_l and u_on_old the restriction of U_l, both in the old basis.
    """
    up = transfer_op(big, small)
    ul = big.hecke_op(ell)
    small_cusp = small.cuspidal_basis()
    rows0, den0 = small_cusp.int_rows()
    up_rows, up_den = up.apply_to_rows(rows0, den0)
    u_rows, u_den = ul.apply_to_rows(up_rows, up_den)
    vecs = [vec_strip(r, up_den) for r in up_rows] + [
        vec_strip(r, u_den) for r in u_rows
    ]
    basis = _echelonize_vectors(vecs, big.dimension)
    u_on_old = QMatrix(basis.restrict(ul))
    # transported T_l: image of each spanning vector under the transport
    tl_small = small.hecke_op(ell)
    tl_rows, tl_den = tl_small.apply_to_rows(rows0, den0)
    tup_rows, tup_den = up.apply_to_rows(tl_rows, tl_den)
    tuu_rows, tuu_den = ul.apply_to_rows(tup_rows, tup_den)
    # images of the spanning set under T_l-tilde, in old coordinates
    img_vecs = [vec_strip(r, tup_den) for r in tup_rows] + [
        vec_strip(r, tuu_den) for r in tuu_rows
    ]
    span_vecs = vecs
    t_tilde = _operator_in_basis(basis, span_vecs, img_vecs)
    return basis, t_tilde, u_on_old


def _echelonize_vectors(vecs, ambient):
    """Unit-transversal echelon basis of the span of (nums, den) vectors."""
    elim = SparseEliminator(ambient)
    rows = []
    for nums, _ in vecs:
        d = {j: v for j, v in enumerate(nums) if v}
        if d:
            rows.append(d)
    elim.add_rows(rows)
    reduced = elim.reduced_rows()
    # the span of the vectors = row space; pivot rows in reduced echelon
    # form give a unit-transversal basis directly
    basis = []
    pivots = []
    for c in sorted(reduced):
        row = reduced[c]
        nums = [0] * ambient
        for cc, v in row.items():
            nums[cc] = v
        basis.append(vec_strip(nums, row[c]))
        pivots.append(c)
    return EchelonBasis(ambient, basis, pivots)


def _operator_in_basis(basis, span_vecs, img_vecs):
    """Matrix of the linear map sending span_vecs[i] -> img_vecs[i], in
    the coordinates of an echelon basis of their common span.  The map
    must be well defined and fully determined; verified exactly."""
    n = basis.dim
    span_coords = [basis.coordinates(v, d, check=True) for v, d in span_vecs]
    img_coords = [basis.coordinates(v, d, check=True) for v, d in img_vecs]
    if any(c is None for c in span_coords) or any(c is None for c in img_coords):
        raise InternalInvariantError("vectors outside their own span")
    # want X with X * span_coords_i = img_coords_i for all i, i.e.
    # A^T X^T = B^T with A, B holding the coordinate vectors as columns;
    # row-reduce [A^T | B^T] and read the solution off the pivots
    aug = QMatrix(
        [list(sc) + list(ic) for sc, ic in zip(span_coords, img_coords)]
    )
    red, piv = rref(aug)
    if any(c >= n for c in piv):
        raise InternalInvariantError("transported operator is inconsistent")
    if len(piv) < n:
        raise InternalInvariantError("spanning set does not determine the map")
    x = [[Fraction(0)] * n for _ in range(n)]
    for i, c in enumerate(piv):
        for j in range(n):
            x[j][c] = red.data[i][n + j]
    return QMatrix(x)
