"""Exact rational linear algebra: hand oracles and random property checks."""

import random
from fractions import Fraction

import pytest

from heckelift.errors import DimensionMismatch, NotStable
from heckelift.exactlin import (
    QMatrix,
    Subspace,
    integer_eigen_split,
    intersect,
    kernel_basis,
    restrict_operator,
    rref,
    subspace_sum,
)


def test_rref_identity():
    m = QMatrix.identity(3)
    red, piv = rref(m)
    assert red == m
    assert piv == (0, 1, 2)


def test_rref_zero():
    m = QMatrix.zero(2, 3)
    red, piv = rref(m)
    assert red == m
    assert piv == ()


def test_rref_hand_reduction():
    # hand row-reduction: R2 <- R2 - (1/2) R1, R1 <- R1/2
    red, piv = rref(QMatrix([[2, 4], [1, 2]]))
    assert red == QMatrix([[1, 2], [0, 0]])
    assert piv == (0,)


def test_rref_idempotent_and_rank_preserving():
    rng = random.Random(7)
    for _ in range(25):
        rows = rng.randrange(1, 5)
        cols = rng.randrange(1, 5)
        m = QMatrix(
            [[Fraction(rng.randrange(-4, 5), rng.randrange(1, 4)) for _ in range(cols)] for _ in range(rows)]
        )
        red, piv = rref(m)
        again, piv2 = rref(red)
        assert again == red and piv2 == piv
        assert m.rank() == len(piv)


def test_kernel_identity_and_zero():
    assert kernel_basis(QMatrix.identity(2)).dim == 0
    full = kernel_basis(QMatrix.zero(2, 2))
    assert full.dim == 2
    assert full == Subspace.full(2)


def test_kernel_single_equation():
    # solve x + y = 0 by hand: kernel is the line through (1, -1)
    ker = kernel_basis(QMatrix([[1, 1]]))
    assert ker.dim == 1
    assert ker.basis == ((Fraction(1), Fraction(-1)),)


def test_kernel_dimension_formula():
    rng = random.Random(21)
    for _ in range(20):
        rows = rng.randrange(1, 5)
        cols = rng.randrange(1, 6)
        m = QMatrix([[rng.randrange(-3, 4) for _ in range(cols)] for _ in range(rows)])
        assert kernel_basis(m).dim == cols - m.rank()
        for v in kernel_basis(m).basis:
            assert all(x == 0 for x in m.mul_vector(v))


def test_restrict_scalar():
    two = 2 * QMatrix.identity(3)
    s = Subspace.from_vectors(3, [[1, 1, 0], [0, 0, 1]])
    assert restrict_operator(two, s) == 2 * QMatrix.identity(2)


def test_restrict_diagonal_line():
    t = QMatrix([[1, 0], [0, 2]])
    s = Subspace.from_vectors(2, [[0, 1]])
    assert restrict_operator(t, s) == QMatrix([[2]])


def test_restrict_not_stable():
    rot = QMatrix([[0, -1], [1, 0]])
    axis = Subspace.from_vectors(2, [[1, 0]])
    with pytest.raises(NotStable):
        restrict_operator(rot, axis)


def test_restrict_commutes_with_inclusion():
    rng = random.Random(5)
    t = QMatrix([[1, 2, 0], [0, 3, 0], [0, 0, 3]])
    s = Subspace.from_vectors(3, [[0, 0, 1], [1, 1, 0]])
    # s is t-stable: t(0,0,1) = (0,0,3); t(1,1,0) = (3,3,0)
    r = restrict_operator(t, s)
    for coords_idx, bv in enumerate(s.basis):
        img = t.mul_vector(bv)
        unit = [Fraction(1) if i == coords_idx else Fraction(0) for i in range(s.dim)]
        rcoords = r.mul_vector(unit)
        rebuilt = [Fraction(0)] * 3
        for cf, b in zip(rcoords, s.basis):
            rebuilt = [x + cf * y for x, y in zip(rebuilt, b)]
        assert tuple(rebuilt) == tuple(img)


def test_eigen_split_scalar():
    splits, rem = integer_eigen_split(3 * QMatrix.identity(2), 5)
    assert len(splits) == 1
    a, space = splits[0]
    assert a == 3 and space.dim == 2 and rem.dim == 0


def test_eigen_split_rotation_has_no_real_eigenvalues():
    splits, rem = integer_eigen_split(QMatrix([[0, -1], [1, 0]]), 5)
    assert splits == []
    assert rem.dim == 2


def test_eigen_split_diagonal_partial_window():
    # direct read-off: eigenvalues 1 and 7, but only 1 is inside |a| <= 5
    splits, rem = integer_eigen_split(QMatrix([[1, 0], [0, 7]]), 5)
    assert [(a, s.dim) for a, s in splits] == [(1, 1)]
    assert rem.dim == 1
    assert rem.contains([0, 1])


def test_eigen_split_exactness_and_direct_sum():
    rng = random.Random(11)
    for _ in range(10):
        # conjugate a diagonal matrix by a unimodular matrix
        d = [rng.randrange(-3, 4) for _ in range(3)]
        u = QMatrix([[1, rng.randrange(-2, 3), rng.randrange(-2, 3)],
                     [0, 1, rng.randrange(-2, 3)],
                     [0, 0, 1]])
        uinv_rows, piv = rref(QMatrix([list(r) + list(i) for r, i in zip(u.data, QMatrix.identity(3).data)]))
        uinv = QMatrix([row[3:] for row in uinv_rows.data])
        t = u * QMatrix([[d[0], 0, 0], [0, d[1], 0], [0, 0, d[2]]]) * uinv
        splits, rem = integer_eigen_split(t, 4)
        assert sum(s.dim for _, s in splits) + rem.dim == 3
        assert sorted(a for a, _ in splits) == sorted(set(d))
        for a, space in splits:
            for v in space.basis:
                assert t.mul_vector(v) == tuple(a * x for x in v)


def test_intersect_self_and_planes():
    a = Subspace.from_vectors(3, [[1, 0, 0], [0, 1, 0]])
    assert intersect(a, a) == a
    b = Subspace.from_vectors(3, [[0, 1, 0], [0, 0, 1]])
    shared = intersect(a, b)
    assert shared.dim == 1
    assert shared.contains([0, 1, 0])


def test_intersect_dimension_formula_random():
    rng = random.Random(33)
    for _ in range(20):
        a = Subspace.from_vectors(3, [[rng.randrange(-3, 4) for _ in range(3)] for _ in range(2)])
        b = Subspace.from_vectors(3, [[rng.randrange(-3, 4) for _ in range(3)] for _ in range(2)])
        cap = intersect(a, b)
        total = subspace_sum(a, b)
        assert cap.dim == a.dim + b.dim - total.dim
        for v in cap.basis:
            assert a.contains(v) and b.contains(v)


def test_intersect_commutative_associative_idempotent():
    rng = random.Random(9)
    spaces = [
        Subspace.from_vectors(4, [[rng.randrange(-2, 3) for _ in range(4)] for _ in range(2)])
        for _ in range(3)
    ]
    a, b, c = spaces
    assert intersect(a, b) == intersect(b, a)
    assert intersect(intersect(a, b), c) == intersect(a, intersect(b, c))
    assert intersect(a, a) == a


def test_intersect_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        intersect(Subspace.full(2), Subspace.full(3))


def test_subspace_canonical_equality():
    # same plane presented two ways compares equal structurally
    a = Subspace.from_vectors(3, [[1, 1, 0], [0, 1, 1]])
    b = Subspace.from_vectors(3, [[1, 2, 1], [1, 0, -1]])
    assert a == b
