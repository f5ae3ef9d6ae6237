"""Arithmetic over Z/p^r checked against brute-force enumeration oracles."""

import random
from fractions import Fraction
from itertools import product

import pytest

from heckelift.errors import (
    DenominatorNotUnit,
    NonResidue,
    NoSolution,
    NotUnit,
    ZeroInput,
)
from heckelift.zpr import (
    PrimePower,
    ZmodPr,
    ZmodPrMatrix,
    hensel_sqrt,
    howell_form,
    kernel_modpr,
    member_of_span,
    reduce_mod,
    solve,
    valp,
)


def test_prime_power_validation():
    with pytest.raises(ValueError):
        PrimePower(2, 3)
    with pytest.raises(ValueError):
        PrimePower(9, 1)
    with pytest.raises(ValueError):
        PrimePower(5, 0)
    assert PrimePower(3, 3).modulus == 27


def test_valp_basics():
    assert valp(27, 3) == 3
    # -539 = (-19)^2 - 900 = -7^2 * 11
    assert (-19) ** 2 - (5 + 1) ** 2 * 5**2 == -539
    assert valp(-539, 7) == 2
    assert valp(Fraction(3, 7), 7) == -1
    assert valp(Fraction(3, 7), 3) == 1
    with pytest.raises(ZeroInput):
        valp(0, 5)


def test_valp_multiplicative_random():
    rng = random.Random(1)
    for _ in range(200):
        p = rng.choice([3, 5, 7])
        x = Fraction(rng.randrange(-50, 51) or 1, rng.randrange(1, 30))
        y = Fraction(rng.randrange(-50, 51) or 1, rng.randrange(1, 30))
        assert valp(x * y, p) == valp(x, p) + valp(y, p)


def test_valuation_ultrametric():
    rng = random.Random(2)
    for _ in range(300):
        p = rng.choice([3, 5])
        x = Fraction(rng.randrange(-40, 41) or 1, rng.randrange(1, 20))
        y = Fraction(rng.randrange(-40, 41) or 1, rng.randrange(1, 20))
        if x + y == 0:
            continue
        vx, vy = valp(x, p), valp(y, p)
        assert valp(x + y, p) >= min(vx, vy)
        if vx != vy:
            assert valp(x + y, p) == min(vx, vy)


def test_reduce_examples():
    assert reduce_mod(-3, PrimePower(3, 3)).v == 24
    # brute force: 2*5 = 10 = 9 + 1
    assert reduce_mod(Fraction(1, 2), PrimePower(3, 2)).v == 5
    with pytest.raises(DenominatorNotUnit):
        reduce_mod(Fraction(1, 3), PrimePower(3, 2))


def test_reduce_is_ring_homomorphism():
    rng = random.Random(3)
    m = PrimePower(5, 3)
    for _ in range(200):
        x = Fraction(rng.randrange(-99, 100), rng.choice([1, 2, 3, 4, 6, 7, 8, 9]))
        y = Fraction(rng.randrange(-99, 100), rng.choice([1, 2, 3, 4, 6, 7, 8, 9]))
        assert reduce_mod(x + y, m) == reduce_mod(x, m) + reduce_mod(y, m)
        assert reduce_mod(x * y, m) == reduce_mod(x, m) * reduce_mod(y, m)


def test_hensel_sqrt_examples():
    m = PrimePower(3, 3)
    roots = hensel_sqrt(ZmodPr(m, 4))
    assert {r.v for r in roots} == {2, 25}
    # brute force over residues 0..8: only 4,5 square to 7 mod 9
    m2 = PrimePower(3, 2)
    brute = {x for x in range(9) if x * x % 9 == 7}
    assert brute == {4, 5}
    assert {r.v for r in hensel_sqrt(ZmodPr(m2, 7))} == brute
    # 2 is not a QR mod 5 (brute force: squares mod 5 are {0,1,4})
    assert {x * x % 5 for x in range(5)} == {0, 1, 4}
    with pytest.raises(NonResidue):
        hensel_sqrt(ZmodPr(PrimePower(5, 2), 2))
    with pytest.raises(NotUnit):
        hensel_sqrt(ZmodPr(PrimePower(3, 2), 3))


def test_hensel_sqrt_exhaustive():
    # every unit square root recovered, p <= 13, r <= 4 (sizes kept small)
    for p in (3, 5, 7, 11, 13):
        for r in (1, 2, 3, 4):
            if p**r > 2500:
                continue
            m = PrimePower(p, r)
            for root in range(1, m.modulus):
                if root % p == 0:
                    continue
                sq = ZmodPr(m, root * root)
                got = {x.v for x in hensel_sqrt(sq)}
                assert got == {root % m.modulus, (-root) % m.modulus}


def _span_brutal(m, rows):
    """All vectors in the row span of `rows` over Z/p^r, by enumeration."""
    mod = m.modulus
    if not rows:
        return {()}
    n = len(rows[0])
    out = set()
    for coeffs in product(range(mod), repeat=len(rows)):
        v = tuple(sum(c * row[j] for c, row in zip(coeffs, rows)) % mod for j in range(n))
        out.add(v)
    return out


def test_howell_identity_and_torsion():
    m = PrimePower(5, 2)
    ident = ZmodPrMatrix(m, [[1, 0], [0, 1]])
    assert howell_form(ident) == ident
    tor = ZmodPrMatrix(m, [[5]])
    assert howell_form(tor) == tor


def test_howell_span_equality_brute():
    # [[2,4],[0,5]] mod 25: Howell form must have the same span
    m = PrimePower(5, 2)
    mat = ZmodPrMatrix(m, [[2, 4], [0, 5]])
    h = howell_form(mat)
    assert _span_brutal(m, [list(r) for r in mat.data]) == _span_brutal(
        m, [list(r) for r in h.data]
    )
    assert howell_form(h) == h


def test_howell_canonical_random():
    # random small matrices over Z/9 and Z/25: equal spans <=> equal forms
    for p in (3, 5):
        m = PrimePower(p, 2)
        rng = random.Random(10 * p)
        mats = []
        for _ in range(40):
            rows = rng.randrange(1, 3)
            data = [[rng.randrange(m.modulus) for _ in range(2)] for _ in range(rows)]
            mats.append(ZmodPrMatrix(m, data))
        spans = [frozenset(_span_brutal(m, [list(r) for r in mt.data])) for mt in mats]
        forms = [howell_form(mt) for mt in mats]
        for i in range(len(mats)):
            assert howell_form(forms[i]) == forms[i]
            for j in range(i + 1, len(mats)):
                assert (spans[i] == spans[j]) == (forms[i] == forms[j]), (
                    mats[i].data,
                    mats[j].data,
                )


def test_solve_identity():
    m = PrimePower(3, 2)
    a = ZmodPrMatrix(m, [[1, 0], [0, 1]])
    x, ker = solve(a, [4, 7])
    assert x == [4, 7]
    assert ker == []


def test_solve_torsion_cases():
    m = PrimePower(3, 2)
    a = ZmodPrMatrix(m, [[3]])
    with pytest.raises(NoSolution):
        solve(a, [1])
    x, ker = solve(a, [3])
    assert (3 * x[0]) % 9 == 3
    # kernel generated by [3]: brute force over Z/9
    brute_ker = {x for x in range(9) if (3 * x) % 9 == 0}
    assert brute_ker == {0, 3, 6}
    got = _span_brutal(m, ker) if ker else {(0,)}
    assert {v[0] for v in got} == brute_ker


def test_solve_and_kernel_exhaustive_mod9():
    # 2x2 and 2x3 systems over Z/9, checked against full enumeration
    m = PrimePower(3, 2)
    rng = random.Random(77)
    for trial in range(60):
        cols = rng.choice([2, 3])
        a = ZmodPrMatrix(m, [[rng.randrange(9) for _ in range(cols)] for _ in range(2)])
        b = [rng.randrange(9) for _ in range(2)]
        truth = {
            x
            for x in product(range(9), repeat=cols)
            if all(sum(r * xx for r, xx in zip(row, x)) % 9 == bi for row, bi in zip(a.data, b))
        }
        try:
            x0, ker = solve(a, b)
        except NoSolution:
            assert truth == set()
            continue
        assert tuple(a.mul_vector(x0)) == tuple(b)
        got = {
            tuple((xi + sum(c * g[j] for c, g in zip(coefs, ker))) % 9 for j, xi in enumerate(x0))
            for coefs in product(range(9), repeat=len(ker))
        } if ker else {tuple(x0)}
        assert got == truth


def test_kernel_modpr_matches_solve_homogeneous():
    m = PrimePower(3, 2)
    a = ZmodPrMatrix(m, [[3, 1], [0, 3]])
    ker = kernel_modpr(a)
    truth = {
        x
        for x in product(range(9), repeat=2)
        if all(sum(r * xx for r, xx in zip(row, x)) % 9 == 0 for row in a.data)
    }
    got = _span_brutal(m, ker) if ker else {(0, 0)}
    assert got == truth


def test_member_of_span():
    m = PrimePower(3, 2)
    mat = ZmodPrMatrix(m, [[3, 0], [0, 1]])
    assert member_of_span(mat, [6, 5])
    assert not member_of_span(mat, [1, 0])
