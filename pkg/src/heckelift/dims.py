"""Dimension formulas for Gamma0(N): an oracle independent of the
modular-symbols engine.

These are the classical closed formulas (index, elliptic point counts,
cusp count, genus, dim S_k, dim Eis_k).  The engine's spaces are checked
against them in the test suite; nothing here touches the presentation
code.
"""

from .arith import divisors, factorizations, prime_divisors
from math import gcd


def index_mu(n):
    """Index of Gamma0(N) in SL2(Z): N * prod_{p|N} (1 + 1/p)."""
    mu = n
    for p in prime_divisors(n):
        mu = mu // p * (p + 1)
    return mu


def num_cusps(n):
    return sum(_phi(gcd(d, n // d)) for d in divisors(n))


def _phi(n):
    out = n
    for p in prime_divisors(n):
        out = out // p * (p - 1)
    return out


def nu2(n):
    """Number of elliptic points of order 2 on X0(N)."""
    if n % 4 == 0:
        return 0
    out = 1
    for p in prime_divisors(n):
        if p == 2:
            continue
        out *= 1 + (1 if p % 4 == 1 else -1)
    return out


def nu3(n):
    """Number of elliptic points of order 3 on X0(N)."""
    if n % 9 == 0:
        return 0
    out = 1
    for p in prime_divisors(n):
        if p == 3:
            continue
        out *= 1 + (1 if p % 3 == 1 else -1)
    return out


def genus(n):
    g12 = 12 + index_mu(n) - 3 * nu2(n) - 4 * nu3(n) - 6 * num_cusps(n)
    assert g12 % 12 == 0
    return g12 // 12


def dim_cusp_forms(n, k):
    """dim S_k(Gamma0(N)) for even k >= 2."""
    if k < 2 or k % 2:
        raise ValueError("even weight >= 2 required")
    if k == 2:
        return genus(n)
    g = genus(n)
    return (k - 1) * (g - 1) + (k // 2 - 1) * num_cusps(n) + nu2(n) * (k // 4) + nu3(n) * (k // 3)


def dim_eisenstein(n, k):
    """dim Eis_k(Gamma0(N)) for even k >= 2."""
    if k < 2 or k % 2:
        raise ValueError("even weight >= 2 required")
    c = num_cusps(n)
    if k == 2:
        return c - 1
    return c


def dim_modular_symbols(n, k):
    """Dimension of the full weight-k modular-symbols space for Gamma0(N)."""
    return 2 * dim_cusp_forms(n, k) + dim_eisenstein(n, k)


def dim_new_cusp_forms(n, k):
    """dim of the new subspace of S_k(Gamma0(N)), by Moebius-style recursion
    on dim S_k = sum over M | N of sigma0(N/M) * dim S_k^new(M)."""
    total = dim_cusp_forms(n, k)
    for m in divisors(n):
        if m == n:
            continue
        total -= num_divisors(n // m) * dim_new_cusp_forms(m, k)
    return total


def num_divisors(n):
    out = 1
    for e in factorizations(n).values():
        out *= e + 1
    return out


def sturm_bound(n, k):
    """floor(k * mu(N) / 12): certification horizon for weight-k level-N
    congruences."""
    if n < 1 or k < 2:
        raise ValueError("need N >= 1 and k >= 2")
    return k * index_mu(n) // 12
