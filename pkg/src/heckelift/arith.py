"""Small integer-arithmetic helpers shared across the package.

Levels and primes in scope are small (a few thousand at most), so trial
division is plenty; nothing here needs a fast factoring backend.
"""

from fractions import Fraction
from math import gcd, isqrt


def primes_up_to(n):
    """All primes <= n, by sieve."""
    if n < 2:
        return []
    sieve = bytearray([1]) * (n + 1)
    sieve[0] = sieve[1] = 0
    for p in range(2, isqrt(n) + 1):
        if sieve[p]:
            sieve[p * p :: p] = bytearray(len(sieve[p * p :: p]))
    return [i for i in range(2, n + 1) if sieve[i]]


def is_prime(n):
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    for d in range(3, isqrt(n) + 1, 2):
        if n % d == 0:
            return False
    return True


def factorizations(n):
    """Prime factorization of n >= 1 as a dict prime -> exponent."""
    if n < 1:
        raise ValueError("factorization of a nonpositive integer")
    out = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def prime_divisors(n):
    return sorted(factorizations(n))


def divisors(n):
    out = [1]
    for p, e in factorizations(n).items():
        out = [d * p**i for d in out for i in range(e + 1)]
    return sorted(out)


def gcdex(a, b):
    """Return (g, x, y) with g = gcd(a, b) >= 0 and a*x + b*y = g."""
    old_r, r = a, b
    old_x, x = 1, 0
    old_y, y = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_x, x = x, old_x - q * x
        old_y, y = y, old_y - q * y
    if old_r < 0:
        old_r, old_x, old_y = -old_r, -old_x, -old_y
    return old_r, old_x, old_y


def invmod(a, n):
    g, x, _ = gcdex(a % n, n)
    if g != 1:
        raise ValueError(f"{a} not invertible mod {n}")
    return x % n


def lift_to_coprime(c, d, n):
    """Given gcd(c, d, n) = 1, return (c, d') with d' ≡ d mod n and
    gcd(c, d') = 1."""
    if gcd(c, d) == 1:
        return c, d
    if c == 0:
        return 0, 1
    dd = d
    while gcd(c, dd) != 1:
        dd += n
    return c, dd


def lift_to_sl2(c, d, n):
    """An SL2(Z) matrix (a, b; c', d') with (c', d') ≡ (c, d) mod n.

    Requires gcd(c, d, n) = 1.
    """
    c0, d0 = lift_to_coprime(c % n if n else c, d % n if n else d, n)
    g, x, y = gcdex(c0, d0)
    assert g == 1
    # y*d0 - (-x)*c0 = 1, so rows (y, -x) and (c0, d0) have determinant 1
    return y, -x, c0, d0


def continued_fraction_convergents(num, den):
    """Convergents p_i/q_i of num/den (den > 0), ending exactly at num/den."""
    convs = []
    a, b = num, den
    pm1, qm1 = 1, 0
    pm2, qm2 = 0, 1
    while b:
        q = a // b
        a, b = b, a - q * b
        p, qq = q * pm1 + pm2, q * qm1 + qm2
        pm2, qm2 = pm1, qm1
        pm1, qm1 = p, qq
        convs.append((p, qq))
    return convs


def valuation(x, p):
    """Exponent of the prime p in the nonzero rational x."""
    if x == 0:
        raise ValueError("valuation of zero")
    if isinstance(x, Fraction):
        num, den = x.numerator, x.denominator
    else:
        num, den = int(x), 1
    v = 0
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v
