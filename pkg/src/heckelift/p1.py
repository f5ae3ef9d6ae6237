"""The projective line P^1(Z/N) with canonical representatives.

Normalization follows the classical algorithm: scale so the first
coordinate is the divisor gcd(c, N), lift the scaling unit mod N, and
break the remaining stabilizer ambiguity by minimizing the second
coordinate.  Two pairs normalize equally iff they are projectively
equivalent mod N, and the number of classes is mu(N) = N prod (1 + 1/p).
"""

from math import gcd

from .arith import divisors, gcdex, invmod
from .dims import index_mu
from .errors import NotCoprime


def _lift_unit(n, d, a):
    """Lift a unit a mod d (d | n) to a unit mod n."""
    if n == 1:
        return 0
    u, v = 1, n
    g = gcd(v, d)
    while g > 1:
        u *= g
        v //= g
        g = gcd(v, g)
    # n = u*v with v coprime to d and u supported on primes of d
    g, x, y = gcdex(u, v)
    assert g == 1
    return (u * x + a * y * v) % n


def p1_normalize(c, d, n):
    """Canonical representative of (c:d) in P^1(Z/N).

    Raises NotCoprime when gcd(c, d, N) > 1.
    """
    if n <= 0:
        raise ValueError("N must be positive")
    if n == 1:
        return (0, 0)
    c %= n
    d %= n
    if gcd(gcd(c, d), n) != 1:
        raise NotCoprime(f"({c}:{d}) is not a point of P^1(Z/{n})")
    if c == 0:
        return (0, 1)
    g, _, s = gcdex(n, c)  # n*x + c*s = g = gcd(n, c)
    s %= n
    # s*c ≡ g mod n with s a unit mod n/g; lift it to a unit mod n
    s = _lift_unit(n, n // g, s)
    c, d = g, (s * d) % n
    if g == 1:
        return (1, d)
    best = None
    for t in range(1, n, n // g):
        if gcd(t, n) == 1:
            v = (d * t) % n
            if best is None or v < best:
                best = v
    return (g, best)


class P1:
    """Enumerated P^1(Z/N) with O(1) index lookup and memoized
    normalization (Hecke actions hit the same raw pairs repeatedly)."""

    def __init__(self, n):
        self.n = n
        pts = set()
        if n == 1:
            pts.add((0, 0))
        else:
            for c in divisors(n):
                c %= n
                for d in range(n):
                    if gcd(gcd(c, d), n) == 1:
                        pts.add(p1_normalize(c, d, n))
        self.points = sorted(pts)
        self._index = {pt: i for i, pt in enumerate(self.points)}
        self._norm_memo = dict(self._index)
        if n > 1:
            assert len(self.points) == index_mu(n)

    def __len__(self):
        return len(self.points)

    def __getitem__(self, i):
        return self.points[i]

    def index_of(self, c, d):
        """Index of the class of (c:d), or -1 if gcd(c, d, N) > 1."""
        n = self.n
        key = (c % n, d % n)
        hit = self._norm_memo.get(key)
        if hit is not None:
            return hit
        try:
            idx = self._index[p1_normalize(key[0], key[1], n)]
        except NotCoprime:
            idx = -1
        self._norm_memo[key] = idx
        return idx
