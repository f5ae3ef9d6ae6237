"""Exact computation of cuspidal Hecke eigenforms for Gamma0(N) and of
congruences between eigenforms of level N and lN modulo powers of an odd
prime, including the search for eigenforms mod p^r inside spans of
characteristic-zero eigenforms.

All arithmetic is exact: rationals for the modular-symbols engine,
canonical residues for Z/p^r.  Nothing in this package uses floating
point.
"""

ENGINE_VERSION = "1"

__version__ = "1.0.0"
