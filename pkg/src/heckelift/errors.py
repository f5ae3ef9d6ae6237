"""Exception hierarchy.

Every error that a caller is expected to handle has its own class; all of
them derive from HeckeliftError so the CLI can map them to exit codes in
one place.
"""


class HeckeliftError(Exception):
    """Base class for all package errors."""


class UsageError(HeckeliftError):
    """Bad input from the caller (exit code 2 in the CLI)."""


class MathematicalNegative(HeckeliftError):
    """A requested assertion failed mathematically (exit code 1)."""


class InternalInvariantError(HeckeliftError):
    """An internal consistency check failed; indicates an engine bug
    (exit code 3)."""


# exact linear algebra

class NotStable(HeckeliftError):
    """Operator does not preserve the given subspace."""


class DimensionMismatch(UsageError):
    """Ambient dimensions of two subspaces disagree."""


# modular symbols

class NotCoprime(UsageError):
    """gcd(c, d, N) > 1, so (c:d) is not a point of P^1(Z/N)."""


class UnsupportedWeight(UsageError):
    """Weight must be an even integer >= 2."""


class LevelTooSmall(UsageError):
    """The modular-symbols engine requires level N >= 5."""


class BadDivisor(UsageError):
    """Degeneracy parameter t must be 1 or l."""


class MissingPrime(UsageError):
    """An eigenvalue a_q needed for a q-expansion is not available."""


# arithmetic over Z/p^r

class ZeroInput(UsageError):
    """p-adic valuation of 0 requested."""


class DenominatorNotUnit(UsageError):
    """A rational with p in the denominator cannot be reduced mod p^r."""


class NonResidue(HeckeliftError):
    """The unit is not a square modulo p."""


class NotUnit(HeckeliftError):
    """A unit of Z/p^r was required."""


class NoSolution(HeckeliftError):
    """Linear system over Z/p^r has no solution."""


# level raising

class InsufficientField(HeckeliftError):
    """The required square root does not exist over Z/p^r; a coefficient
    ring larger than Z_p would be needed."""


class BoundTooSmall(UsageError):
    """Certification bound below the Sturm bound of the larger level."""


class EmptySpan(UsageError):
    """No forms supplied to the span search."""


class UnstableConstraint(MathematicalNegative):
    """The prescribed eigenvalue constraints admit no solution."""


# records / CLI

class SchemaError(UsageError):
    """Malformed newform record."""

    def __init__(self, message, field=None):
        super().__init__(message)
        self.field = field


class RecursionViolation(UsageError):
    """Coefficient list fails a Hecke recursion; carries the witness."""

    def __init__(self, message, witness):
        super().__init__(message)
        self.witness = witness
