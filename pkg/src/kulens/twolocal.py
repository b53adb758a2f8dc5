"""Exact arithmetic in the 2-local integers, truncated to K bits.

Every computation in this package happens over the ring Z/2**K, viewed as a
truncation of the integers localized at 2.  Odd residues are units.  The
2-adic valuation of a nonzero residue is its number of trailing zero bits;
the zero residue carries the sentinel valuation K, meaning "indistinguishable
from zero at this precision".  Queries whose answers could depend on that
ambiguity are re-run at a higher K and compared (see the acceptance suite).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

__all__ = [
    "NonUnitError",
    "TwoLocalScalar",
    "alpha",
    "binom_mod",
    "default_precision",
    "inv_unit",
    "nu",
]


class NonUnitError(ValueError):
    """A unit (odd residue) was required but an even one was supplied."""


def nu(n: int) -> int:
    """Largest v such that 2**v divides the nonzero integer n."""
    if n == 0:
        raise ValueError("nu(0) is undefined; the scalar type uses a sentinel instead")
    return (n & -n).bit_length() - 1


def alpha(n: int) -> int:
    """Number of ones in the binary expansion of n >= 0."""
    if n < 0:
        raise ValueError(f"alpha expects a nonnegative integer, got {n}")
    return n.bit_count()


def default_precision(e: int) -> int:
    """Working precision K = e + 4 for computations about torsion exponent e.

    The reduced presentation diagonals are 2-powers at most 2**e, so any K > e
    is faithful for cokernel membership; four guard bits leave room for the
    stability re-check at K + 4.
    """
    if e < 1:
        raise ValueError(f"torsion exponent must be >= 1, got {e}")
    return e + 4


@dataclass(frozen=True)
class TwoLocalScalar:
    """A residue mod 2**precision carrying its 2-adic valuation.

    Value semantics; instances are immutable and safe to share between
    threads.  Arithmetic requires both operands to use the same precision.
    """

    residue: int
    precision: int

    def __post_init__(self) -> None:
        if self.precision < 1:
            raise ValueError(f"precision must be >= 1, got {self.precision}")
        r = self.residue % (1 << self.precision)
        if r != self.residue:
            object.__setattr__(self, "residue", r)

    @property
    def valuation(self) -> int:
        """Trailing zero bits of the residue; the sentinel K for zero."""
        if self.residue == 0:
            return self.precision
        return nu(self.residue)

    def is_zero(self) -> bool:
        return self.residue == 0

    def is_unit(self) -> bool:
        return self.residue & 1 == 1

    def _coerce(self, other: "TwoLocalScalar | int") -> "TwoLocalScalar":
        if isinstance(other, int):
            return TwoLocalScalar(other, self.precision)
        if not isinstance(other, TwoLocalScalar):
            return NotImplemented
        if other.precision != self.precision:
            raise ValueError(
                f"precision mismatch: {self.precision} vs {other.precision}"
            )
        return other

    def __add__(self, other: "TwoLocalScalar | int") -> "TwoLocalScalar":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return TwoLocalScalar(self.residue + other.residue, self.precision)

    __radd__ = __add__

    def __neg__(self) -> "TwoLocalScalar":
        return TwoLocalScalar(-self.residue, self.precision)

    def __sub__(self, other: "TwoLocalScalar | int") -> "TwoLocalScalar":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return TwoLocalScalar(self.residue - other.residue, self.precision)

    def __mul__(self, other: "TwoLocalScalar | int") -> "TwoLocalScalar":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return TwoLocalScalar(self.residue * other.residue, self.precision)

    __rmul__ = __mul__

    def __repr__(self) -> str:
        return f"TwoLocalScalar({self.residue}, K={self.precision})"


def binom_mod(N: int, r: int, K: int) -> TwoLocalScalar:
    """Binomial coefficient C(N, r) reduced mod 2**K; zero when r > N.

    Computed with exact big integers and reduced afterwards, so even
    denominators never require modular division.
    """
    if N < 0 or r < 0:
        raise ValueError("binom_mod expects nonnegative arguments")
    if K < 1:
        raise ValueError(f"precision must be >= 1, got {K}")
    return TwoLocalScalar(math.comb(N, r), K)


def inv_unit(a: TwoLocalScalar) -> TwoLocalScalar:
    """Multiplicative inverse of a unit residue: a * inv_unit(a) == 1 mod 2**K."""
    if not a.is_unit():
        raise NonUnitError(f"{a!r} is not a unit (even residue)")
    return TwoLocalScalar(pow(a.residue, -1, 1 << a.precision), a.precision)
