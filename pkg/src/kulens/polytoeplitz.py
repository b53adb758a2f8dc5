"""Polynomials over the 2-local scalars and their Toeplitz-block expansion.

A polynomial a_0 + a_1 x + ... corresponds to a lower-triangular Toeplitz
matrix (of any size) whose (r, c) entry is a_{r-c}: multiplication by the
polynomial, written as a matrix acting on coefficient columns.  These blocks
are the bridge between the compact polynomial form of a presentation matrix
and its expanded numeric form.

Polynomials are dense coefficient tuples; degrees in this package stay small
(at most ~100), so sparse storage would buy nothing.  A polynomial either
lives over the exact integers (``precision=None``) or over Z/2**K; negation
over Z/2**K is residue negation, there is no separate sign.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

__all__ = [
    "ExactDivisionError",
    "Poly",
    "ToeplitzBlock",
    "X",
    "check_doubling_identity",
    "check_odd_index_identity",
    "div_exact",
    "p_poly",
    "subst",
    "toeplitz_block",
]


class ExactDivisionError(ValueError):
    """Polynomial division did not come out exact at the stated precision."""


@dataclass(frozen=True)
class Poly:
    """Dense polynomial; index = exponent of x.  Trailing coefficient nonzero."""

    coeffs: tuple[int, ...] = ()
    precision: Optional[int] = None

    def __post_init__(self) -> None:
        cs = self.coeffs
        if not isinstance(cs, tuple):
            cs = tuple(cs)
        if self.precision is not None:
            if self.precision < 1:
                raise ValueError(f"precision must be >= 1, got {self.precision}")
            mask = (1 << self.precision) - 1
            cs = tuple(c & mask for c in cs)
        n = len(cs)
        while n and cs[n - 1] == 0:
            n -= 1
        if n != len(cs):
            cs = cs[:n]
        if cs is not self.coeffs:
            object.__setattr__(self, "coeffs", cs)

    @property
    def degree(self) -> int:
        """Degree, with the zero polynomial assigned -1."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, i: int) -> int:
        """Coefficient of x**i (0 outside the stored range)."""
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return 0

    @property
    def order(self) -> int:
        """Exponent of the lowest nonzero term (x-adic valuation)."""
        if not self.coeffs:
            raise ValueError("the zero polynomial has no order")
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        raise AssertionError("unreachable: normalized nonzero poly")

    def shift(self, k: int) -> "Poly":
        """Multiply by x**k (k >= 0)."""
        if k < 0:
            raise ValueError("shift exponent must be nonnegative")
        if not self.coeffs:
            return self
        return Poly((0,) * k + self.coeffs, self.precision)

    def reduce(self, K: int) -> "Poly":
        """Image over Z/2**K."""
        return Poly(self.coeffs, K)

    def _coerce(self, other: "Poly | int") -> "Poly":
        if isinstance(other, int):
            return Poly((other,), self.precision)
        if not isinstance(other, Poly):
            return NotImplemented
        if other.precision != self.precision:
            raise ValueError(
                f"precision mismatch: {self.precision} vs {other.precision}"
            )
        return other

    def __add__(self, other: "Poly | int") -> "Poly":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return Poly(tuple(out), self.precision)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly(tuple(-c for c in self.coeffs), self.precision)

    def __sub__(self, other: "Poly | int") -> "Poly":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __mul__(self, other: "Poly | int") -> "Poly":
        if isinstance(other, int):
            return Poly(tuple(other * c for c in self.coeffs), self.precision)
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly((), self.precision)
        out = [0] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if ca:
                for j, cb in enumerate(b):
                    out[i + j] += ca * cb
        return Poly(tuple(out), self.precision)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Poly":
        if k < 0:
            raise ValueError("negative powers are not defined")
        out = Poly((1,), self.precision)
        for _ in range(k):
            out = out * self
        return out

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            if i == 0:
                terms.append(str(c))
            elif c == 1:
                terms.append("x" if i == 1 else f"x^{i}")
            else:
                terms.append(f"{c}x" if i == 1 else f"{c}x^{i}")
        return " + ".join(terms)


#: The monomial x over the exact integers; convenient for building entries.
X = Poly((0, 1))


def p_poly(n: int, precision: Optional[int] = None) -> Poly:
    """The geometric-sum polynomial 1 + x + ... + x**(n-1); zero for n = 0."""
    if n < 0:
        raise ValueError(f"p_poly expects n >= 0, got {n}")
    return Poly((1,) * n, precision)


def subst(p: Poly, m: int) -> Poly:
    """Substitute x -> x**m: coefficient of x**k moves to x**(k*m)."""
    if m < 1:
        raise ValueError(f"substitution exponent must be >= 1, got {m}")
    if m == 1 or p.is_zero():
        return p
    out = [0] * (p.degree * m + 1)
    for k, c in enumerate(p.coeffs):
        out[k * m] = c
    return Poly(tuple(out), p.precision)


def div_exact(num: Poly, den: Poly, degree_bound: Optional[int] = None) -> Poly:
    """Exact quotient q with num == den * q, at the polynomials' precision.

    The denominator must be x**k times a polynomial with unit constant term
    (odd over Z/2**K, +-1 over the exact integers), and the numerator must be
    divisible by x**k.  A nonzero remainder raises ExactDivisionError.
    """
    if den.precision != num.precision:
        raise ValueError(f"precision mismatch: {num.precision} vs {den.precision}")
    if den.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if num.is_zero():
        return num
    k = den.order
    if k:
        if num.order < k:
            raise ExactDivisionError(
                f"numerator has x-order {num.order} < {k} of the denominator"
            )
        num = Poly(num.coeffs[k:], num.precision)
        den = Poly(den.coeffs[k:], den.precision)
    c0 = den.coeffs[0]
    K = num.precision
    if K is None:
        if c0 not in (1, -1):
            raise ExactDivisionError(
                f"constant term {c0} is not invertible over the integers; "
                "reduce to a finite precision first"
            )
        inv0 = c0
        mask = None
    else:
        if c0 % 2 == 0:
            raise ExactDivisionError(f"constant term {c0} is not a unit mod 2**{K}")
        inv0 = pow(c0, -1, 1 << K)
        mask = (1 << K) - 1
    bound = num.degree if degree_bound is None else degree_bound
    if bound < 0:
        raise ExactDivisionError("degree bound below the degree of any quotient")
    rem = list(num.coeffs) + [0] * max(0, bound + den.degree + 1 - len(num.coeffs))
    quot = [0] * (bound + 1)
    for i in range(len(rem)):
        r = rem[i]
        if mask is not None:
            r &= mask
            rem[i] = r
        if not r:
            continue
        if i > bound:
            raise ExactDivisionError(
                f"nonzero remainder term at degree {i} (bound {bound})"
            )
        q = r * inv0
        if mask is not None:
            q &= mask
        quot[i] = q
        for j, dc in enumerate(den.coeffs):
            if dc:
                rem[i + j] -= q * dc
    return Poly(tuple(quot), K)


@dataclass(frozen=True)
class ToeplitzBlock:
    """rows-by-cols lower-triangular Toeplitz block of a polynomial."""

    rows: int
    cols: int
    source: Poly

    def __post_init__(self) -> None:
        if self.rows < 1 or self.cols < 1:
            raise ValueError("block dimensions must be positive")

    def entry(self, r: int, c: int) -> int:
        if not (0 <= r < self.rows and 0 <= c < self.cols):
            raise IndexError(f"entry ({r}, {c}) outside {self.rows}x{self.cols} block")
        return self.source.coeff(r - c)

    def dense(self) -> list[list[int]]:
        return [
            [self.source.coeff(r - c) for c in range(self.cols)]
            for r in range(self.rows)
        ]


def toeplitz_block(p: Poly, rows: int, cols: int) -> ToeplitzBlock:
    """Block with entry(r, c) equal to the coefficient of x**(r-c) in p."""
    return ToeplitzBlock(rows, cols, p)


def check_doubling_identity(t: int) -> bool:
    """p_{2t} == p_2 * p_t(x**2) over the exact integers."""
    if t < 1:
        raise ValueError(f"expected t >= 1, got {t}")
    return p_poly(2 * t) == p_poly(2) * subst(p_poly(t), 2)


def check_odd_index_identity(k: int) -> bool:
    """p_{2k+1} - p_3 * p_k(x**2) == -x**2 * p_{k-1}(x**2) over the integers."""
    if k < 1:
        raise ValueError(f"expected k >= 1, got {k}")
    lhs = p_poly(2 * k + 1) - p_poly(3) * subst(p_poly(k), 2)
    rhs = -subst(p_poly(k - 1), 2).shift(2)
    return lhs == rhs
