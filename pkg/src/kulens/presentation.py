"""Graded presentation matrices for the tensor-square module M_e.

M_e is the ku-homology tensor square for torsion 2**e; its grading-2d
component G_d is a finite abelian 2-group on generators u**k [i, j] with
k + i + j = d.  The defining relations come in two mirror families,

    A(m,i,j) = sum_l C(2**e, l+1) u**(m+l) [i-l, j],
    B(m,i,j) = sum_l C(2**e, l+1) u**(m+l) [i, j-l],

one pair for every m = 0..d and i + j = d - m.  This module builds those
rows sparsely, builds the equivalent polynomial-matrix form, and carries the
transcribed reduced polynomial matrix for e = 4 together with the general
diagonal-valuation profile, both of which the query layer verifies against
the raw relations.
"""

from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass
from typing import Optional

from .polytoeplitz import Poly, X, p_poly, subst
from .twolocal import default_precision

__all__ = [
    "GeneratorIndex",
    "GradedPresentation",
    "PolyMatrix",
    "build_grading",
    "diagonal_valuations",
    "expand_poly_matrix",
    "expand_relation_poly_rows",
    "reduced_matrix_e4",
    "relation_poly_rows",
    "top_grading",
]


def top_grading(e: int) -> int:
    """Largest grading index covered by the diagonal profile: 3*2**(e-1) - 2."""
    if e < 1:
        raise ValueError(f"torsion exponent must be >= 1, got {e}")
    return 3 * 2 ** (e - 1) - 2


class GeneratorIndex:
    """Ordered generators of G_d: u-exponent k ascending, then i ascending.

    The flat index of u**k [i, j] (with k + i + j = d) is
    sum_{m<k} (d+1-m) + i, matching the column order of every matrix here.
    """

    __slots__ = ("d", "_offsets")

    def __init__(self, d: int):
        if d < 0:
            raise ValueError(f"grading index must be >= 0, got {d}")
        self.d = d
        offsets = [0] * (d + 2)
        for k in range(d + 1):
            offsets[k + 1] = offsets[k] + (d + 1 - k)
        self._offsets = offsets

    @property
    def count(self) -> int:
        return self._offsets[self.d + 1]

    def flat(self, k: int, i: int) -> int:
        d = self.d
        if not (0 <= k <= d and 0 <= i <= d - k):
            raise ValueError(f"(k={k}, i={i}) invalid for grading {d}")
        return self._offsets[k] + i

    def triple(self, index: int) -> tuple[int, int, int]:
        """Inverse of flat: (k, i, j) with k + i + j == d."""
        if not 0 <= index < self.count:
            raise ValueError(f"flat index {index} out of range")
        offsets = self._offsets
        lo, hi = 0, self.d
        while lo < hi:
            mid = (lo + hi + 1) // 2
            if offsets[mid] <= index:
                lo = mid
            else:
                hi = mid - 1
        k = lo
        i = index - offsets[k]
        return (k, i, self.d - k - i)

    def entries(self) -> list[tuple[int, int, int]]:
        return [
            (k, i, self.d - k - i)
            for k in range(self.d + 1)
            for i in range(self.d - k + 1)
        ]


@dataclass(frozen=True)
class GradedPresentation:
    """Sparse relation matrix of G_d over Z/2**K, rows in block order.

    Rows are emitted per u-multiplier m = 0..d, family A before family B,
    generators (i, j) by ascending i, so the layout matches the Toeplitz
    expansion of the polynomial form row for row.
    """

    e: int
    d: int
    K: int
    gens: GeneratorIndex
    rows: tuple[tuple[tuple[int, int], ...], ...]

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def ncols(self) -> int:
        return self.gens.count

    def dump(self) -> str:
        """Sparse text dump: header ``e d K nrows ncols``, then ``row col residue``."""
        lines = [f"{self.e} {self.d} {self.K} {self.nrows} {self.ncols}"]
        for r, row in enumerate(self.rows):
            for col, res in row:
                lines.append(f"{r} {col} {res}")
        return "\n".join(lines) + "\n"


def _relation_coefficients(e: int, K: int) -> list[int]:
    # C(2**e, l+1) for l = 0..2**e - 1; later terms vanish.
    mask = (1 << K) - 1
    return [math.comb(1 << e, l + 1) & mask for l in range(1 << e)]


def build_grading(e: int, d: int, K: Optional[int] = None) -> GradedPresentation:
    """Assemble the raw relation rows of G_d over Z/2**K (default K = e + 4).

    Both relation families are emitted even though they are mirror images;
    the i <-> j symmetry of the module is then a testable permutation
    property of the row set.  Requires K > e: with all pivot valuations at
    most e, any smaller precision could not certify cokernel membership.
    """
    if e < 1:
        raise ValueError(f"torsion exponent must be >= 1, got {e}")
    if d < 0:
        raise ValueError(f"grading index must be >= 0, got {d}")
    if K is None:
        K = default_precision(e)
    if K <= e:
        raise ValueError(f"precision {K} too small: must exceed e = {e}")
    coeffs = _relation_coefficients(e, K)
    gens = GeneratorIndex(d)
    flat = gens.flat
    rows: list[tuple[tuple[int, int], ...]] = []
    for m in range(d + 1):
        rem = d - m
        for i in range(rem + 1):
            row = []
            for l in range(min(i, len(coeffs) - 1) + 1):
                c = coeffs[l]
                if c:
                    row.append((flat(m + l, i - l), c))
            rows.append(tuple(row))
        for i in range(rem + 1):
            j = rem - i
            row = []
            for l in range(min(j, len(coeffs) - 1) + 1):
                c = coeffs[l]
                if c:
                    row.append((flat(m + l, i), c))
            rows.append(tuple(row))
    return GradedPresentation(e=e, d=d, K=K, gens=gens, rows=tuple(rows))


def relation_poly_rows(e: int, d: int) -> list[list[Poly]]:
    """Polynomial form of the raw presentation: 2(d+1) rows over d+1 column blocks.

    Row pair 2m holds C(2**e, l+1) x**l in block m+l (family A), row 2m+1
    the constant C(2**e, l+1) (family B); block heights are d+1-m and block
    widths d+1-l, so the Toeplitz expansion reproduces build_grading exactly.
    """
    if e < 1 or d < 0:
        raise ValueError("invalid parameters")
    zero = Poly(())
    binoms = [math.comb(1 << e, l + 1) for l in range(1 << e)]
    out: list[list[Poly]] = []
    for m in range(d + 1):
        row_a = [zero] * (d + 1)
        row_b = [zero] * (d + 1)
        for l in range(min(d - m, len(binoms) - 1) + 1):
            row_a[m + l] = Poly((binoms[l],)).shift(l)
            row_b[m + l] = Poly((binoms[l],))
        out.append(row_a)
        out.append(row_b)
    return out


def expand_relation_poly_rows(e: int, d: int, K: int) -> list[list[tuple[int, int]]]:
    """Numeric rows of the polynomial presentation, in the same row order."""
    poly_rows = relation_poly_rows(e, d)
    gens = GeneratorIndex(d)
    flat = gens.flat
    mask = (1 << K) - 1
    out = []
    for pair in range(d + 1):
        for which in (0, 1):
            prow = poly_rows[2 * pair + which]
            height = d + 1 - pair
            for a in range(height):
                row = []
                for block in range(d + 1):
                    p = prow[block]
                    if p.is_zero():
                        continue
                    width = d + 1 - block
                    lo = max(0, a - p.degree)
                    for b in range(lo, min(a, width - 1) + 1):
                        c = p.coeff(a - b) & mask
                        if c:
                            row.append((flat(block, b), c))
                out.append(row)
    return out


@dataclass(frozen=True)
class PolyMatrix:
    """Square upper-triangular matrix of polynomials over the exact integers.

    Restricted to its first d+1 columns it expands, block by Toeplitz block,
    to a numeric presentation of G_d: row i contributes a block of height
    d+1-i, column j one of width d+1-j.
    """

    size: int
    entries: tuple[tuple[Poly, ...], ...]

    def __post_init__(self) -> None:
        if len(self.entries) != self.size or any(
            len(r) != self.size for r in self.entries
        ):
            raise ValueError("entry grid does not match declared size")
        for i in range(self.size):
            for j in range(i):
                if not self.entries[i][j].is_zero():
                    raise ValueError(f"nonzero entry below the diagonal at ({i}, {j})")

    def entry(self, i: int, j: int) -> Poly:
        return self.entries[i][j]

    def canonical_dump(self) -> str:
        """Stable text form of all nonzero entries, for checksumming."""
        lines = []
        for i in range(self.size):
            for j in range(self.size):
                p = self.entries[i][j]
                if not p.is_zero():
                    lines.append(f"{i} {j} " + " ".join(str(c) for c in p.coeffs))
        return "\n".join(lines) + "\n"

    def sha256(self) -> str:
        return hashlib.sha256(self.canonical_dump().encode()).hexdigest()


def expand_poly_matrix(pm: PolyMatrix, d: int, K: int) -> list[list[tuple[int, int]]]:
    """Expand the first d+1 columns of pm to sparse numeric rows of G_d."""
    if d + 1 > pm.size:
        raise ValueError(f"matrix has only {pm.size} columns, need {d + 1}")
    gens = GeneratorIndex(d)
    flat = gens.flat
    mask = (1 << K) - 1
    rows = []
    for i in range(d + 1):
        height = d + 1 - i
        for a in range(height):
            row = []
            for j in range(i, d + 1):
                p = pm.entries[i][j]
                if p.is_zero():
                    continue
                width = d + 1 - j
                lo = max(0, a - p.degree)
                for b in range(lo, min(a, width - 1) + 1):
                    c = p.coeff(a - b) & mask
                    if c:
                        row.append((flat(j, b), c))
            if row:
                rows.append(row)
    return rows


def diagonal_valuations(e: int) -> tuple[int, ...]:
    """Diagonal 2-exponents v(j) of the reduced presentation, j = 0..3*2**(e-1)-2.

    v(j) = e - s on 2*2**s - 2 <= j < 3*2**s - 2 and e - 1 - s on
    3*2**s - 2 <= j < 4*2**s - 2; in particular v(0) = e and the final
    entry is 0.
    """
    if e < 1:
        raise ValueError(f"torsion exponent must be >= 1, got {e}")
    out = []
    for j in range(top_grading(e) + 1):
        s = 0
        while True:
            if 2 * 2**s - 2 <= j < 3 * 2**s - 2:
                out.append(e - s)
                break
            if 3 * 2**s - 2 <= j < 4 * 2**s - 2:
                out.append(e - 1 - s)
                break
            s += 1
    return tuple(out)


def _p(n: int, m: int = 1) -> Poly:
    q = p_poly(n)
    return subst(q, m) if m > 1 else q


def reduced_matrix_e4() -> PolyMatrix:
    """The claimed fully reduced 23x23 polynomial presentation matrix for e = 4.

    Transcribed entry by entry; the test suite pins a checksum of the
    expanded matrix and verifies, grading by grading, that it generates the
    same relation lattice as the raw rows of build_grading(4, d).
    """
    p = _p
    x = X
    one = Poly((1,))
    entries: dict[tuple[int, int], Poly] = {
        (0, 0): 16 * one,
        (0, 3): 4 * x * p(2),
        (0, 7): 2 * x * p(6),
        (0, 15): x * p(14),
        (0, 20): x**7 * p(4, 2),
        (0, 21): x**5 * p(2, 2) * p(4, 3),
        (1, 1): 8 * one,
        (1, 3): 4 * p(3),
        (1, 7): 2 * p(7),
        (1, 15): p(15),
        (1, 20): x**6 * p(8),
        (1, 21): x**4 * p(2, 12),
        (2, 2): 8 * one,
        (2, 8): 2 * x**2 * p(2, 2),
        (2, 9): 2 * x * p(6),
        (2, 16): x**2 * p(6, 2),
        (2, 17): x * p(6) * p(3, 4),
        (2, 19): x**3 * p(3) * p(2, 2) * p(2, 7),
        (2, 20): x**4 * p(4) * p(2, 7),
        (2, 21): x * p(2) * p(2, 16) + x**8 * p(2, 3),
        (3, 3): 8 * one,
        (3, 9): 2 * x**2 * p(2, 2),
        (3, 17): x**2 * p(6, 2),
        (3, 20): x**5 * p(2, 3) * p(2, 4),
        (3, 21): x**4 * p(2, 7) * p(4),
        (4, 4): 4 * one,
        (4, 8): 2 * p(3, 2),
        (4, 9): 2 * x * p(2, 3),
        (4, 16): p(7, 2),
        (4, 17): x * p(2, 3) * p(3, 4),
        (4, 19): x**3 * p(2, 2) * p(2, 7),
        (4, 20): x**4 * p(2, 2) * p(2, 6),
        (4, 21): x * p(2, 9) * (one + x**2 * p(3) + x**6),
        (5, 5): 4 * one,
        (5, 9): 2 * p(3, 2),
        (5, 17): p(7, 2),
        (5, 20): x**5 * p(2) * p(2, 4),
        (5, 21): x**4 * p(2, 2) * p(2, 6),
        (6, 6): 4 * one,
        (6, 18): x**4 * p(2, 4),
        (6, 20): x**2 * p(6, 2),
        (6, 21): x**5 * p(2) * p(2, 4),
        (7, 7): 4 * one,
        (7, 19): x**4 * p(2, 4),
        (7, 21): x**2 * p(6, 2),
        (8, 8): 4 * one,
        (8, 20): x**4 * p(2, 4),
        (9, 9): 4 * one,
        (9, 21): x**4 * p(2, 4),
        (10, 10): 2 * one,
        (10, 18): p(3, 4),
        (10, 20): x**2 * p(2, 6),
        (11, 11): 2 * one,
        (11, 19): p(3, 4),
        (11, 21): x**2 * p(2, 6),
        (12, 12): 2 * one,
        (12, 20): p(3, 4),
        (13, 13): 2 * one,
        (13, 21): p(3, 4),
        (22, 22): one,
    }
    for i in range(14, 22):
        entries[(i, i)] = 2 * one
    zero = Poly(())
    grid = tuple(
        tuple(entries.get((i, j), zero) for j in range(23)) for i in range(23)
    )
    return PolyMatrix(size=23, entries=grid)
