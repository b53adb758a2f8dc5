"""Sparse row echelonization over the local ring Z/2**K.

Over Z/2**K every odd residue is invertible, so pivoting on the entry of
minimal 2-adic valuation makes Gaussian elimination work exactly as over a
discrete valuation ring: the pivot divides every other entry in its column,
no fraction-free tricks are needed.

Normal form: pivot columns strictly increase row by row, each pivot entry is
exactly the 2-power 2**v (the row is scaled by the inverse of the pivot's odd
part), and every other row's entry in a pivot column is reduced mod 2**v,
i.e. is zero or has valuation < v.  Pivot ties are broken by lowest original
row index, so identical input yields a bit-identical echelon.

Rows are sorted (column, residue) lists; elimination merges two sorted lists.
The presentation matrices this package feeds in are banded, so fill-in stays
modest; this module is the hot path for the largest gradings.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

__all__ = [
    "Echelon",
    "IncompleteEchelonError",
    "PrecisionExhaustedError",
    "SparseRow",
    "coker_order_log2",
    "echelonize",
    "element_order_log2",
    "is_zero_in_coker",
    "lattices_equal",
    "reduce_vector",
]

SparseRow = list[tuple[int, int]]


class PrecisionExhaustedError(RuntimeError):
    """No power 2**a with a <= K kills the vector; the precision cannot certify."""


class IncompleteEchelonError(RuntimeError):
    """A column has no pivot, so the cokernel is infinite at this precision."""

    def __init__(self, column: int):
        super().__init__(f"column {column} has no pivot")
        self.column = column


@dataclass(frozen=True)
class Echelon:
    """Row-echelonized relation lattice over Z/2**K.

    Immutable after construction; safe to share between threads.  ``rows[t]``
    is the reduced row whose leading entry is exactly 2**v in column
    ``pivots[t] == (column, v)``.
    """

    K: int
    ncols: int
    pivots: tuple[tuple[int, int], ...]
    rows: tuple[tuple[tuple[int, int], ...], ...]
    _col_index: dict[int, int] = field(repr=False, hash=False, compare=False)

    def pivot_valuations(self) -> list[int]:
        return [v for _, v in self.pivots]


def _normalize_rows(
    rows: Iterable[Sequence[tuple[int, int]]], ncols: int, mask: int
) -> list[SparseRow]:
    out = []
    for raw in rows:
        acc: dict[int, int] = {}
        for col, res in raw:
            if not 0 <= col < ncols:
                raise ValueError(f"column {col} outside 0..{ncols - 1}")
            acc[col] = (acc.get(col, 0) + res) & mask
        row = sorted((c, r) for c, r in acc.items() if r)
        out.append(row)
    return out


def _submul(a: SparseRow, q: int, b: SparseRow, mask: int) -> SparseRow:
    """a - q*b over Z/2**K, both sorted sparse rows."""
    out: SparseRow = []
    push = out.append
    i = j = 0
    la, lb = len(a), len(b)
    while i < la and j < lb:
        ca, ra = a[i]
        cb, rb = b[j]
        if ca < cb:
            push((ca, ra))
            i += 1
        elif ca > cb:
            r = (-q * rb) & mask
            if r:
                push((cb, r))
            j += 1
        else:
            r = (ra - q * rb) & mask
            if r:
                push((ca, r))
            i += 1
            j += 1
    if i < la:
        out.extend(a[i:])
    while j < lb:
        cb, rb = b[j]
        r = (-q * rb) & mask
        if r:
            push((cb, r))
        j += 1
    return out


def _reduce_items(
    items: Iterable[tuple[int, int]],
    pivots: Sequence[tuple[int, int]],
    rows: Sequence[Sequence[tuple[int, int]]],
    mask: int,
) -> SparseRow:
    """Clear every pivot-column entry down to a residue below the pivot 2-power."""
    cur = dict(items)
    if not cur:
        return []
    for t, (col, v) in enumerate(pivots):
        r = cur.get(col)
        if r:
            q = r >> v
            if q:
                get = cur.get
                for c2, r2 in rows[t]:
                    nr = (get(c2, 0) - q * r2) & mask
                    if nr:
                        cur[c2] = nr
                    else:
                        cur.pop(c2, None)
    return sorted(cur.items())


def echelonize(rows: Iterable[Sequence[tuple[int, int]]], ncols: int, K: int) -> Echelon:
    """Echelonize sparse rows over Z/2**K, columns processed left to right.

    In each column the surviving row of minimal valuation (ties: lowest
    original row index) becomes the pivot; it is scaled so its leading entry
    is the pure 2-power, and the column is eliminated from every other row.
    Rows that become zero are dropped.
    """
    if K < 1:
        raise ValueError(f"precision must be >= 1, got {K}")
    if ncols < 0:
        raise ValueError("ncols must be nonnegative")
    modulus = 1 << K
    mask = modulus - 1
    work = _normalize_rows(rows, ncols, mask)

    buckets: dict[int, list[int]] = {}
    for idx, row in enumerate(work):
        if row:
            buckets.setdefault(row[0][0], []).append(idx)

    pivots: list[tuple[int, int]] = []
    pivot_rows: list[SparseRow] = []
    for col in range(ncols):
        cand = buckets.pop(col, None)
        if not cand:
            continue
        best = None
        best_key = None
        for idx in cand:
            res = work[idx][0][1]
            key = ((res & -res).bit_length() - 1, idx)
            if best_key is None or key < best_key:
                best_key = key
                best = idx
        v = best_key[0]
        prow = work[best]
        odd = prow[0][1] >> v
        if odd != 1:
            inv = pow(odd, -1, modulus)
            prow = [(c, (r * inv) & mask) for c, r in prow]
        work[best] = prow
        for idx in cand:
            if idx == best:
                continue
            row = work[idx]
            q = row[0][1] >> v
            row = _submul(row, q, prow, mask)
            work[idx] = row
            if row:
                buckets.setdefault(row[0][0], []).append(idx)
        pivots.append((col, v))
        pivot_rows.append(prow)

    # Back-substitution: make every entry sitting in a later pivot column a
    # canonical residue below that pivot's 2-power.  Later rows are final by
    # the time earlier rows are reduced against them.
    for t in range(len(pivots) - 2, -1, -1):
        row = pivot_rows[t]
        if len(row) > 1:
            tail = _reduce_items(row[1:], pivots, pivot_rows, mask)
            pivot_rows[t] = [row[0]] + tail

    col_index = {col: t for t, (col, _) in enumerate(pivots)}
    return Echelon(
        K=K,
        ncols=ncols,
        pivots=tuple(pivots),
        rows=tuple(tuple(r) for r in pivot_rows),
        _col_index=col_index,
    )


def reduce_vector(E: Echelon, v: Iterable[tuple[int, int]]) -> SparseRow:
    """Canonical residue of v modulo the row lattice of E.

    Entries in pivotless columns are left untouched; any such nonzero entry
    certifies non-membership on its own.
    """
    mask = (1 << E.K) - 1
    items = [(c, r & mask) for c, r in v if r & mask]
    for c, _ in items:
        if not 0 <= c < E.ncols:
            raise ValueError(f"column {c} outside 0..{E.ncols - 1}")
    return _reduce_items(items, E.pivots, E.rows, mask)


def is_zero_in_coker(E: Echelon, v: Iterable[tuple[int, int]]) -> bool:
    """Whether v lies in the row lattice, i.e. maps to zero in the cokernel."""
    return not reduce_vector(E, v)


def element_order_log2(E: Echelon, v: Iterable[tuple[int, int]]) -> int:
    """Minimal a with 2**a * v zero in the cokernel; 0 when v is already zero."""
    mask = (1 << E.K) - 1
    residue = reduce_vector(E, v)
    for a in range(E.K + 1):
        if not residue:
            return a
        doubled = [(c, (r << 1) & mask) for c, r in residue]
        residue = _reduce_items([cr for cr in doubled if cr[1]], E.pivots, E.rows, mask)
    raise PrecisionExhaustedError(
        f"no power 2**a with a <= {E.K} annihilates the vector"
    )


def coker_order_log2(E: Echelon) -> int:
    """log2 of the cokernel order: the sum of all pivot valuations.

    Requires every column to have a pivot; otherwise the first pivotless
    column is reported via IncompleteEchelonError.
    """
    if len(E.pivots) != E.ncols:
        for col in range(E.ncols):
            if col not in E._col_index:
                raise IncompleteEchelonError(col)
    return sum(v for _, v in E.pivots)


def lattices_equal(
    A: Iterable[Sequence[tuple[int, int]]],
    B: Iterable[Sequence[tuple[int, int]]],
    ncols: int,
    K: int,
) -> bool:
    """Whether two row sets span the same lattice over Z/2**K."""
    rows_a = list(A)
    rows_b = list(B)
    ech_a = echelonize(rows_a, ncols, K)
    ech_b = echelonize(rows_b, ncols, K)
    return all(is_zero_in_coker(ech_b, row) for row in rows_a) and all(
        is_zero_in_coker(ech_a, row) for row in rows_b
    )
