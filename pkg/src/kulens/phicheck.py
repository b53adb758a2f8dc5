"""Certificate homomorphisms phi_k (k = 2..5) and their defining congruences.

Each phi_k is an explicit integer-valued function on the generators of one
grading component, transcribed into ``data/phi_tables.txt`` (rows
``k i j value``, nonzero entries only, i <= j half).  phi_k certifies that
2**(e-k) u**(3*2**(k-1)-3) [0,0] is nonzero: applied to every defining
relation it lands in 2**(k+e-1) Z, while on that class it gives exactly
2**(k+e-2).

The table transcription is the one manual step here, so it is kept in a
plain-text file with a pinned checksum and is exercised by the congruence
suite, which any single wrong entry would break.
"""

from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from typing import Mapping

from .twolocal import nu

__all__ = [
    "PHI_DATA_SHA256",
    "PhiTable",
    "check_binom_difference_valuation",
    "phi_relation_ok",
    "phi_table",
    "verify_nondegeneracy",
    "verify_phi",
]

#: Pinned digest of data/phi_tables.txt; guards against transcription drift.
PHI_DATA_SHA256 = "f02339d5f02da79b322fa27cca96ed1d535026744df284da7ad879f8376849ca"


@dataclass(frozen=True)
class PhiTable:
    """phi_k(i, j) on the grading component with i + j <= 3*2**(k-1) - 3.

    Values default to 0 where the table lists nothing; phi(i, j) == phi(j, i)
    for every pair.  Entries may be negative; congruence checks reduce them
    modulo the relevant 2-power only at comparison time.
    """

    k: int
    values: Mapping[tuple[int, int], int]

    @property
    def top(self) -> int:
        """Largest i + j in the domain: 3*2**(k-1) - 3."""
        return 3 * 2 ** (self.k - 1) - 3

    def value(self, i: int, j: int) -> int:
        if i < 0 or j < 0:
            return 0
        return self.values.get((i, j), 0)

    __call__ = value


@lru_cache(maxsize=1)
def _load_tables() -> dict[int, PhiTable]:
    data = resources.files("kulens").joinpath("data/phi_tables.txt").read_bytes()
    digest = hashlib.sha256(data).hexdigest()
    if digest != PHI_DATA_SHA256:
        raise RuntimeError(
            "phi table data file does not match its pinned checksum: "
            f"{digest} != {PHI_DATA_SHA256}"
        )
    raw: dict[int, dict[tuple[int, int], int]] = {k: {} for k in (2, 3, 4, 5)}
    for line in data.decode().splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        k_s, i_s, j_s, v_s = line.split()
        k, i, j, v = int(k_s), int(i_s), int(j_s), int(v_s)
        if k not in raw:
            raise ValueError(f"unsupported table index k = {k}")
        if i > j:
            raise ValueError(f"table rows must have i <= j, got ({i}, {j})")
        if i + j > 3 * 2 ** (k - 1) - 3:
            raise ValueError(f"entry ({i}, {j}) outside the grading for k = {k}")
        raw[k][(i, j)] = v
        raw[k][(j, i)] = v
    return {k: PhiTable(k=k, values=vals) for k, vals in raw.items()}


def phi_table(k: int) -> PhiTable:
    """The transcribed certificate table for k = 2..5."""
    if k not in (2, 3, 4, 5):
        raise ValueError(f"tables exist for k = 2..5 only, got {k}")
    return _load_tables()[k]


def phi_relation_ok(k: int, e: int, i: int, j: int) -> bool:
    """Both relation families at (i, j) map into 2**(k+e-1) Z under phi_k.

    Binomial coefficients are exact big integers; the modulus 2**(k+e-1)
    varies with e, so no fixed-precision truncation is involved.
    """
    phi = phi_table(k)
    mod = 1 << (k + e - 1)
    width = 1 << e
    s_a = sum(math.comb(width, l + 1) * phi.value(i - l, j) for l in range(i + 1))
    if s_a % mod:
        return False
    s_b = sum(math.comb(width, l + 1) * phi.value(i, j - l) for l in range(j + 1))
    return s_b % mod == 0


def verify_phi(k: int, e: int) -> bool:
    """Whether phi_k kills every relation of M_e modulo 2**(k+e-1).

    The mirror family follows from table symmetry but is checked
    independently anyway.
    """
    if e < k:
        raise ValueError(f"need e >= k, got e={e}, k={k}")
    top = phi_table(k).top
    for i in range(top + 1):
        for j in range(top + 1 - i):
            if not phi_relation_ok(k, e, i, j):
                return False
    return True


def verify_nondegeneracy(k: int, e: int) -> bool:
    """2**(e-k) phi_k(0,0) is exactly 2**(k+e-2), nonzero mod 2**(k+e-1)."""
    if e < k:
        raise ValueError(f"need e >= k, got e={e}, k={k}")
    mod = 1 << (k + e - 1)
    return (2 ** (e - k) * phi_table(k).value(0, 0)) % mod == 1 << (k + e - 2)


def check_binom_difference_valuation(e: int) -> bool:
    """nu(C(2**(e+1), l) - 2 C(2**e, l)) == 2e + 1 - floor(log2(l-1)) - nu(l)
    for all 1 < l < 2**(e+1), with exact big-integer binomials."""
    if e < 2:
        raise ValueError(f"need e >= 2, got {e}")
    big, small = 1 << (e + 1), 1 << e
    for l in range(2, 1 << (e + 1)):
        diff = math.comb(big, l) - 2 * math.comb(small, l)
        # floor(log2(l - 1)) == (l - 1).bit_length() - 1 for l >= 2
        if diff == 0 or nu(diff) != 2 * e + 2 - (l - 1).bit_length() - nu(l):
            return False
    return True
