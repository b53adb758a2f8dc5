"""Module-level questions about M_e answered through echelonized presentations.

Three kinds of question: the exact 2-power annihilating the bottom class in
each grading (the annihilator staircase), nonvanishing of binomially-weighted
(x - y)-power classes, and cokernel orders against the predicted diagonal
profile.  Each question reduces to membership tests against a cached echelon
of the relevant grading.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

from .localhnf import (
    Echelon,
    coker_order_log2,
    echelonize,
    element_order_log2,
    is_zero_in_coker,
)
from .presentation import build_grading, diagonal_valuations, top_grading
from .twolocal import alpha, default_precision

__all__ = [
    "AnnihilatorProfile",
    "HypothesisViolationError",
    "XYClass",
    "annihilator_profile",
    "bottom_class_order_log2",
    "check_Ie",
    "expected_staircase",
    "grading_echelon",
    "group_order_check",
    "xy_class",
    "xy_nonzero",
]


class HypothesisViolationError(ValueError):
    """Parameters fall outside the binary-digit-sum hypotheses; no claim holds."""


@lru_cache(maxsize=None)
def grading_echelon(e: int, d: int, K: Optional[int] = None) -> Echelon:
    """Echelonized relation lattice of G_d, cached per (e, d, K).

    The cache makes repeated queries about one grading cheap and is safe to
    read concurrently; entries are immutable once built.
    """
    pres = build_grading(e, d, K)
    return echelonize(pres.rows, pres.ncols, pres.K)


def bottom_class_order_log2(e: int, b: int, K: Optional[int] = None) -> int:
    """a with 2**a the exact order of u**b [0, 0] in G_b."""
    ech = grading_echelon(e, b, K)
    # u**b [0,0] is the last generator of G_b.
    last = (b + 1) * (b + 2) // 2 - 1
    return element_order_log2(ech, [(last, 1)])


@dataclass(frozen=True)
class AnnihilatorProfile:
    """a(b) = min{a : 2**a u**b [0,0] = 0 in G_b} for b = 0..3*2**(e-1)-2."""

    e: int
    a: tuple[int, ...]


def expected_staircase(e: int) -> tuple[int, ...]:
    """The profile the annihilator-ideal description predicts.

    The ideal is generated by 2**(e-l) u**c(l) with c(0) = 0 and
    c(l) = 3*2**(l-1) - 2 for l = 1..e, so a(b) = e - max{l : c(l) <= b}.
    """
    if e < 1:
        raise ValueError(f"torsion exponent must be >= 1, got {e}")
    out = []
    for b in range(top_grading(e) + 1):
        l = 0
        while l < e and 3 * 2**l - 2 <= b:
            l += 1
        out.append(e - l)
    return tuple(out)


def annihilator_profile(e: int, K: Optional[int] = None) -> AnnihilatorProfile:
    """Compute a(b) for every grading b by echelonizing G_b."""
    profile = tuple(
        bottom_class_order_log2(e, b, K) for b in range(top_grading(e) + 1)
    )
    return AnnihilatorProfile(e=e, a=profile)


def check_Ie(e: int, K: Optional[int] = None) -> bool:
    """Whether the computed annihilator profile equals the predicted staircase."""
    return annihilator_profile(e, K).a == expected_staircase(e)


@dataclass(frozen=True)
class XYClass:
    """The class (x - y)**N of G_d, d = 2n - N, written over the u**0 generators.

    Monomials x**a y**b with a > n or b > n are absent because the summation
    bounds encode the truncation x**(n+1) = y**(n+1) = 0 directly.
    """

    e: int
    t: int
    B: int
    flavor: str
    n: int
    N: int
    d: int
    vector: tuple[tuple[int, int], ...]


def _xy_parameters(t: int, B: int, flavor: str) -> tuple[int, int]:
    if flavor == "c1":
        return 3 * 2 ** (t - 1) - 1 + 2 ** (t + 1) * B, 2 ** (t + 2) * B
    if flavor == "c2":
        return 2**t - 1 + 2**t * B, (2 * B - 1) * 2**t
    raise ValueError(f"flavor must be 'c1' or 'c2', got {flavor!r}")


def xy_class(e: int, t: int, B: int, flavor: str, K: Optional[int] = None) -> XYClass:
    """Build the (x - y)**N class for either parameter family."""
    if not 1 <= t < e:
        raise ValueError(f"need 1 <= t < e, got t={t}, e={e}")
    if B < 1:
        raise ValueError(f"need B >= 1, got {B}")
    if K is None:
        K = default_precision(e)
    n, N = _xy_parameters(t, B, flavor)
    d = 2 * n - N
    if d != 3 * 2**t - 2:
        raise AssertionError(f"internal grading mismatch: d={d}")
    mask = (1 << K) - 1
    entries = []
    for j in range(max(0, N - n), min(n, N) + 1):
        c = math.comb(N, j)
        if j & 1:
            c = -c
        c &= mask
        if c:
            # u**0 block: flat index of [i, j'] is i.
            entries.append((n - j, c))
    entries.sort()
    return XYClass(e=e, t=t, B=B, flavor=flavor, n=n, N=N, d=d, vector=tuple(entries))


def _check_xy_hypothesis(e: int, t: int, B: int, flavor: str) -> bool:
    need = e + t - 1 if flavor == "c1" else e + t
    return alpha(B) == need


def xy_nonzero(
    e: int,
    t: int,
    B: int,
    flavor: str,
    K: Optional[int] = None,
    enforce_hypothesis: bool = True,
) -> bool:
    """Whether (x - y)**N is nonzero in G_d.

    The digit-sum hypotheses (alpha(B) = e+t-1 for c1, e+t for c2) are
    enforced by default: outside them nothing is claimed, and silently
    returning an unverified boolean invites misreading.  Pass
    enforce_hypothesis=False to compute anyway.
    """
    cls = xy_class(e, t, B, flavor, K)
    if enforce_hypothesis and not _check_xy_hypothesis(e, t, B, flavor):
        need = e + t - 1 if flavor == "c1" else e + t
        raise HypothesisViolationError(
            f"alpha({B}) = {alpha(B)} but {flavor} needs {need}; "
            "pass enforce_hypothesis=False to compute anyway"
        )
    ech = grading_echelon(e, cls.d, K)
    return not is_zero_in_coker(ech, cls.vector)


def group_order_check(e: int, d: int, K: Optional[int] = None) -> bool:
    """Whether log2 |G_d| equals the predicted diagonal partial sum."""
    if d > top_grading(e):
        raise ValueError(
            f"d = {d} beyond {top_grading(e)}: the diagonal profile stops there"
        )
    ech = grading_echelon(e, d, K)
    return coker_order_log2(ech) == sum(diagonal_valuations(e)[: d + 1])
