"""Topological-complexity lower bounds for 2**e-torsion lens spaces.

The bound engine scans every instance of the arithmetic criterion

    b(m + 2**t - 1, e) >= 2m - 2**t   whenever 0 <= t < e and alpha(m) = t + e

(including the elementary t = 0 case) and takes the best one applicable to a
given dimension; monotonicity in n is automatic because the feasible set
only grows.  The reported number doubles into a lower bound for the
topological complexity of the (2n+1)-dimensional lens space; the matching
upper bound 2b + 1 is displayed alongside but never asserted as attained.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .twolocal import alpha

__all__ = [
    "BoundReport",
    "b_lower",
    "bound_table",
    "table_csv",
    "table_json",
    "tc_lower",
]


@dataclass(frozen=True)
class BoundReport:
    """Best scanned bound for half-dimension n and torsion exponent e."""

    n: int
    e: int
    b_lower: int
    witnesses: tuple[tuple[int, int], ...]

    @property
    def tc_lower(self) -> int:
        return 2 * self.b_lower

    @property
    def tc_upper_display(self) -> int:
        """The sandwiching upper bound 2b + 1; informational only."""
        return 2 * self.b_lower + 1


def b_lower(n: int, e: int) -> BoundReport:
    """Max of 2m - 2**t over all (m, t) with alpha(m) = t + e, m + 2**t - 1 <= n.

    The scan over m is exhaustive (m <= n suffices since t >= 0); witnesses
    achieving the max are recorded in ascending (m, t) order.
    """
    if n < 0:
        raise ValueError(f"need n >= 0, got {n}")
    if e < 1:
        raise ValueError(f"need e >= 1, got {e}")
    best = 0
    wits: list[tuple[int, int]] = []
    for t in range(e):
        step = 1 << t
        target = t + e
        for m in range(1, n - step + 2):
            if alpha(m) == target:
                v = 2 * m - step
                if v > best:
                    best = v
                    wits = [(m, t)]
                elif v == best and best > 0:
                    wits.append((m, t))
    wits.sort()
    return BoundReport(n=n, e=e, b_lower=best, witnesses=tuple(wits))


def tc_lower(dim: int, e: int) -> int:
    """Lower bound 2*b((dim-1)/2, e) for the topological complexity in odd dim."""
    if dim < 1 or dim % 2 == 0:
        raise ValueError(f"dimension must be odd and >= 1, got {dim}")
    return b_lower((dim - 1) // 2, e).tc_lower


def bound_table(e: int, n_max: int) -> list[BoundReport]:
    """Reports for n = 0..n_max; b_lower is non-decreasing by construction."""
    if n_max < 0:
        raise ValueError(f"need n_max >= 0, got {n_max}")
    return [b_lower(n, e) for n in range(n_max + 1)]


def _first_witness(report: BoundReport) -> tuple[object, object]:
    if report.witnesses:
        return report.witnesses[0]
    return "", ""


def table_csv(reports: list[BoundReport]) -> str:
    lines = ["n,e,b_lower,tc_lower,witness_m,witness_t"]
    for rep in reports:
        wm, wt = _first_witness(rep)
        lines.append(f"{rep.n},{rep.e},{rep.b_lower},{rep.tc_lower},{wm},{wt}")
    return "\n".join(lines) + "\n"


def table_json(reports: list[BoundReport]) -> str:
    rows = []
    for rep in reports:
        wm, wt = _first_witness(rep)
        rows.append(
            {
                "n": rep.n,
                "e": rep.e,
                "b_lower": rep.b_lower,
                "tc_lower": rep.tc_lower,
                "witness_m": wm if wm != "" else None,
                "witness_t": wt if wt != "" else None,
            }
        )
    return json.dumps(rows, indent=None, separators=(",", ":")) + "\n"
