"""Genus-zero plane curve counts from the WDVV recursion.  Shares no code
with the tropical side, so it can serve as an oracle for q -> 1."""
from __future__ import annotations

from functools import lru_cache
from math import comb


def _check(d: int) -> None:
    if not isinstance(d, int) or isinstance(d, bool) or d < 1:
        raise ValueError(f"degree must be a positive integer, got {d!r}")


def _term(d: int, d1: int, n1: int, n2: int) -> int:
    d2 = d - d1
    return n1 * n2 * (d1 * d1 * d2 * d2 * comb(3 * d - 4, 3 * d1 - 2) - d1**3 * d2 * comb(3 * d - 4, 3 * d1 - 1))


@lru_cache(maxsize=None)
def kontsevich(d: int) -> int:
    """Number of rational degree-d plane curves through 3d-1 general points."""
    _check(d)
    if d == 1:
        return 1
    return sum(_term(d, d1, kontsevich(d1), kontsevich(d - d1)) for d1 in range(1, d))


def kontsevich_table(d: int) -> list[int]:
    """N_1..N_d by a plain bottom-up loop, without the memo."""
    _check(d)
    table = [0, 1]
    for e in range(2, d + 1):
        table.append(sum(_term(e, d1, table[d1], table[e - d1]) for d1 in range(1, e)))
    return table[1:]
