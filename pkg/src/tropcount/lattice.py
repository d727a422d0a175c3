"""Integer lattice vectors and validation of the discrete counting data."""
from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Iterable, NamedTuple, Sequence


class Vec(NamedTuple):
    """A vector in Z^2.  Tuples compare and hash cheaply, which the
    enumeration code relies on heavily."""

    x: int
    y: int

    def __add__(self, other: "Vec") -> "Vec":  # type: ignore[override]
        return Vec(self.x + other.x, self.y + other.y)

    def __sub__(self, other: "Vec") -> "Vec":
        return Vec(self.x - other.x, self.y - other.y)

    def __neg__(self) -> "Vec":
        return Vec(-self.x, -self.y)

    def __mul__(self, c: int) -> "Vec":  # type: ignore[override]
        return Vec(c * self.x, c * self.y)

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return self.x == 0 and self.y == 0


ZERO = Vec(0, 0)


def vec(v: Iterable[int]) -> Vec:
    x, y = v
    if int(x) != x or int(y) != y:
        raise TypeError(f"lattice vectors need integer entries, got {v!r}")
    return Vec(int(x), int(y))


def vsum(vectors: Iterable[Vec]) -> Vec:
    sx = sy = 0
    for v in vectors:
        sx += v[0]
        sy += v[1]
    return Vec(sx, sy)


def wedge(v: Sequence[int], w: Sequence[int]) -> int:
    """Determinant of the matrix with columns v and w."""
    return v[0] * w[1] - v[1] * w[0]


def lattice_length(v: Sequence[int]) -> int:
    """Largest l with v = l * (integral vector)."""
    if v[0] == 0 and v[1] == 0:
        raise ValueError("no lattice length: zero vector")
    return gcd(abs(v[0]), abs(v[1]))


class ProblemError(ValueError):
    """Invalid (degree, descendant profile) data.  ``code`` is stable and
    machine readable."""

    def __init__(self, code: str, message: str):
        super().__init__(f"{code}: {message}")
        self.code = code


ZERO_ENTRY = "zero-entry"
NONZERO_SUM = "nonzero-sum"
NEGATIVE_K = "negative-k"
BALANCE_VIOLATION = "balance-violation"


@dataclass(frozen=True)
class Degree:
    """An ordering of the multiset of end directions."""

    entries: tuple[Vec, ...]

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __getitem__(self, i: int) -> Vec:
        return self.entries[i]

    def multiplicities(self) -> dict[Vec, int]:
        out: dict[Vec, int] = {}
        for v in self.entries:
            out[v] = out.get(v, 0) + 1
        return out


@dataclass(frozen=True)
class DescendantProfile:
    k: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.k)

    @property
    def total(self) -> int:
        return sum(self.k)

    def valency(self, i: int) -> int:
        """Valency of the vertex carrying marked point ``i`` (1-based)."""
        return self.k[i - 1] + 2


def validate_problem(delta: Iterable[Sequence[int]], k: Iterable[int]) -> tuple[Degree, DescendantProfile]:
    entries = tuple(vec(v) for v in delta)
    ks = tuple(int(x) for x in k)
    for i, v in enumerate(entries):
        if v.is_zero():
            raise ProblemError(ZERO_ENTRY, f"entry {i} of the degree is the zero vector")
    total = vsum(entries)
    if not total.is_zero():
        raise ProblemError(NONZERO_SUM, f"degree entries sum to {tuple(total)}, not zero")
    for i, ki in enumerate(ks):
        if ki < 0:
            raise ProblemError(NEGATIVE_K, f"k[{i}] = {ki} is negative")
    n, r = len(ks), len(entries)
    if n - 1 + r != 2 * n + sum(ks):
        raise ProblemError(
            BALANCE_VIOLATION,
            f"n - 1 + |delta| = {n - 1 + r} but 2n + sum(k) = {2 * n + sum(ks)}",
        )
    return Degree(entries), DescendantProfile(ks)


def trivalent_count(degree: Degree, profile: DescendantProfile) -> int:
    """Number of unpointed trivalent vertices of every curve in the count."""
    return len(degree) - 2 - profile.total


def random_balanced(rng, n: int, bound: int) -> tuple[Vec, ...]:
    """n non-zero vectors with entries in [-bound, bound] summing to zero,
    drawn by rejection from ``rng`` (a random.Random)."""
    if n < 2:
        raise ValueError("a balanced tuple needs at least two vectors")
    while True:
        head = [Vec(rng.randint(-bound, bound), rng.randint(-bound, bound)) for _ in range(n - 1)]
        last = -vsum(head)
        vs = (*head, last)
        if all(not v.is_zero() and max(abs(v.x), abs(v.y)) <= bound for v in vs):
            return vs
