"""Series-level checks on the hierarchy side: the cosine formula for the
I_{g,d} numbers, the per-vertex generating series, and a truncated
Moyal product on Fourier symbols."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations
from math import factorial
from typing import Sequence

from .algebra import GaussianRational, USeries, cos_series, sin_series
from .lattice import Vec, vec, vsum, wedge
from .multiplicity import Normalization, mu

I = GaussianRational(0, 1)

Frequency = tuple[int, int]


@dataclass
class FourierSymbol:
    """Finite sum of p_(a,b)(eps) e^{i(a y + b x)} where each p is a power
    series in eps known through ``order``."""

    order: int
    terms: dict[Frequency, USeries] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for freq, s in self.terms.items():
            if s.order < self.order:
                raise ValueError(f"coefficient of {freq} is only known to eps^{s.order}")
            s = s.truncate(self.order)
            if any(s.coefficients):
                clean[(int(freq[0]), int(freq[1]))] = s
        self.terms = clean

    @classmethod
    def monomial(cls, a: int, b: int, order: int, coefficient=1) -> "FourierSymbol":
        return cls(order, {(a, b): USeries([coefficient] + [0] * order)})

    @classmethod
    def constant(cls, c, order: int) -> "FourierSymbol":
        return cls.monomial(0, 0, order, c)

    def dx(self, k: int = 1) -> "FourierSymbol":
        # d/dx e^{i(ay+bx)} = i b e^{i(ay+bx)}
        return FourierSymbol(self.order, {(a, b): s * (I * b) ** k for (a, b), s in self.terms.items()})

    def dy(self, k: int = 1) -> "FourierSymbol":
        return FourierSymbol(self.order, {(a, b): s * (I * a) ** k for (a, b), s in self.terms.items()})

    def __add__(self, other: "FourierSymbol") -> "FourierSymbol":
        order = min(self.order, other.order)
        out = {f: s.truncate(order) for f, s in self.terms.items()}
        for f, s in other.terms.items():
            out[f] = out[f] + s.truncate(order) if f in out else s.truncate(order)
        return FourierSymbol(order, out)

    def scale(self, c) -> "FourierSymbol":
        if isinstance(c, USeries):
            return FourierSymbol(min(self.order, c.order), {f: s * c for f, s in self.terms.items()})
        return FourierSymbol(self.order, {f: s * c for f, s in self.terms.items()})

    def pointwise(self, other: "FourierSymbol") -> "FourierSymbol":
        """The commutative product."""
        order = min(self.order, other.order)
        out: dict[Frequency, USeries] = {}
        for (a1, b1), s1 in self.terms.items():
            for (a2, b2), s2 in other.terms.items():
                f = (a1 + a2, b1 + b2)
                p = s1 * s2
                out[f] = out[f] + p if f in out else p
        return FourierSymbol(order, out)

    def __eq__(self, other) -> bool:
        if not isinstance(other, FourierSymbol):
            return NotImplemented
        return self.order == other.order and self.terms == other.terms

    def coefficient(self, a: int, b: int) -> USeries:
        return self.terms.get((a, b), USeries.zero(self.order))


def _eps_power(n: int, order: int) -> USeries:
    """(i eps / 2)^n as a series in eps."""
    c = [GaussianRational(0)] * (order + 1)
    if n <= order:
        c[n] = (I / 2) ** n
    return USeries(c)


def _star_kernel(a1: int, b1: int, a2: int, b2: int, order: int) -> USeries:
    """The eps-series multiplying e^{i((a1+a2)y+(b1+b2)x)} in the star
    product of two single frequencies: the derivative double sum with
    dx -> i b and dy -> i a."""
    dx1, dy1, dx2, dy2 = I * b1, I * a1, I * b2, I * a2
    out = []
    for n in range(order + 1):
        acc = GaussianRational(0)
        for k1 in range(n + 1):
            k2 = n - k1
            term = dx1**k1 * dy1**k2 * dx2**k2 * dy2**k1
            acc = acc + term * Fraction((-1) ** k2, factorial(k1) * factorial(k2))
        out.append(acc * (I / 2) ** n)
    return USeries(out)


def moyal_star(f: FourierSymbol, g: FourierSymbol) -> FourierSymbol:
    """sum_n sum_{k1+k2=n} (-1)^k2 (i eps)^n / (2^n k1! k2!)
    dx^k1 dy^k2 f * dx^k2 dy^k1 g, through the shared eps order.  The
    derivatives act diagonally on frequencies, so the sum is taken one
    pair of terms at a time."""
    if f.order != g.order:
        raise ValueError("both symbols need the same eps truncation")
    order = f.order
    out: dict[Frequency, USeries] = {}
    for (a1, b1), s1 in f.terms.items():
        for (a2, b2), s2 in g.terms.items():
            key = (a1 + a2, b1 + b2)
            p = s1 * s2 * _star_kernel(a1, b1, a2, b2, order)
            out[key] = out[key] + p if key in out else p
    return FourierSymbol(order, out)


def moyal_star_by_derivatives(f: FourierSymbol, g: FourierSymbol) -> FourierSymbol:
    """The same product assembled from whole-symbol derivatives; slower,
    kept as an independent route."""
    if f.order != g.order:
        raise ValueError("both symbols need the same eps truncation")
    order = f.order
    total = FourierSymbol(order)
    for n in range(order + 1):
        prefactor = _eps_power(n, order)
        for k1 in range(n + 1):
            k2 = n - k1
            left = f.dx(k1).dy(k2)
            right = g.dx(k2).dy(k1)
            c = Fraction((-1) ** k2, factorial(k1) * factorial(k2))
            total = total + left.pointwise(right).scale(prefactor * c)
    return total


def _phase_series(c: Fraction, order: int) -> USeries:
    """cos(c eps / 2) through eps^order."""
    return cos_series(Fraction(c, 2), order)


def _cosine_product(a: Sequence[int], b: Sequence[int], order: int) -> USeries:
    """prod_j cos(u (a_{j+1} B_j - b_{j+1} A_j) / 2) for one ordering."""
    out = USeries.one(order)
    sa = sb = 0
    for j in range(len(a)):
        if j:
            out = out * _phase_series(a[j] * sb - b[j] * sa, order)
        sa += a[j]
        sb += b[j]
    return out


def igd_series(a: Sequence[int], b: Sequence[int], order: int) -> USeries:
    """Average over all orderings of the pairs (a_j, b_j) of the product of
    cosines; the u^(2g) coefficient is I_{g,d}."""
    if len(a) != len(b) or not a:
        raise ValueError("a and b need the same positive length")
    pairs = list(zip(a, b))
    total = USeries.zero(order)
    count = 0
    for perm in permutations(pairs):
        total = total + _cosine_product([p[0] for p in perm], [p[1] for p in perm], order)
        count += 1
    return total / count


def f3u_series(v1: Sequence[int], v2: Sequence[int], order: int) -> USeries:
    """2 sin(u |v1 ^ v2| / 2)."""
    w = abs(wedge(vec(v1), vec(v2)))
    return sin_series(Fraction(w, 2), order) * 2


def trivalent_from_igd(v1: Sequence[int], v2: Sequence[int], order: int) -> USeries:
    """The trivalent series rebuilt from I_{g,1}: the dilaton equation turns
    |w| I_{g,1} into the u^(2g+1) coefficient after dividing by 2g+1."""
    v1, v2 = vec(v1), vec(v2)
    w = abs(wedge(v1, v2))
    # frequency (a, b) pairs with the vector (b, a), so a2 b1 - b2 a1 = v1 ^ v2
    ig = igd_series([v1.y, v2.y], [v1.x, v2.x], order)
    out = [GaussianRational(0)] * (order + 1)
    for j in range(1, order + 1, 2):
        g = (j - 1) // 2
        out[j] = ig[2 * g] * Fraction(w, 2 * g + 1)
    return USeries(out)


def fmp_series(vectors: Sequence[Sequence[int]], order: int) -> USeries:
    """Generating series of a pointed vertex with m >= 3 balanced
    directions: the average over orderings of the first m-1 of them of
    prod_j cos(u (d_{j+1} ^ (d_1 + ... + d_j)) / 2)."""
    vs = [vec(v) for v in vectors]
    m = len(vs)
    if m < 3:
        raise ValueError("pointed vertex series needs at least three directions")
    if not vsum(vs).is_zero():
        raise ValueError("directions must be balanced")
    total = USeries.zero(order)
    for perm in permutations(vs[:-1]):
        term = USeries.one(order)
        running = Vec(0, 0)
        for j, d in enumerate(perm):
            if j:
                term = term * cos_series(Fraction(wedge(d, running), 2), order)
            running = running + d
        total = total + term
    return total / factorial(m - 1)


def fmp_from_mu(vectors: Sequence[Sequence[int]], order: int) -> USeries:
    """The same series through the cyclic-order sum mu under q = e^{iu}."""
    m = len(vectors)
    return mu(vectors).substitute_exponential(order) / factorial(m - 1)


@dataclass
class MoyalReport:
    passed: bool
    star: USeries
    cosine: USeries

    def __bool__(self) -> bool:
        return self.passed


def symmetrized_star(a: Sequence[int], b: Sequence[int], order: int) -> FourierSymbol:
    """Average over orderings of the iterated star product of the
    single-frequency symbols e^{i(a_j y + b_j x)}."""
    symbols = [FourierSymbol.monomial(x, y, order) for x, y in zip(a, b)]
    prefixes: dict[tuple[int, ...], FourierSymbol] = {}

    def product(perm: tuple[int, ...]) -> FourierSymbol:
        if len(perm) == 1:
            return symbols[perm[0]]
        found = prefixes.get(perm)
        if found is None:
            found = prefixes[perm] = moyal_star(product(perm[:-1]), symbols[perm[-1]])
        return found

    total = FourierSymbol(order)
    count = 0
    for perm in permutations(range(len(symbols))):
        total = total + product(perm)
        count += 1
    return total.scale(Fraction(1, count))


def verify_moyal_claim(a: Sequence[int], b: Sequence[int], order: int) -> MoyalReport:
    """Compare the eps-series of the symmetrized star product (a single
    frequency) with the averaged cosine product, coefficient by coefficient."""
    if len(a) != len(b) or not a:
        raise ValueError("a and b need the same positive length")
    star = symmetrized_star(a, b, order).coefficient(sum(a), sum(b))
    cosine = igd_series(a, b, order)
    return MoyalReport(star == cosine, star, cosine)


def curve_series_consistency(curve, order: int) -> bool:
    """Per-vertex series product against the u-substitution of the curve's
    raw multiplicity."""
    from .count import curve_multiplicity

    t = curve.type
    product = USeries.one(order)
    for v in range(t.num_vertices):
        out = t.outgoing(v)
        if t.markers[v]:
            if len(out) >= 3:
                product = product * fmp_series(out, order)
        else:
            product = product * f3u_series(out[0], out[1], order)
    expected = curve_multiplicity(curve, Normalization.RAW).substitute_exponential(order)
    return product == expected
