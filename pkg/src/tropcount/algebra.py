"""Exact coefficient rings: Gaussian rationals, Laurent polynomials in
s = q^(1/2), and truncated power series in u."""
from __future__ import annotations

from fractions import Fraction
from math import factorial
from numbers import Rational
from typing import Iterable, Mapping, Union

Scalar = Union[int, Fraction, "GaussianRational"]


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"not an exact rational: {x!r}")


class GaussianRational:
    """re + i*im with rational parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = _frac(re)
        self.im = _frac(im)

    @classmethod
    def coerce(cls, x) -> "GaussianRational":
        if isinstance(x, GaussianRational):
            return x
        return cls(x, 0)

    def __add__(self, other):
        o = GaussianRational.coerce(other)
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = GaussianRational.coerce(other)
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        return GaussianRational.coerce(other) - self

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __mul__(self, other):
        if isinstance(other, GaussianRational):
            return GaussianRational(
                self.re * other.re - self.im * other.im,
                self.re * other.im + self.im * other.re,
            )
        c = _frac(other)
        return GaussianRational(self.re * c, self.im * c)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, GaussianRational):
            den = other.re * other.re + other.im * other.im
            if den == 0:
                raise ZeroDivisionError("Gaussian rational division by zero")
            return self * other.conjugate() * Fraction(1, 1) / den
        c = _frac(other)
        return GaussianRational(self.re / c, self.im / c)

    def __pow__(self, e: int):
        if e < 0:
            return GaussianRational(1) / (self ** (-e))
        out = GaussianRational(1)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def conjugate(self):
        return GaussianRational(self.re, -self.im)

    def is_real(self) -> bool:
        return self.im == 0

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return self.im == 0 and self.re == other
        return NotImplemented

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __repr__(self):
        return f"GaussianRational({self.re}, {self.im})"

    def __str__(self):
        return format_coefficient(self)


I = GaussianRational(0, 1)
ONE = GaussianRational(1)
ZERO = GaussianRational(0)


def _rat_str(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _imag_str(y: Fraction) -> str:
    if abs(y) == 1:
        return "i" if y > 0 else "-i"
    return f"{_rat_str(y)}*i"


def format_coefficient(c: GaussianRational) -> str:
    if c.im == 0:
        return _rat_str(c.re)
    if c.re == 0:
        return _imag_str(c.im)
    sign = "+" if c.im > 0 else "-"
    return f"{_rat_str(c.re)}{sign}{_imag_str(abs(c.im))}"


def rational_to_json(x: Fraction) -> str:
    return _rat_str(_frac(x))


def gaussian_to_json(c: GaussianRational) -> list[str]:
    return [_rat_str(c.re), _rat_str(c.im)]


def gaussian_from_json(obj) -> GaussianRational:
    if isinstance(obj, (list, tuple)):
        re, im = obj
        return GaussianRational(Fraction(re), Fraction(im))
    return GaussianRational(Fraction(obj))


# -- Laurent polynomials in s = q^(1/2) --------------------------------------


class RefinedPolynomial:
    """Finite sum of c_e * s^e with s = q^(1/2).  Exponents are integers in
    units of q^(1/2); zero coefficients are never stored."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[int, Scalar] | None = None):
        clean: dict[int, GaussianRational] = {}
        if terms:
            for e, c in terms.items():
                g = GaussianRational.coerce(c)
                if g:
                    clean[int(e)] = g
        self._terms = clean

    @classmethod
    def constant(cls, c: Scalar) -> "RefinedPolynomial":
        return cls({0: c})

    @classmethod
    def monomial(cls, e: int, c: Scalar = 1) -> "RefinedPolynomial":
        return cls({e: c})

    @property
    def terms(self) -> dict[int, GaussianRational]:
        return dict(self._terms)

    def items(self):
        return sorted(self._terms.items())

    def coefficient(self, e: int) -> GaussianRational:
        return self._terms.get(e, ZERO)

    def is_zero(self) -> bool:
        return not self._terms

    def __add__(self, other):
        if not isinstance(other, RefinedPolynomial):
            other = RefinedPolynomial.constant(other)
        out = dict(self._terms)
        for e, c in other._terms.items():
            out[e] = out[e] + c if e in out else c
        return RefinedPolynomial(out)

    __radd__ = __add__

    def __neg__(self):
        return RefinedPolynomial({e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        if not isinstance(other, RefinedPolynomial):
            other = RefinedPolynomial.constant(other)
        return self + (-other)

    def __rsub__(self, other):
        return RefinedPolynomial.constant(other) - self

    def __mul__(self, other):
        if not isinstance(other, RefinedPolynomial):
            return self.scale(other)
        out: dict[int, GaussianRational] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = e1 + e2
                p = c1 * c2
                out[e] = out[e] + p if e in out else p
        return RefinedPolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers of a Laurent polynomial are not supported")
        out = RefinedPolynomial.constant(1)
        for _ in range(n):
            out = out * self
        return out

    def scale(self, c: Scalar) -> "RefinedPolynomial":
        g = GaussianRational.coerce(c)
        return RefinedPolynomial({e: v * g for e, v in self._terms.items()})

    def antipode(self) -> "RefinedPolynomial":
        """s -> 1/s."""
        return RefinedPolynomial({-e: c for e, c in self._terms.items()})

    def at_one(self) -> GaussianRational:
        """Value at q = 1."""
        total = ZERO
        for c in self._terms.values():
            total = total + c
        return total

    def substitute_exponential(self, order: int) -> "USeries":
        """Taylor expansion of p(q = e^{iu}) through u^order."""
        if order < 0:
            raise ValueError("truncation order must be non-negative")
        coeffs = [ZERO] * (order + 1)
        for e, c in self._terms.items():
            # s^e = exp(i e u / 2)
            step = GaussianRational(0, Fraction(e, 2))
            power = ONE
            for j in range(order + 1):
                coeffs[j] = coeffs[j] + c * power / factorial(j)
                power = power * step
        return USeries(coeffs)

    def __eq__(self, other):
        if isinstance(other, RefinedPolynomial):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction, GaussianRational)):
            return self == RefinedPolynomial.constant(other)
        return NotImplemented

    def __hash__(self):
        return hash(tuple(sorted(self._terms.items())))

    def __repr__(self):
        return f"RefinedPolynomial({self.to_text()!r})"

    def __str__(self):
        return self.to_text()

    def to_text(self) -> str:
        """Canonical rendering in powers of q, highest power first, e.g.
        ``q^2 - 2*q + 2*q^-1 - q^-2`` or ``(1/2)*q^(1/2) + (1/2)*q^(-1/2)``."""
        if not self._terms:
            return "0"
        parts: list[str] = []
        for e, c in sorted(self._terms.items(), reverse=True):
            negative = c.im == 0 and c.re < 0 or c.re == 0 and c.im < 0
            mag = -c if negative else c
            mono = _q_power(e)
            if mono == "1":
                body = _coef_text(mag, standalone=True)
            elif mag == ONE:
                body = mono
            else:
                body = f"{_coef_text(mag, standalone=False)}*{mono}"
            if not parts:
                parts.append(f"-{body}" if negative else body)
            else:
                parts.append(f"{'-' if negative else '+'} {body}")
        return " ".join(parts)

    def to_json(self) -> list:
        return [[e, *gaussian_to_json(c)] for e, c in sorted(self._terms.items())]

    @classmethod
    def from_json(cls, obj) -> "RefinedPolynomial":
        return cls({int(row[0]): gaussian_from_json(row[1:]) for row in obj})


def _q_power(e: int) -> str:
    if e == 0:
        return "1"
    if e % 2 == 0:
        h = e // 2
        return "q" if h == 1 else f"q^{h}"
    return f"q^({e}/2)"


def _coef_text(c: GaussianRational, standalone: bool) -> str:
    if c.im == 0:
        if c.re.denominator == 1:
            return str(c.re.numerator)
        return _rat_str(c.re) if standalone else f"({_rat_str(c.re)})"
    if c.re == 0 and (standalone or c.im == 1):
        return format_coefficient(c)
    return f"({format_coefficient(c)})"


def s_power(e: int) -> RefinedPolynomial:
    return RefinedPolynomial.monomial(e)


def bracket_plus(m: int) -> RefinedPolynomial:
    """q^{m/2} + q^{-m/2}."""
    return RefinedPolynomial({m: 1}) + RefinedPolynomial({-m: 1})


def bracket_minus(m: int) -> RefinedPolynomial:
    """q^{m/2} - q^{-m/2}."""
    return RefinedPolynomial({m: 1}) - RefinedPolynomial({-m: 1})


# -- truncated series in u ----------------------------------------------------


class USeries:
    """sum_{j<=K} c_j u^j with Gaussian rational coefficients, known modulo
    u^{K+1}.  Binary operations truncate to the smaller order."""

    __slots__ = ("coefficients",)

    def __init__(self, coefficients: Iterable[Scalar]):
        self.coefficients = tuple(GaussianRational.coerce(c) for c in coefficients)
        if not self.coefficients:
            raise ValueError("a series needs at least the constant coefficient")

    @property
    def order(self) -> int:
        return len(self.coefficients) - 1

    @classmethod
    def zero(cls, order: int) -> "USeries":
        return cls([0] * (order + 1))

    @classmethod
    def one(cls, order: int) -> "USeries":
        return cls([1] + [0] * order)

    def __getitem__(self, j: int) -> GaussianRational:
        if j > self.order:
            raise IndexError(f"coefficient u^{j} is beyond the truncation order {self.order}")
        return self.coefficients[j]

    def truncate(self, order: int) -> "USeries":
        if order > self.order:
            raise ValueError("cannot extend a truncated series")
        return USeries(self.coefficients[: order + 1])

    def __add__(self, other):
        if not isinstance(other, USeries):
            other = USeries([other] + [0] * self.order)
        k = min(self.order, other.order)
        return USeries(a + b for a, b in zip(self.coefficients[: k + 1], other.coefficients[: k + 1]))

    __radd__ = __add__

    def __neg__(self):
        return USeries(-c for c in self.coefficients)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, USeries):
            g = GaussianRational.coerce(other)
            return USeries(c * g for c in self.coefficients)
        k = min(self.order, other.order)
        a, b = self.coefficients, other.coefficients
        out = []
        for j in range(k + 1):
            acc = ZERO
            for i in range(j + 1):
                if a[i] and b[j - i]:
                    acc = acc + a[i] * b[j - i]
            out.append(acc)
        return USeries(out)

    __rmul__ = __mul__

    def __truediv__(self, c):
        return USeries(x / c for x in self.coefficients)

    def shift(self, m: int) -> "USeries":
        """Multiply by u^m, keeping the same truncation order."""
        return USeries(([ZERO] * m + list(self.coefficients))[: self.order + 1])

    def is_real(self) -> bool:
        return all(c.im == 0 for c in self.coefficients)

    def real_coefficients(self) -> list[Fraction]:
        if not self.is_real():
            raise ValueError("series has non-real coefficients")
        return [c.re for c in self.coefficients]

    def valuation(self) -> int | None:
        for j, c in enumerate(self.coefficients):
            if c:
                return j
        return None

    def __eq__(self, other):
        if not isinstance(other, USeries):
            return NotImplemented
        return self.coefficients == other.coefficients

    def __hash__(self):
        return hash(self.coefficients)

    def __repr__(self):
        return f"USeries({[format_coefficient(c) for c in self.coefficients]})"


def cos_series(x: Fraction | int, order: int) -> USeries:
    """cos(x u) through u^order."""
    x = Fraction(x)
    out = [Fraction(0)] * (order + 1)
    for j in range(0, order + 1, 2):
        out[j] = (-1) ** (j // 2) * x**j / factorial(j)
    return USeries(out)


def sin_series(x: Fraction | int, order: int) -> USeries:
    """sin(x u) through u^order."""
    x = Fraction(x)
    out = [Fraction(0)] * (order + 1)
    for j in range(1, order + 1, 2):
        out[j] = (-1) ** (j // 2) * x**j / factorial(j)
    return USeries(out)
