"""Exact univariate polynomials over the rationals.

Coefficients are Fractions stored in ascending order with trailing
zeros stripped, so tuple equality is polynomial equality.  The zero
polynomial has degree -1 by convention.  Nothing here knows about
elliptic surfaces; this is the arithmetic substrate for discriminant
analysis: division, gcd, squarefree splitting, rational roots, and
valuation refinement against squarefree moduli.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Union

Rational = Union[int, Fraction]


def _coerce(value: Rational) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise TypeError(f"expected an exact rational, got {type(value).__name__}")


@dataclass(frozen=True)
class Poly:
    coeffs: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        cs = [_coerce(c) for c in self.coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    @classmethod
    def of(cls, coeffs: Iterable[Rational]) -> "Poly":
        return cls(tuple(_coerce(c) for c in coeffs))

    @classmethod
    def constant(cls, value: Rational) -> "Poly":
        return cls((_coerce(value),))

    @classmethod
    def monomial(cls, degree: int, coeff: Rational = 1) -> "Poly":
        if degree < 0:
            raise ValueError("monomial degree must be non-negative")
        return cls((Fraction(0),) * degree + (_coerce(coeff),))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self) -> Fraction:
        if self.is_zero:
            raise ValueError("the zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __add__(self, other: "Poly") -> "Poly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return Poly(tuple(x + y for x, y in zip(a, b)) + a[len(b):])

    def __neg__(self) -> "Poly":
        return Poly(tuple(-c for c in self.coeffs))

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other: Union["Poly", Rational]) -> "Poly":
        if not isinstance(other, Poly):
            scalar = _coerce(other)
            return Poly(tuple(c * scalar for c in self.coeffs))
        if self.is_zero or other.is_zero:
            return Poly(())
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Poly(tuple(out))

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "Poly":
        if exponent < 0:
            raise ValueError("negative powers are not polynomials")
        out = Poly.constant(1)
        for _ in range(exponent):
            out = out * self
        return out

    def __divmod__(self, other: "Poly") -> tuple["Poly", "Poly"]:
        if other.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        quot = [Fraction(0)] * max(len(self.coeffs) - len(other.coeffs) + 1, 0)
        rem = list(self.coeffs)
        lead = other.leading
        for k in range(len(quot) - 1, -1, -1):
            c = rem[k + other.degree] / lead
            if c == 0:
                continue
            quot[k] = c
            for j, b in enumerate(other.coeffs):
                rem[k + j] -= c * b
        return Poly(tuple(quot)), Poly(tuple(rem))

    def __floordiv__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[0]

    def __mod__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[1]

    def evaluate(self, x: Rational) -> Fraction:
        x = _coerce(x)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> "Poly":
        return Poly(tuple(k * c for k, c in enumerate(self.coeffs) if k))

    def monic(self) -> "Poly":
        if self.is_zero:
            raise ValueError("cannot normalize the zero polynomial")
        return self * (1 / self.leading)

    def valuation_at(self, root: Rational) -> int:
        """Multiplicity of `root`; zero when it is not a root."""
        if self.is_zero:
            raise ValueError("the zero polynomial has no finite valuations")
        root = _coerce(root)
        linear = Poly((-root, Fraction(1)))
        count = 0
        current = self
        while current.evaluate(root) == 0:
            current = current // linear
            count += 1
        return count

    def __str__(self) -> str:
        return format_poly(self)


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic greatest common divisor; gcd(0, 0) is 0."""
    while not b.is_zero:
        a, b = b, a % b
    return a if a.is_zero else a.monic()


def squarefree_parts(f: Poly) -> tuple[Fraction, list[tuple[Poly, int]]]:
    """Yun decomposition f = unit * prod(piece^mult) with squarefree,
    pairwise coprime monic pieces, returned in increasing multiplicity."""
    if f.is_zero:
        raise ValueError("cannot decompose the zero polynomial")
    unit = f.leading
    f = f.monic()
    if f.degree == 0:
        return unit, []
    g = poly_gcd(f, f.derivative())
    w = f // g
    out = []
    mult = 1
    while w.degree > 0:
        y = poly_gcd(w, g)
        piece = w // y
        if piece.degree > 0:
            out.append((piece, mult))
        w = y
        g = g // y
        mult += 1
    return unit, out


def uniform_valuations(f: Poly, modulus: Poly) -> list[tuple[Poly, int]]:
    """Split a squarefree modulus into monic pieces on whose roots f has
    constant valuation; returns (piece, valuation) pairs covering every
    root, sorted by (valuation, text)."""
    if f.is_zero:
        raise ValueError("valuations of the zero polynomial are undefined")

    def refine(current: Poly, h: Poly) -> list[tuple[Poly, int]]:
        if h.degree <= 0:
            return []
        g = poly_gcd(current, h)
        pieces = []
        stays = h // g
        if stays.degree > 0:
            pieces.append((stays, 0))
        if g.degree > 0:
            pieces.extend((p, v + 1) for p, v in refine(current // g, g))
        return pieces

    result = refine(f, modulus.monic())
    return sorted(result, key=lambda pv: (pv[1], format_poly(pv[0])))


def _divisors(n: int) -> list[int]:
    n = abs(n)
    small, large = [], []
    for d in range(1, math.isqrt(n) + 1):
        if n % d == 0:
            small.append(d)
            large.append(n // d)
    return small + large[::-1]


def primitive_integer(f: Poly) -> Poly:
    """The integer polynomial with coprime coefficients and positive
    leading coefficient proportional to f."""
    if f.is_zero:
        raise ValueError("the zero polynomial has no primitive form")
    scale = math.lcm(*(c.denominator for c in f.coeffs))
    ints = [int(c * scale) for c in f.coeffs]
    content = math.gcd(*ints)
    if ints[-1] < 0:
        content = -content
    return Poly.of([c // content for c in ints])


def extract_rational_roots(f: Poly) -> tuple[list[Fraction], Poly]:
    """Rational roots of a squarefree polynomial and the rootless cofactor."""
    if f.is_zero:
        raise ValueError("every rational is a root of the zero polynomial")
    roots: list[Fraction] = []
    current = f
    while current.degree > 0 and current.coeffs[0] == 0:
        roots.append(Fraction(0))
        current = current // Poly.monomial(1)
    prim = primitive_integer(current) if current.degree > 0 else current
    if prim.degree > 0:
        candidates = [
            Fraction(sign * p, q)
            for p in _divisors(int(prim.coeffs[0]))
            for q in _divisors(int(prim.leading))
            for sign in (1, -1)
        ]
        for r in candidates:
            if current.degree == 0:
                break
            if current.evaluate(r) == 0:
                roots.append(r)
                current = current // Poly((-r, Fraction(1)))
    return sorted(set(roots)), current


def format_poly(f: Poly, var: str = "t") -> str:
    """Human formatting, descending powers: "t^7 - 2", "27*t^7 + 4"."""
    if f.is_zero:
        return "0"
    terms = []
    for k in range(f.degree, -1, -1):
        c = f.coeffs[k]
        if c == 0:
            continue
        if k == 0:
            body = str(abs(c))
        else:
            power = var if k == 1 else f"{var}^{k}"
            body = power if abs(c) == 1 else f"{abs(c)}*{power}"
        terms.append(("-" if c < 0 else "+", body))
    sign, head = terms[0]
    text = head if sign == "+" else f"-{head}"
    for sign, body in terms[1:]:
        text += f" {sign} {body}"
    return text
