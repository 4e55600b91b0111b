"""Interval arithmetic with exact rational endpoints.

An Enclosure is a closed interval [lo, hi] with Fraction endpoints that is
guaranteed to contain the true real value it stands for.  All arithmetic is
exact; `round_out` trims endpoint denominators outward so that long chains of
operations do not accumulate unbounded rationals.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

Rat = Union[Fraction, int]


def to_fraction(x) -> Fraction:
    """Coerce ints, Fractions and 'p/q' / decimal strings to Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


def format_rational(x: Fraction) -> str:
    """Render as 'p/q' (or plain integer when q == 1)."""
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def integer_nth_root(a: int, n: int) -> int:
    """Floor of the n-th root of a nonnegative integer, exactly."""
    if a < 0 or n < 1:
        raise ValueError("integer_nth_root requires a >= 0, n >= 1")
    if a == 0:
        return 0
    if n == 1:
        return a
    x = 1 << ((a.bit_length() + n - 1) // n + 1)
    while True:
        y = ((n - 1) * x + a // x ** (n - 1)) // n
        if y >= x:
            break
        x = y
    while x ** n > a:
        x -= 1
    return x


@dataclass(frozen=True)
class Enclosure:
    """Closed interval [lo, hi] certified to contain a real value."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        if not isinstance(self.lo, Fraction):
            object.__setattr__(self, "lo", Fraction(self.lo))
        if not isinstance(self.hi, Fraction):
            object.__setattr__(self, "hi", Fraction(self.hi))
        if self.lo > self.hi:
            raise ValueError(f"inverted interval [{self.lo}, {self.hi}]")

    # -- constructors ------------------------------------------------------

    @staticmethod
    def point(x: Rat) -> "Enclosure":
        x = Fraction(x)
        return Enclosure(x, x)

    @staticmethod
    def of(x) -> "Enclosure":
        return x if isinstance(x, Enclosure) else Enclosure.point(x)

    # -- structure ---------------------------------------------------------

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def contains(self, x: Rat) -> bool:
        x = Fraction(x)
        return self.lo <= x <= self.hi

    def contains_interval(self, other: "Enclosure") -> bool:
        return self.lo <= other.lo and other.hi <= self.hi

    def hull(self, other: "Enclosure") -> "Enclosure":
        return Enclosure(min(self.lo, other.lo), max(self.hi, other.hi))

    def sign(self) -> int:
        """+1 / -1 when sign-definite, 0 when the interval meets 0."""
        if self.lo > 0:
            return 1
        if self.hi < 0:
            return -1
        return 0

    def definitely_positive(self) -> bool:
        return self.lo > 0

    def definitely_negative(self) -> bool:
        return self.hi < 0

    def definitely_less(self, other: "Enclosure") -> bool:
        return self.hi < other.lo

    def definitely_greater(self, other: "Enclosure") -> bool:
        return self.lo > other.hi

    # -- arithmetic --------------------------------------------------------

    def __neg__(self) -> "Enclosure":
        return Enclosure(-self.hi, -self.lo)

    def __add__(self, other) -> "Enclosure":
        o = Enclosure.of(other)
        return Enclosure(self.lo + o.lo, self.hi + o.hi)

    __radd__ = __add__

    def __sub__(self, other) -> "Enclosure":
        o = Enclosure.of(other)
        return Enclosure(self.lo - o.hi, self.hi - o.lo)

    def __rsub__(self, other) -> "Enclosure":
        return Enclosure.of(other) - self

    def __mul__(self, other) -> "Enclosure":
        o = Enclosure.of(other)
        prods = (self.lo * o.lo, self.lo * o.hi, self.hi * o.lo, self.hi * o.hi)
        return Enclosure(min(prods), max(prods))

    __rmul__ = __mul__

    def inverse(self) -> "Enclosure":
        if self.lo <= 0 <= self.hi:
            raise ZeroDivisionError(f"interval [{self.lo}, {self.hi}] contains 0")
        return Enclosure(1 / self.hi, 1 / self.lo)

    def __truediv__(self, other) -> "Enclosure":
        return self * Enclosure.of(other).inverse()

    def __rtruediv__(self, other) -> "Enclosure":
        return Enclosure.of(other) * self.inverse()

    def __pow__(self, n: int) -> "Enclosure":
        if not isinstance(n, int) or n < 0:
            raise ValueError("only nonnegative integer powers")
        if n == 0:
            return Enclosure.point(1)
        if n % 2 == 1 or self.lo >= 0:
            return Enclosure(self.lo ** n, self.hi ** n)
        if self.hi <= 0:
            return Enclosure(self.hi ** n, self.lo ** n)
        return Enclosure(Fraction(0), max(self.lo ** n, self.hi ** n))

    # -- rounding ----------------------------------------------------------

    def round_out(self, digits: int) -> "Enclosure":
        """Widen outward so endpoint denominators divide 10**digits."""
        scale = 10 ** digits
        import math
        lo = Fraction(math.floor(self.lo * scale), scale)
        hi = Fraction(math.ceil(self.hi * scale), scale)
        return Enclosure(lo, hi)

    # -- rendering ---------------------------------------------------------

    def __repr__(self) -> str:
        return f"[{format_rational(self.lo)}, {format_rational(self.hi)}]"

    def decimal_str(self, places: int = 20) -> str:
        def fmt(x: Fraction) -> str:
            scaled = x * 10 ** places
            n = scaled.numerator // scaled.denominator
            sign = "-" if n < 0 else ""
            n = abs(n)
            s = str(n).rjust(places + 1, "0")
            return f"{sign}{s[:-places]}.{s[-places:]}"

        return f"[{fmt(self.lo)}, {fmt(self.hi)}]"


# 100 certified decimal digits of pi, widened outward by one last-place unit.
_PI_DIGITS = (
    "31415926535897932384626433832795028841971693993751"
    "05820974944592307816406286208998628034825342117067"
)


def pi_enclosure() -> Enclosure:
    lo = Fraction(int(_PI_DIGITS), 10 ** 99)
    return Enclosure(lo, lo + Fraction(1, 10 ** 99))


def nth_root_enclosure(x: Rat, n: int, digits: int) -> Enclosure:
    """Enclosure of x**(1/n) for rational x >= 0, width <= 10**-digits."""
    x = Fraction(x)
    if x < 0:
        raise ValueError("nth_root_enclosure requires x >= 0")
    if x == 0:
        return Enclosure.point(0)
    scale = 10 ** digits
    m = (x.numerator * scale ** n * x.denominator ** (n - 1)) // x.denominator ** n
    # r = floor((x*scale^n)^(1/n)) up to the floor slack in m, and
    # (r+1)^n >= m+1 > x*scale^n, so [r, r+1]/scale brackets the root
    r = integer_nth_root(m, n)
    return Enclosure(Fraction(r, scale), Fraction(r + 1, scale))


def rational_power_enclosure(x: Rat, a: Rat, digits: int) -> Enclosure:
    """Enclosure of x**a for rational x > 0 and rational exponent a."""
    x = Fraction(x)
    a = Fraction(a)
    if x <= 0:
        raise ValueError("rational_power_enclosure requires x > 0")
    if a.denominator == 1:
        p = int(a)
        v = x ** p if p >= 0 else 1 / x ** (-p)
        return Enclosure.point(v)
    p, q = a.numerator, a.denominator
    base = x ** p if p >= 0 else 1 / x ** (-p)
    return nth_root_enclosure(base, q, digits)
