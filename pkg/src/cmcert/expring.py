"""Exponential-polynomial quotient ring sum_i p_i(u) e^(iu) / (e^u - 1)^m.

The smallest differentiation-closed ring containing u/(1 - e^-u): elements
are finite maps frequency -> polynomial numerator over a pole power of
(e^u - 1).  Supplies the derivative tower of the Laplace kernel and the
exact algebra behind the degree-28 positivity reduction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional

from .enclosure import Enclosure, to_fraction
from .poly import Polynomial, certify_positive_on_interval, lemma1_exp_bounds
from . import specfun


@dataclass(frozen=True)
class ExpPoly:
    """Finite sum of p_i(u) * e^(i u) with exact polynomial coefficients."""

    terms: tuple[tuple[int, Polynomial], ...]  # sorted by frequency

    @staticmethod
    def of(mapping: dict[int, Polynomial]) -> "ExpPoly":
        items = []
        for freq in sorted(mapping):
            p = mapping[freq]
            if freq < 0:
                raise ValueError("negative frequencies are not in the ring")
            if not p.is_zero():
                items.append((freq, p))
        return ExpPoly(tuple(items))

    @staticmethod
    def zero() -> "ExpPoly":
        return ExpPoly(())

    def as_dict(self) -> dict[int, Polynomial]:
        return dict(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def coeff(self, freq: int) -> Polynomial:
        for f, p in self.terms:
            if f == freq:
                return p
        return Polynomial.zero()

    def max_freq(self) -> int:
        return self.terms[-1][0] if self.terms else 0

    def __add__(self, other: "ExpPoly") -> "ExpPoly":
        d = self.as_dict()
        for f, p in other.terms:
            d[f] = d.get(f, Polynomial.zero()) + p
        return ExpPoly.of(d)

    def __sub__(self, other: "ExpPoly") -> "ExpPoly":
        return self + other.scale(-1)

    def __mul__(self, other: "ExpPoly") -> "ExpPoly":
        d: dict[int, Polynomial] = {}
        for f1, p1 in self.terms:
            for f2, p2 in other.terms:
                f = f1 + f2
                d[f] = d.get(f, Polynomial.zero()) + p1 * p2
        return ExpPoly.of(d)

    def scale(self, c) -> "ExpPoly":
        return ExpPoly.of({f: p.scale(c) for f, p in self.terms})

    def mul_poly(self, q: Polynomial) -> "ExpPoly":
        return ExpPoly.of({f: p * q for f, p in self.terms})

    def derivative(self) -> "ExpPoly":
        return ExpPoly.of({f: p.derivative() + p.scale(f) for f, p in self.terms})

    def value_at_origin(self) -> Fraction:
        """Exact value at u = 0 (each e^(iu) factor equals 1)."""
        return sum((p(0) for _, p in self.terms), Fraction(0))

    def eval_exact_u(self, u: Fraction) -> Polynomial:
        """Freeze the polynomial part at rational u: polynomial in E = e^u."""
        coeffs = [Fraction(0)] * (self.max_freq() + 1) if self.terms else []
        for f, p in self.terms:
            coeffs[f] = p(u)
        return Polynomial.of(coeffs)

    def taylor_coefficient(self, j: int) -> Fraction:
        """Exact j-th Taylor coefficient at u = 0."""
        acc = Fraction(0)
        for f, p in self.terms:
            for d in range(min(j, p.degree) + 1):
                c = p[d]
                if c:
                    acc += c * Fraction(f ** (j - d), math.factorial(j - d))
        return acc

    def pretty(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for f, p in reversed(self.terms):
            body = repr(p)[len("Polynomial("):-1]
            if f == 0:
                parts.append(f"({body})")
            elif f == 1:
                parts.append(f"({body})*e^u")
            else:
                parts.append(f"({body})*e^({f}u)")
        return " + ".join(parts)


def _divide_by_exp_minus_one(num: ExpPoly) -> Optional[ExpPoly]:
    """Exact division by (e^u - 1) in the e^u indeterminate, or None."""
    if num.is_zero():
        return num
    top = num.max_freq()
    coeffs = [num.coeff(f) for f in range(top + 1)]
    # synthetic division by (E - 1): quotient q_i, remainder = sum coeffs at E=1
    quot = [Polynomial.zero()] * top
    carry = Polynomial.zero()
    for i in range(top, 0, -1):
        carry = carry + coeffs[i]
        quot[i - 1] = carry
    remainder = carry + coeffs[0]
    if not remainder.is_zero():
        return None
    return ExpPoly.of({i: q for i, q in enumerate(quot)})


@dataclass(frozen=True)
class ExpPolyQuotient:
    """numerator / (e^u - 1)^pole in canonical (fully reduced) form."""

    numerator: ExpPoly
    pole: int

    @staticmethod
    def make(numerator: ExpPoly, pole: int) -> "ExpPolyQuotient":
        if pole < 0:
            raise ValueError("pole order must be >= 0")
        while pole > 0:
            reduced = _divide_by_exp_minus_one(numerator)
            if reduced is None:
                break
            numerator = reduced
            pole -= 1
        return ExpPolyQuotient(numerator, pole)

    def is_zero(self) -> bool:
        return self.numerator.is_zero()

    def __add__(self, other: "ExpPolyQuotient") -> "ExpPolyQuotient":
        m = max(self.pole, other.pole)
        emo = ExpPoly.of({1: Polynomial.constant(1), 0: Polynomial.constant(-1)})
        a = self.numerator
        for _ in range(m - self.pole):
            a = a * emo
        b = other.numerator
        for _ in range(m - other.pole):
            b = b * emo
        return ExpPolyQuotient.make(a + b, m)

    def __sub__(self, other: "ExpPolyQuotient") -> "ExpPolyQuotient":
        return self + ExpPolyQuotient(other.numerator.scale(-1), other.pole)

    def pretty(self) -> str:
        if self.pole == 0:
            return self.numerator.pretty()
        return f"[{self.numerator.pretty()}] / (e^u - 1)^{self.pole}"


def differentiate(f: ExpPolyQuotient) -> ExpPolyQuotient:
    """Exact derivative; d/du (e^u-1)^-m = -m e^u (e^u-1)^-(m+1)."""
    if f.pole == 0:
        return ExpPolyQuotient.make(f.numerator.derivative(), 0)
    emo = ExpPoly.of({1: Polynomial.constant(1), 0: Polynomial.constant(-1)})
    e1 = ExpPoly.of({1: Polynomial.constant(1)})
    num = f.numerator.derivative() * emo - (e1 * f.numerator).scale(f.pole)
    return ExpPolyQuotient.make(num, f.pole + 1)


@lru_cache(maxsize=None)
def kernel_derivative(k: int) -> ExpPolyQuotient:
    """k-th derivative of u/(1 - e^-u) = u e^u/(e^u - 1), canonical form."""
    if k < 0:
        raise ValueError("k must be >= 0")
    if k == 0:
        num = ExpPoly.of({1: Polynomial.of([0, 1])})
        return ExpPolyQuotient.make(num, 1)
    return differentiate(kernel_derivative(k - 1))


# -- evaluation -------------------------------------------------------------

SERIES_SWITCH = Fraction(1, 4)


def _exp_series_tail(y: Fraction, order: int) -> Fraction:
    """Upper bound for the Taylor tail of e^y past `order`, y >= 0 small-ish."""
    t = y ** (order + 1) / Fraction(math.factorial(order + 1))
    ratio = y / (order + 2)
    if ratio >= Fraction(1, 2):
        raise ValueError("series order too small for this argument")
    return t / (1 - ratio)


def _numerator_series_enclosure(num: ExpPoly, u: Fraction, order: int) -> Enclosure:
    partial = Fraction(0)
    upow = [u ** j for j in range(order + 1)]
    for j in range(order + 1):
        partial += num.taylor_coefficient(j) * upow[j]
    bound = Fraction(0)
    for f, p in num.terms:
        for d in range(p.degree + 1):
            c = p[d]
            if c:
                bound += abs(c) * u ** d * _exp_series_tail(f * u, order - d)
    return Enclosure(partial - bound, partial + bound)


def _expm1_series_enclosure(u: Fraction, order: int) -> Enclosure:
    partial = sum(u ** k / Fraction(math.factorial(k)) for k in range(1, order + 1))
    bound = _exp_series_tail(u, order)
    return Enclosure(partial, partial + bound)


def eval_enclosure(f: ExpPolyQuotient, u, digits: int) -> Enclosure:
    """Enclosure of f(u) for rational u > 0.

    Direct exp-enclosure composition away from the origin; near u = 0 a
    single Taylor expansion of the whole numerator captures its cancellation
    (in canonical form the numerator vanishes to the pole order there).
    """
    u = to_fraction(u)
    if u <= 0:
        raise ValueError("evaluation requires u > 0")
    guard = 8
    cap = 6
    for _ in range(cap):
        if u >= SERIES_SWITCH:
            e = specfun.exp_enclosure(u, digits + guard)
            num = f.numerator.eval_exact_u(u).eval_interval(e)
            if f.pole == 0:
                val = num
            else:
                val = num / (e - 1) ** f.pole
        else:
            order = 4 * (digits + guard) // 3 + f.numerator.max_freq() + 8
            num = _numerator_series_enclosure(f.numerator, u, order)
            if f.pole == 0:
                val = num
            else:
                val = num / _expm1_series_enclosure(u, order) ** f.pole
        val = val.round_out(digits + 1)
        if val.width <= Fraction(1, 10 ** digits):
            return val
        guard = guard * 2 + digits
    return val


def series_at_zero(f: ExpPolyQuotient, n_terms: int) -> list[Fraction]:
    """First n_terms exact Taylor coefficients of f at 0.

    Raises if the numerator does not vanish to the pole order at the origin
    (a genuine pole), identifying the pole order in the message.
    """
    m = f.pole
    order = n_terms + m + 1
    a = [f.numerator.taylor_coefficient(j) for j in range(order + 1)]
    if m == 0:
        return a[:n_terms]
    # denominator (e^u - 1)^m = u^m * D(u), D(0) = 1
    base = [Fraction(1, math.factorial(k + 1)) for k in range(order + 1)]
    d = [Fraction(1)] + [Fraction(0)] * order
    for _ in range(m):
        nd = [Fraction(0)] * (order + 1)
        for i, x in enumerate(d):
            if x:
                for j, y in enumerate(base):
                    if i + j <= order:
                        nd[i + j] += x * y
        d = nd
    for j in range(m):
        if a[j] != 0:
            raise ValueError(f"genuine pole of order {m - j} at u = 0")
    shifted = a[m:]
    out = []
    for j in range(n_terms):
        c = shifted[j] - sum(d[i] * out[j - i] for i in range(1, j + 1))
        out.append(c / d[0])
    return out


# -- the derivative chain behind the degree-28 reduction --------------------


def _poly(c0=0, c1=0) -> Polynomial:
    return Polynomial.of([c0, c1])


def build_f1() -> ExpPoly:
    """(u+6)(e^u-1)^5 - 720 e^u [(u-4)e^{3u} + (11u-12)e^{2u} + (11u+12)e^u + u+4]."""
    emo = ExpPoly.of({1: Polynomial.constant(1), 0: Polynomial.constant(-1)})
    first = (emo * emo * emo * emo * emo).mul_poly(_poly(6, 1))
    bracket = ExpPoly.of({
        3: _poly(-4, 1),
        2: _poly(-12, 11),
        1: _poly(12, 11),
        0: _poly(4, 1),
    })
    second = (ExpPoly.of({1: Polynomial.constant(1)}) * bracket).scale(720)
    return first - second


def _extract_exp_factor(g: ExpPoly, scalar: int) -> ExpPoly:
    """Divide by scalar * e^u; requires an empty zero-frequency slot."""
    d = g.as_dict()
    if 0 in d:
        raise ValueError("not divisible by e^u")
    return ExpPoly.of({f - 1: p.scale(Fraction(1, scalar)) for f, p in d.items()})


def build_F_chain():
    """Build the three-stage derivative chain and verify its seven exact zeros.

    Returns (F1, F2, F3, report) where F2 = F1''/(5 e^u) and F3 = F2''/(8 e^u);
    the report lists the origin values that must all vanish.
    """
    f1 = build_f1()
    f1d = f1.derivative()
    f1dd = f1d.derivative()
    f2 = _extract_exp_factor(f1dd, 5)
    f2d = f2.derivative()
    f2dd = f2d.derivative()
    f3 = _extract_exp_factor(f2dd, 8)
    zeros = {
        "F3(0)": f3.value_at_origin(),
        "F2''(0)": f2dd.value_at_origin(),
        "F2'(0)": f2d.value_at_origin(),
        "F2(0)": f2.value_at_origin(),
        "F1''(0)": f1dd.value_at_origin(),
        "F1'(0)": f1d.value_at_origin(),
        "F1(0)": f1.value_at_origin(),
    }
    bad = {k: v for k, v in zeros.items() if v != 0}
    if bad:
        raise ArithmeticError(f"chain zero-value check failed: {bad}")
    report = {"zeros": {k: str(v) for k, v in zeros.items()}, "verified": True}
    return f1, f2, f3, report


# Reference transcription of the degree-28 reduction polynomial (ascending
# powers), used as a guard against algebra slips in build_f4_via_pade.
F4_REFERENCE_COEFFS = (
    4038947756777593110528000000,
    8481790289232945532108800000,
    -10582859071799067200716800000,
    -350858087962497987379200000,
    5063190015183760203448320000,
    -3082810530742053482004480000,
    852510196971380523663360000,
    -48948451585366441328640000,
    -59514097618800165519360000,
    30521365267364424843264000,
    -9156137875572402634752000,
    2061377592729654140928000,
    -376773142967398969344000,
    58018545121380802560000,
    -7678232793596974694400,
    882241752079928217600,
    -88289462254568601600,
    7670777548637952000,
    -572728070517926400,
    36018288433370880,
    -1835940264439680,
    69509082484800,
    -1412513172000,
    -34479103680,
    4603805304,
    -218010408,
    6068010,
    -94751,
    621,
)


def build_f4_via_pade():
    """Reproduce the degree-28 numerator by exact substitution of the
    rational exp sandwich (orders m=2, n=3) into the stage-three function.

    Returns (f4, denom, report); denom is the cleared denominator
    (quintic factor squared times sextic factor cubed), positive on (0, 6).
    """
    (lnum, lden), (unum, uden), _ = lemma1_exp_bounds(2, 3)
    u = Polynomial.x()
    l3u2 = lnum ** 3 * uden ** 2
    numerator = (
        l3u2.scale(69)
        + (lnum ** 2 * lden * uden ** 2).scale(7215)
        - (unum * lden ** 3 * uden).scale(4035)
        - (lden ** 3 * uden ** 2).scale(3249)
        + u * (
            l3u2.scale(10)
            - (unum ** 2 * lden ** 3).scale(2610)
            - (unum * lden ** 3 * uden).scale(7119)
            - (lden ** 3 * uden ** 2).scale(793)
        )
    )
    if numerator[0] != 0:
        raise ArithmeticError("reduction numerator must vanish at 0")
    f4 = Polynomial.of([c / 6 for c in numerator.coeffs[1:]])
    for i, ref in enumerate(F4_REFERENCE_COEFFS):
        if f4[i] != ref:
            raise ArithmeticError(
                f"coefficient of u^{i} differs from the reference: "
                f"{f4[i]} != {ref}")
    quintic = Polynomial.of([-c if k % 2 == 0 else c
                             for k, c in enumerate(uden.coeffs)])
    denom = quintic ** 2 * lden ** 3
    # denom > 0 on (0,6): the sextic factor is positive there and the
    # (negative) quintic factor enters squared
    sextic_cert = certify_positive_on_interval(lden, 0, 6, 1)
    negquintic_cert = certify_positive_on_interval(uden, 0, 6, 1)
    report = {
        "degree": f4.degree,
        "leading": str(f4[f4.degree]),
        "constant": str(f4[0]),
        "matches_reference": True,
        "sextic_factor_positive_on_0_6": sextic_cert.verdict,
        "negated_quintic_positive_on_0_6": negquintic_cert.verdict,
    }
    return f4, denom, report


def remark_decomposition_check(u_grid, digits: int = 30) -> dict:
    """Exact three-way split of the stage-three function and slope signs.

    f1 = [10u(e^u - 261) + 3966] e^{2u}   (increasing on [5, inf))
    f2 = (69 e^{2u} - 7119u - 4035) e^u   (increasing on [3, inf))
    f3 = 3249 e^{2u} - 793u - 3249        (increasing on [0, inf))
    """
    _, _, f3_chain, _ = build_F_chain()
    part1 = ExpPoly.of({3: _poly(0, 10), 2: _poly(3966, -2610)})
    part2 = ExpPoly.of({3: Polynomial.constant(69), 1: _poly(-4035, -7119)})
    part3 = ExpPoly.of({2: Polynomial.constant(3249), 0: _poly(-3249, -793)})
    residual = (part1 + part2 + part3) - f3_chain
    identity_exact = residual.is_zero()

    ranges = {"f1": (part1, Fraction(5)), "f2": (part2, Fraction(3)),
              "f3": (part3, Fraction(0))}
    slopes = {}
    for name, (piece, start) in ranges.items():
        deriv = ExpPolyQuotient.make(piece.derivative(), 0)
        checks = []
        for u in u_grid:
            u = to_fraction(u)
            if u < start:
                continue
            if u <= 0:
                continue
            enc = eval_enclosure(deriv, u, digits)
            checks.append({"u": str(u), "nonnegative": enc.lo >= 0})
        slopes[name] = checks
    ok = identity_exact and all(c["nonnegative"]
                                for cs in slopes.values() for c in cs)
    return {"identity_exact": identity_exact, "slopes": slopes, "verified": ok,
            "f3_at_zero": str(part3.value_at_origin())}
