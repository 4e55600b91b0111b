"""Exact rational polynomial algebra and positivity certification.

Dense univariate polynomials over Fraction, plus the certification toolbox:
Taylor shifts, Descartes' sign rule, unit-interval coefficient bounds
(Cargo-Shisha), shift-and-bound positivity certificates, sign-change root
isolation, and the classical rational sandwich bounds for exp.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .enclosure import Enclosure, format_rational, to_fraction


@dataclass(frozen=True)
class Polynomial:
    """Dense polynomial; coeffs[i] is the coefficient of x**i.

    The highest stored coefficient is nonzero; the zero polynomial has an
    empty coefficient tuple.
    """

    coeffs: tuple[Fraction, ...]

    @staticmethod
    def of(coeffs: Iterable) -> "Polynomial":
        cs = [to_fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        return Polynomial(tuple(cs))

    @staticmethod
    def zero() -> "Polynomial":
        return Polynomial(())

    @staticmethod
    def constant(c) -> "Polynomial":
        return Polynomial.of([c])

    @staticmethod
    def monomial(power: int, c=1) -> "Polynomial":
        return Polynomial.of([0] * power + [c])

    @staticmethod
    def x() -> "Polynomial":
        return Polynomial.of([0, 1])

    # -- structure ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def __getitem__(self, i: int) -> Fraction:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else Fraction(0)

    # -- ring operations ---------------------------------------------------

    def __add__(self, other: "Polynomial") -> "Polynomial":
        n = max(len(self.coeffs), len(other.coeffs))
        return Polynomial.of([self[i] + other[i] for i in range(n)])

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        n = max(len(self.coeffs), len(other.coeffs))
        return Polynomial.of([self[i] - other[i] for i in range(n)])

    def __neg__(self) -> "Polynomial":
        return Polynomial(tuple(-c for c in self.coeffs))

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        if self.is_zero() or other.is_zero():
            return Polynomial.zero()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return Polynomial.of(out)

    def scale(self, c) -> "Polynomial":
        c = to_fraction(c)
        if c == 0:
            return Polynomial.zero()
        return Polynomial(tuple(a * c for a in self.coeffs))

    def __pow__(self, n: int) -> "Polynomial":
        result = Polynomial.constant(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def derivative(self) -> "Polynomial":
        return Polynomial.of([i * c for i, c in enumerate(self.coeffs)][1:])

    def __call__(self, x):
        return poly_eval(self, x)

    def eval_interval(self, x: Enclosure) -> Enclosure:
        acc = Enclosure.point(0)
        for c in reversed(self.coeffs):
            acc = acc * x + Enclosure.point(c)
        return acc

    def __repr__(self) -> str:
        if self.is_zero():
            return "Polynomial(0)"
        parts = []
        for i in range(self.degree, -1, -1):
            c = self[i]
            if c == 0:
                continue
            term = format_rational(c) if i == 0 else (
                f"{format_rational(c)}*x^{i}" if i > 1 else f"{format_rational(c)}*x")
            parts.append(term)
        return "Polynomial(" + " + ".join(parts) + ")"


def poly_eval(p: Polynomial, x) -> Fraction:
    """Exact value p(x) by Horner's rule."""
    x = to_fraction(x)
    acc = Fraction(0)
    for c in reversed(p.coeffs):
        acc = acc * x + c
    return acc


def taylor_shift(p: Polynomial, a) -> Polynomial:
    """Return q with q(u) = p(u + a), exactly (repeated synthetic division)."""
    a = to_fraction(a)
    if a == 0 or p.is_zero():
        return p
    work = list(p.coeffs)
    n = len(work)
    out = []
    for _ in range(n):
        # synthetic division of `work` by (x - (-a)) leaves p evaluated at
        # the shift in the running remainder; remainders are the new coeffs
        rem = Fraction(0)
        for c in reversed(work):
            rem = rem * a + c
        out.append(rem)
        # quotient coefficients
        quot = []
        carry = Fraction(0)
        for c in reversed(work):
            carry = carry * a + c
            quot.append(carry)
        quot.pop()  # drop the remainder
        work = list(reversed(quot))
        if not work:
            break
    return Polynomial.of(out)


def compose_affine(p: Polynomial, a, s) -> Polynomial:
    """Return q with q(v) = p(a + s*v), exactly."""
    shifted = taylor_shift(p, a)
    s = to_fraction(s)
    return Polynomial.of([c * s ** k for k, c in enumerate(shifted.coeffs)])


def descartes_sign_changes(p: Polynomial) -> int:
    """Sign changes in the nonzero coefficient sequence.

    Upper-bounds the number of positive real roots and has the same parity.
    """
    if p.is_zero():
        raise ValueError("Descartes' rule is undefined for the zero polynomial")
    signs = [1 if c > 0 else -1 for c in p.coeffs if c != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def cargo_shisha_bounds(p: Polynomial) -> list[Fraction]:
    """The n+1 weighted partial sums whose min/max sandwich p on [0, 1].

    b_k = sum_{l<=k} a_l * C(k,l)/C(n,l); min_k b_k <= p(x) <= max_k b_k
    for 0 <= x <= 1.
    """
    if p.is_zero():
        raise ValueError("bounds undefined for the zero polynomial")
    n = p.degree
    out = []
    for k in range(n + 1):
        b = Fraction(0)
        for l in range(k + 1):
            b += p[l] * Fraction(math.comb(k, l), math.comb(n, l))
        out.append(b)
    return out


@dataclass(frozen=True)
class PieceReport:
    shift: Fraction
    scale: Fraction
    min_bk: Fraction
    argmin: int
    max_bk: Fraction
    certified: bool
    depth: int = 0


@dataclass(frozen=True)
class PositivityCertificate:
    """Verdict for 'p > 0 on [lo, hi]' with per-piece bound data."""

    verdict: str  # "certified" | "falsified" | "inconclusive"
    interval: tuple[Fraction, Fraction]
    pieces: tuple[PieceReport, ...]
    witness: Optional[Fraction] = None
    witness_value: Optional[Fraction] = None

    def to_json(self) -> str:
        doc = {
            "verdict": self.verdict,
            "interval": [format_rational(self.interval[0]),
                         format_rational(self.interval[1])],
            "pieces": [
                {
                    "shift": format_rational(pc.shift),
                    "min_bk": format_rational(pc.min_bk),
                    "argmin": pc.argmin,
                    "max_bk": format_rational(pc.max_bk),
                }
                for pc in self.pieces
            ],
            "witness": None if self.witness is None else format_rational(self.witness),
        }
        return json.dumps(doc, indent=2)


def _unit_interval_piece(p: Polynomial, shift: Fraction, scale: Fraction,
                         depth: int) -> PieceReport:
    local = compose_affine(p, shift, scale)
    bs = cargo_shisha_bounds(local)
    mn = min(bs)
    return PieceReport(shift=shift, scale=scale, min_bk=mn, argmin=bs.index(mn),
                       max_bk=max(bs), certified=mn > 0, depth=depth)


def _search_witness(p: Polynomial, lo: Fraction, hi: Fraction,
                    depth: int) -> Optional[Fraction]:
    """Look for an exact point with p(x) <= 0, densifying dyadically."""
    seen = set()
    for level in range(1, depth + 1):
        step = (hi - lo) / 2 ** level
        for j in range(1, 2 ** level, 2):
            x = lo + j * step
            if x in seen:
                continue
            seen.add(x)
            if poly_eval(p, x) <= 0:
                return x
    for x in (lo, hi):
        if poly_eval(p, x) <= 0:
            return x
    return None


def certify_positive_on_interval(p: Polynomial, lo, hi, step,
                                 max_depth: int = 12) -> PositivityCertificate:
    """Certify p > 0 on [lo, hi] by step-wise Cargo-Shisha bounds.

    Each step-length piece is rescaled to [0, 1]; a piece certifies when its
    minimum coefficient bound is positive.  A failing piece is first searched
    for an exact nonpositive witness, then bisected (bounds tighten under
    subdivision) up to `max_depth` before the verdict degrades to
    inconclusive.
    """
    lo, hi, step = to_fraction(lo), to_fraction(hi), to_fraction(step)
    if not (lo < hi and step > 0):
        raise ValueError("need lo < hi and step > 0")

    pieces: list[PieceReport] = []
    witness = None

    def handle(a: Fraction, b: Fraction, depth: int) -> str:
        nonlocal witness
        rep = _unit_interval_piece(p, a, b - a, depth)
        if rep.certified:
            pieces.append(rep)
            return "certified"
        w = _search_witness(p, a, b, depth=6)
        if w is not None:
            witness = w
            pieces.append(rep)
            return "falsified"
        if depth >= max_depth:
            pieces.append(rep)
            return "inconclusive"
        m = (a + b) / 2
        left = handle(a, m, depth + 1)
        if left != "certified":
            return left
        return handle(m, b, depth + 1)

    a = lo
    status = "certified"
    while a < hi:
        b = min(a + step, hi)
        st = handle(a, b, 0)
        if st == "falsified":
            status = "falsified"
            break
        if st == "inconclusive":
            status = "inconclusive"
        a = b

    return PositivityCertificate(
        verdict=status,
        interval=(lo, hi),
        pieces=tuple(pieces),
        witness=witness,
        witness_value=None if witness is None else poly_eval(p, witness),
    )


def isolate_root(p: Polynomial, lo, hi, width) -> tuple[Fraction, Fraction]:
    """Bisect a sign change of p down to an interval of length <= width."""
    lo, hi, width = to_fraction(lo), to_fraction(hi), to_fraction(width)
    flo, fhi = poly_eval(p, lo), poly_eval(p, hi)
    if flo == 0 or fhi == 0 or (flo > 0) == (fhi > 0):
        raise ValueError("need opposite nonzero signs at the endpoints")
    while hi - lo > width:
        mid = (lo + hi) / 2
        fmid = poly_eval(p, mid)
        if fmid == 0:
            return (mid, mid)
        if (fmid > 0) == (flo > 0):
            lo, flo = mid, fmid
        else:
            hi, fhi = mid, fmid
    return (lo, hi)


# ---------------------------------------------------------------------------
# Rational sandwich bounds for exp (reversed-coefficient Pade-style ratios)
# ---------------------------------------------------------------------------


def _exp_bound_coeff(n: int, k: int) -> Fraction:
    return Fraction(math.comb(n, k) * math.factorial(2 * n - k),
                    math.factorial(n))


def exp_bound_polynomial(n: int) -> Polynomial:
    """Degree-n polynomial with coefficient of u**k equal to C(n,k)(2n-k)!/n!.

    In the variable u = 1/x this is x**n * Q_n(1/x) for the classical
    exp-bounding polynomials Q_n.
    """
    return Polynomial.of([_exp_bound_coeff(n, k) for k in range(n + 1)])


def lemma1_exp_bounds(m: int, n: int):
    """Rational lower/upper sandwich for e**u valid on 0 < u <= 2(m+1).

    Returns ((lower_num, lower_den), (upper_num, upper_den), threshold) with
    lower_num/lower_den < e**u < upper_num/upper_den on the validity range;
    threshold is the 1/(2(m+1)) cutoff in the reciprocal variable.
    """
    if m < 0 or n < 1:
        raise ValueError("need m >= 0 and n >= 1")
    even = exp_bound_polynomial(2 * n)
    odd = exp_bound_polynomial(2 * m + 1)
    alt_even = Polynomial.of([(-1) ** k * c for k, c in enumerate(even.coeffs)])
    alt_odd = Polynomial.of([(-1) ** k * c for k, c in enumerate(odd.coeffs)])
    return (even, alt_even), (odd, alt_odd), Fraction(1, 2 * (m + 1))
