"""Rigorous enclosures for the special functions used by the certificates.

Everything returns an Enclosure whose endpoints are exact rationals; the
`digits` parameter asks for width <= 10**-digits.  Operations iterate with
escalating term counts until the width target or the term cap is reached,
in which case the achieved (wider) enclosure is returned.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Optional

from .enclosure import Enclosure, pi_enclosure, to_fraction
from .poly import Polynomial

TERM_CAP = 10 ** 6

_bernoulli_cache: dict[int, Fraction] = {0: Fraction(1)}


def bernoulli(n: int) -> Fraction:
    """Exact Bernoulli number B_n (B_1 = -1/2) via the defining recurrence."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n in _bernoulli_cache:
        return _bernoulli_cache[n]
    if n >= 3 and n % 2 == 1:
        _bernoulli_cache[n] = Fraction(0)
        return _bernoulli_cache[n]
    for m in range(1, n + 1):
        if m not in _bernoulli_cache:
            acc = Fraction(0)
            for k in range(m):
                acc += math.comb(m + 1, k) * bernoulli(k)
            _bernoulli_cache[m] = -acc / (m + 1)
    return _bernoulli_cache[n]


def exp_enclosure(x, digits: int) -> Enclosure:
    """Enclosure of e**x for rational x, Taylor series with ratio tail bound."""
    x = to_fraction(x)
    if x == 0:
        return Enclosure.point(1)
    if x < 0:
        return exp_enclosure(-x, digits + 2).inverse().round_out(digits + 1)
    tol = Fraction(1, 10 ** (digits + 1))
    term = Fraction(1)
    total = Fraction(1)
    n = 0
    while True:
        n += 1
        term *= Fraction(x, n)
        total += term
        ratio = Fraction(x, n + 1)
        if ratio < Fraction(1, 2):
            tail = term * ratio / (1 - ratio)
            if tail < tol:
                break
        if n > TERM_CAP:
            tail = term  # unreachable for sane x; defensive
            break
    return Enclosure(total, total + tail).round_out(digits + 1)


def bessel_ratio(k: int, u, digits: int) -> Enclosure:
    """Enclosure of sum_n u**n / (n! (n+k)!), i.e. I_k(2 sqrt u)/u**(k/2)."""
    if k < 0:
        raise ValueError("order must be >= 0")
    u = to_fraction(u)
    if u < 0:
        raise ValueError("argument must be >= 0")
    if u == 0:
        return Enclosure.point(Fraction(1, math.factorial(k)))
    tol = Fraction(1, 10 ** (digits + 1))
    term = Fraction(1, math.factorial(k))
    total = term
    n = 0
    while True:
        n += 1
        term *= Fraction(u, n * (n + k))
        total += term
        ratio = Fraction(u, (n + 1) * (n + k + 1))
        if ratio < Fraction(1, 2):
            tail = term * ratio / (1 - ratio)
            if tail < tol:
                break
        if n > TERM_CAP:
            tail = term
            break
    return Enclosure(total, total + tail).round_out(digits + 1)


def hyp1f2(b1, b2, x, digits: int) -> Enclosure:
    """Enclosure of 1F2(1; b1, b2; x) for x >= 0."""
    b1, b2, x = to_fraction(b1), to_fraction(b2), to_fraction(x)
    for b in (b1, b2):
        if b.denominator == 1 and b <= 0:
            raise ValueError(f"forbidden lower parameter {b}")
    if x < 0:
        raise ValueError("argument must be >= 0")
    if x == 0:
        return Enclosure.point(1)
    tol = Fraction(1, 10 ** (digits + 1))
    term = Fraction(1)
    total = Fraction(1)
    n = 0
    while True:
        term *= x / ((b1 + n) * (b2 + n))
        n += 1
        total += term
        nxt = abs(x / ((b1 + n) * (b2 + n)))
        if nxt < Fraction(1, 2):
            tail = abs(term) * nxt / (1 - nxt)
            if tail < tol:
                break
        if n > TERM_CAP:
            tail = abs(term)
            break
    positive_tail = b1 + n > 0 and b2 + n > 0 and x > 0
    if positive_tail:
        return Enclosure(total, total + tail).round_out(digits + 1)
    return Enclosure(total - tail, total + tail).round_out(digits + 1)


def _polygamma_asymptotic(n: int, z: Fraction, tol: Fraction) -> Optional[Enclosure]:
    """Divergent large-z expansion with first-omitted-term error bound.

    Returns None when the enveloping terms stop decreasing before reaching
    the tolerance (z too small for this accuracy).
    """
    total = Fraction(math.factorial(n - 1)) / z ** n \
        + Fraction(math.factorial(n)) / (2 * z ** (n + 1))
    prev = None
    k = 0
    while True:
        k += 1
        t = bernoulli(2 * k) * Fraction(math.factorial(2 * k + n - 1),
                                        math.factorial(2 * k)) / z ** (2 * k + n)
        if abs(t) <= tol:
            body = Enclosure(total - abs(t), total + abs(t))
            break
        if prev is not None and abs(t) >= prev:
            return None
        total += t
        prev = abs(t)
    if n % 2 == 1:
        return body
    return -body


def polygamma(n: int, x, digits: int) -> Enclosure:
    """Enclosure of psi^(n)(x) for n >= 1, x > 0.

    Lifts the argument by the exact recurrence until the alternating
    asymptotic expansion converges below tolerance, then shifts back.
    """
    if n < 1:
        raise ValueError("derivative order must be >= 1")
    x = to_fraction(x)
    if x <= 0:
        raise ValueError("argument must be > 0")
    tol = Fraction(1, 10 ** (digits + 1))
    target = max(20, digits)
    while True:
        m = max(0, math.ceil(target - x))
        z = x + m
        body = _polygamma_asymptotic(n, z, tol)
        if body is not None:
            break
        target *= 2
        if target > 64 * (digits + 20):
            raise RuntimeError("asymptotic expansion failed to converge")
    correction = Fraction(0)
    for j in range(m):
        correction += 1 / (x + j) ** (n + 1)
    shift = Enclosure.point((-1) ** n * math.factorial(n) * correction)
    return (body - shift).round_out(digits + 1)


def polygamma_series(n: int, x, terms: int) -> Enclosure:
    """Independent low-precision route: Hurwitz partial sum + integral tail."""
    if n < 1:
        raise ValueError("derivative order must be >= 1")
    x = to_fraction(x)
    if x <= 0:
        raise ValueError("argument must be > 0")
    s = Fraction(0)
    for j in range(terms):
        s += 1 / (x + j) ** (n + 1)
    tail_lo = 1 / (n * (x + terms) ** n)
    tail_hi = tail_lo + 1 / (x + terms) ** (n + 1)
    mag = Enclosure(s + tail_lo, s + tail_hi) * math.factorial(n)
    return mag if n % 2 == 1 else -mag


def k_tail(ell: int, a, digits: int) -> Enclosure:
    """Enclosure of sum_{k>=1} k**ell * e**(-k a) for a > 0.

    Closed form: ell-fold application of q d/dq to q/(1-q), evaluated at an
    enclosure of q = e**(-a).
    """
    if ell < 0:
        raise ValueError("ell must be >= 0")
    a = to_fraction(a)
    if a <= 0:
        raise ValueError("a must be > 0")
    num = Polynomial.of([0, 1])  # q
    pole = 1
    one_minus_q = Polynomial.of([1, -1])
    q_poly = Polynomial.of([0, 1])
    for _ in range(ell):
        num = q_poly * (num.derivative() * one_minus_q + num.scale(pole))
        pole += 1
    q = exp_enclosure(-a, digits + 6)
    omq = 1 - q
    val = num.eval_interval(q) / omq ** pole
    return val.round_out(digits + 1)


def vn_remainder(n: int, u, digits: int) -> Enclosure:
    """Enclosure of sum_{k>=1} 2 / ((u^2 + 4 pi^2 k^2) (2 pi k)^(2n)).

    Positive-term series; the tail is bounded through the integral comparison
    with a certified lower bound of pi.  Term count is capped, so very high
    precision requests may return a wider-than-requested enclosure.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    u = to_fraction(u)
    if u <= 0:
        raise ValueError("u must be > 0")
    tol = Fraction(1, 10 ** (digits + 1))
    pi = pi_enclosure()
    two_pi_lo = 2 * pi.lo
    p = 2 * n + 2

    def tail_bound(N: int) -> Fraction:
        # sum_{k>N} k^-p <= integral comparison
        return 2 / (two_pi_lo ** p) * Fraction(1, (p - 1) * N ** (p - 1))

    N = 8
    while tail_bound(N) >= tol and N < TERM_CAP:
        N *= 4
    N = min(N, TERM_CAP)
    pi2 = (pi * pi).round_out(digits + 8)
    total = Enclosure.point(0)
    for k in range(1, N + 1):
        den = (Enclosure.point(u * u) + 4 * k * k * pi2) * \
            ((4 * k * k) * pi2) ** n
        total = (total + 2 / den).round_out(digits + 8)
    return Enclosure(total.lo, total.hi + tail_bound(N)).round_out(digits + 1)


def exp_taylor_partial(n: int, x) -> Fraction:
    """Exact truncated exponential sum_{k<=n} x^k / k!."""
    x = to_fraction(x)
    return sum(x ** k / Fraction(math.factorial(k)) for k in range(n + 1))


def exp_taylor_bound(n: int, b, x, digits: int = 30) -> tuple[Enclosure, Enclosure]:
    """Gap enclosures for the two-sided truncated-exponential sandwich.

    With S_n the Taylor partial sum and alpha = (e^b - S_n(b))/b^(n+1):
    returns (upper_gap, lower_gap) where
      upper_gap = S_n(x) + alpha x^(n+1) - e^x            (>= 0 on [0, b])
      lower_gap = e^x - S_n(x) - alpha x^(n+1)
                  - ((n+1)! alpha - e^b)/((n+1)!(n+1)b) (b-x) x^(n+1)  (>= 0)
    Both vanish exactly at x = 0 and x = b (returned as point zeros there).
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    b, x = to_fraction(b), to_fraction(x)
    if b <= 0 or not (0 <= x <= b):
        raise ValueError("need 0 <= x <= b, b > 0")
    if x == 0 or x == b:
        return Enclosure.point(0), Enclosure.point(0)
    eb = exp_enclosure(b, digits + 8)
    ex = exp_enclosure(x, digits + 8)
    sb = exp_taylor_partial(n, b)
    sx = exp_taylor_partial(n, x)
    alpha = (eb - sb) / b ** (n + 1)
    upper_gap = sx + alpha * x ** (n + 1) - ex
    fac = Fraction(math.factorial(n + 1))
    slope = (fac * alpha - eb) / (fac * (n + 1) * b)
    lower_gap = ex - sx - alpha * x ** (n + 1) - slope * ((b - x) * x ** (n + 1))
    return upper_gap.round_out(digits + 1), lower_gap.round_out(digits + 1)
