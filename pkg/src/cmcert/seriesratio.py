"""Coefficient-ratio machinery for the Bessel-kernel ratio functions.

Exact coefficient sequences for the two power-series quotients whose
monotonicity drives the main theorems, the integer ladder inequalities that
prove those monotonicities, unimodal maximization by enclosure comparison,
and the conjecture scans for the higher-order ratio functions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

from .enclosure import Enclosure, to_fraction
from . import specfun
from .expring import eval_enclosure, kernel_derivative


# -- exact coefficient sequences -------------------------------------------


def p_coeff(k: int) -> Fraction:
    """Denominator-series coefficient (2^(k+2) - k - 3)/(k+2)!."""
    return Fraction(2 ** (k + 2) - k - 3, math.factorial(k + 2))


def q_coeff(k: int, beta) -> Fraction:
    """Numerator-series coefficient of the first ratio, exact in beta."""
    beta = to_fraction(beta)
    acc = Fraction(0)
    for l in range(k + 1):
        acc += math.comb(k + 2, l) * Fraction(2 ** (k - l + 2) - 2,
                                              math.factorial(l + 2)) * beta ** l
    return acc / math.factorial(k + 2)


def c_coeff(k: int, beta) -> Fraction:
    return q_coeff(k, beta) / p_coeff(k)


def lambda_coeff(k: int) -> Fraction:
    """(3^(k+4) - (k+6) 2^(k+4) + k^2 + 9k + 21)/(k+4)!."""
    return Fraction(U_value(k), math.factorial(k + 4))


def xi_coeff(k: int, beta) -> Fraction:
    """Numerator-series coefficient of the derivative ratio, exact in beta."""
    beta = to_fraction(beta)
    acc = Fraction(0)
    for l in range(k + 1):
        d = k - l
        inner = (3 ** (d + 4) - (d + 10) * 2 ** (d + 3) + 2 * d + 11) * beta \
            - (l + 3) * (d * 2 ** (d + 3) + 4)
        acc += math.comb(k + 4, l) * beta ** l / math.factorial(l + 3) * inner
    return acc / math.factorial(k + 4)


def C_coeff(k: int, beta) -> Fraction:
    return xi_coeff(k, beta) / lambda_coeff(k)


# -- integer ladder quantities ---------------------------------------------


def U_value(k: int) -> int:
    return 3 ** (k + 4) - (k + 6) * 2 ** (k + 4) + k * k + 9 * k + 21


def V_value(k: int, l: int) -> int:
    return (3 ** (k - l + 5) * l
            + 2 ** (k - l + 3) * (l * l - 17 * l - 5 * k - k * k)
            - 2 * l * l + 2 * k * l + 17 * l - 4 * k - 20)


def W_value(k: int, m: int) -> int:
    return ((k - m) * 3 ** (m + 5)
            + (m * m + (17 - 2 * k) * m - 22 * k) * 2 ** (m + 3)
            - 2 * m * m + (2 * k - 17) * m + 13 * k - 20)


def theta_value(k: int, l: int) -> Fraction:
    """Coefficient of beta^l in the closed form of the derivative ratio."""
    if not 0 <= l <= k + 1:
        raise ValueError("need 0 <= l <= k+1")
    U = U_value(k)
    if l == 0:
        return Fraction(-2 * (2 ** (k + 1) * k + 1), U)
    if l == k + 1:
        return Fraction(k + 4, 2 * math.factorial(k) * U)
    return Fraction(math.factorial(k + 4) * V_value(k, l),
                    math.factorial(l) * math.factorial(l + 2)
                    * math.factorial(k - l + 5) * U)


def script_A(m: int) -> int:
    return ((4 * m ** 3 + 86 * m ** 2 + 442 * m + 276) * 2 ** (m + 3)
            + (m * m + 25 * m + 150) * 4 ** (m + 5)
            - 2 * (4 * m * m + 40 * m + 87) * 3 ** (m + 5)
            + 9 ** (m + 6)
            + (m * m + m - 102) * 2 ** (m + 4) * 3 ** (m + 5)
            + 4 * m * m + 64 * m + 249)


def script_B(m: int) -> int:
    return (2 * (8 * m ** 3 + 92 * m ** 2 + 282 * m + 207) * 3 ** (m + 5)
            - (2 * m + 1) * 9 ** (m + 6)
            - (6 * m ** 4 + 145 * m ** 3 + 839 * m ** 2 + 592 * m - 1524) * 2 ** (m + 3)
            - (m ** 3 + 31 * m ** 2 + 234 * m + 108) * 4 ** (m + 5)
            - (m ** 3 + 5 * m ** 2 - 96 * m - 12) * 2 ** (m + 3) * 3 ** (m + 6)
            - (8 * m ** 3 + 148 * m ** 2 + 794 * m + 1065))


def script_C(m: int) -> int:
    return ((2 * m ** 5 + 57 * m ** 4 + 388 * m ** 3 + 585 * m ** 2 + 480 * m + 2988)
            * 2 ** (m + 3)
            + (m ** 4 + 36 * m ** 3 + 323 * m ** 2 + 12 * m - 756) * 4 ** (m + 4)
            + 4 * m ** 4 + 84 * m ** 3 + 569 * m ** 2 + 1401 * m + 1152
            + (m ** 4 + 10 * m ** 3 - 99 * m ** 2 + 24 * m + 252)
            * 2 ** (m + 3) * 3 ** (m + 5)
            + m * (m + 1) * 9 ** (m + 6)
            - 2 * (4 * m ** 4 + 52 * m ** 3 + 207 * m ** 2 + 327 * m + 288)
            * 3 ** (m + 5))


def M_value(m: int, k: int) -> int:
    return script_A(m) * k * k + script_B(m) * k + script_C(m)


# -- sequence reports -------------------------------------------------------


@dataclass(frozen=True)
class MonotonicityReport:
    values: list[Fraction]
    strictly_increasing: bool
    nondecreasing: bool
    first_violation: Optional[int]  # smallest k with values[k+1] <= values[k]


def _monotonicity(values: list[Fraction]) -> MonotonicityReport:
    first = None
    nondec = True
    for k in range(len(values) - 1):
        if values[k + 1] <= values[k]:
            if first is None:
                first = k
            if values[k + 1] < values[k]:
                nondec = False
    return MonotonicityReport(values=values, strictly_increasing=first is None,
                              nondecreasing=nondec, first_violation=first)


def c_ratio_sequence(beta, K: int) -> MonotonicityReport:
    """Exact c_0..c_K for the first quotient plus a monotonicity verdict."""
    if K < 2:
        raise ValueError("need K >= 2")
    beta = to_fraction(beta)
    return _monotonicity([c_coeff(k, beta) for k in range(K + 1)])


def C_ratio_sequence(beta, K: int) -> MonotonicityReport:
    """Exact C_0..C_K for the derivative quotient plus a verdict."""
    if K < 4:
        raise ValueError("need K >= 4")
    beta = to_fraction(beta)
    return _monotonicity([C_coeff(k, beta) for k in range(K + 1)])


def ladder_check(k_max: int) -> dict:
    """Exact verification of every ladder inequality up to k_max.

    Checks, for 4 <= k <= k_max and admissible l, m:
      theta_{k+1,l} >= theta_{k,l};  M_m(k) >= 0;
      U_{k+1}/U_k <= V_{k+1}(1)/V_k(1);
      the three quadratic seeds positive for k >= 4;
      A(m) > 0, B(m) < 0, C(m) > 0 for 0 <= m <= k_max.
    """
    if k_max < 6:
        raise ValueError("need k_max >= 6")
    failures = []
    for k in range(4, k_max + 1):
        for l in range(0, k + 1):
            if theta_value(k + 1, l) < theta_value(k, l):
                failures.append(("theta", k, l))
        for m in range(0, k - 1):
            if M_value(m, k) < 0:
                failures.append(("M", m, k))
        if Fraction(U_value(k + 1), U_value(k)) > \
                Fraction(V_value(k + 1, 1), V_value(k, 1)):
            failures.append(("UV", k, None))
        for m, seed in ((0, 3360 * (54 - 137 * k + 74 * k * k)),
                        (1, 1568 * (6480 - 7306 * k + 1909 * k * k)),
                        (2, 336 * (750942 - 549881 * k + 95837 * k * k))):
            if M_value(m, k) != seed:
                failures.append(("seed-mismatch", m, k))
            if seed <= 0:
                failures.append(("seed-sign", m, k))
    sign_table = {}
    for m in range(0, k_max + 1):
        a, b, c = script_A(m), script_B(m), script_C(m)
        sign_table[m] = (a, b, c)
        if a <= 0:
            failures.append(("A", m, None))
        if b >= 0:
            failures.append(("B", m, None))
        if c <= 0:
            failures.append(("C", m, None))
    return {
        "k_max": k_max,
        "passed": not failures,
        "failures": failures,
        "C_values": {m: script_C(m) for m in range(6)},
        "U4": U_value(4),
    }


# -- enclosure-valued ratio functions --------------------------------------


def f_beta(u, beta, digits: int) -> Enclosure:
    """kernel(u) / i_1(beta u): the first Bessel-kernel ratio."""
    u, beta = to_fraction(u), to_fraction(beta)
    if u <= 0 or beta <= 0:
        raise ValueError("need u > 0 and beta > 0")
    kern = eval_enclosure(kernel_derivative(0), u, digits + 4)
    i1 = specfun.bessel_ratio(1, beta * u, digits + 4)
    return (kern / i1).round_out(digits + 1)


def g_beta(u, beta, digits: int) -> Enclosure:
    """kernel'(u) / i_2(beta u): the derivative Bessel-kernel ratio."""
    u, beta = to_fraction(u), to_fraction(beta)
    if u <= 0 or beta <= 0:
        raise ValueError("need u > 0 and beta > 0")
    kern1 = eval_enclosure(kernel_derivative(1), u, digits + 4)
    i2 = specfun.bessel_ratio(2, beta * u, digits + 4)
    return (kern1 / i2).round_out(digits + 1)


def h_k_beta(k: int, u, beta, digits: int) -> Enclosure:
    """kernel^(k-1)(u) / i_k(beta u): the conjectured higher-order ratios."""
    if not 1 <= k <= 6:
        raise ValueError("supported orders are 1..6")
    u, beta = to_fraction(u), to_fraction(beta)
    if u <= 0 or beta <= 0:
        raise ValueError("need u > 0 and beta > 0")
    kern = eval_enclosure(kernel_derivative(k - 1), u, digits + 4)
    ik = specfun.bessel_ratio(k, beta * u, digits + 4)
    return (kern / ik).round_out(digits + 1)


# -- unimodal maximization --------------------------------------------------


@dataclass(frozen=True)
class MaxResult:
    argmax: Enclosure
    value: Enclosure
    digits_used: int
    resolved: bool


def unimodal_max(f: Callable[[Fraction, int], Enclosure], bracket, tol,
                 digits: int = 30, digit_cap: int = 120) -> MaxResult:
    """Narrow the maximizer of a unimodal f by enclosure comparisons.

    Trisection with exact rational probe points; when two probe enclosures
    overlap, the working precision doubles up to `digit_cap`, after which the
    achieved widths are returned with resolved=False.
    """
    a, b = to_fraction(bracket[0]), to_fraction(bracket[1])
    tol = to_fraction(tol)
    if not (a < b and tol > 0):
        raise ValueError("invalid bracket or tolerance")
    d = digits
    resolved = True
    while b - a > tol:
        m1 = a + (b - a) / 3
        m2 = b - (b - a) / 3
        while True:
            v1 = f(m1, d)
            v2 = f(m2, d)
            if v1.definitely_less(v2):
                a = m1
                break
            if v2.definitely_less(v1):
                b = m2
                break
            if d >= digit_cap:
                resolved = False
                break
            d = min(2 * d, digit_cap)
        if not resolved:
            break
    mid = (a + b) / 2
    center = f(mid, d)
    value = center.hull(f(a, d)).hull(f(b, d))
    return MaxResult(argmax=Enclosure(a, b), value=value,
                     digits_used=d, resolved=resolved)


def slope_sign_changes(f: Callable[[Fraction, int], Enclosure], grid,
                       digits: int = 30, digit_cap: int = 120):
    """Signs of consecutive finite differences of f over a grid.

    Each difference is refined until sign-definite or the cap is hit; returns
    (signs, n_changes) where an unresolved difference appears as 0.
    """
    pts = [to_fraction(x) for x in grid]
    signs = []
    for x0, x1 in zip(pts, pts[1:]):
        d = digits
        while True:
            diff = f(x1, d) - f(x0, d)
            s = diff.sign()
            if s != 0 or d >= digit_cap:
                signs.append(s)
                break
            d = min(2 * d, digit_cap)
    changes = 0
    last = 0
    for s in signs:
        if s != 0:
            if last != 0 and s != last:
                changes += 1
            last = s
    return signs, changes


def geometric_grid(lo, hi, count: int) -> list[Fraction]:
    """Deterministic rational grid, approximately geometric."""
    lo, hi = to_fraction(lo), to_fraction(hi)
    if not (0 < lo < hi and count >= 1):
        raise ValueError("need 0 < lo < hi and count >= 1")
    if count == 1:
        return [lo]
    ratio = float(hi / lo) ** (1.0 / (count - 1))
    pts = [lo]
    for i in range(1, count - 1):
        # nearby clean rational; exactness of the probe point is all we need
        pts.append(Fraction(float(lo) * ratio ** i).limit_denominator(10 ** 6))
    pts.append(hi)
    return pts


def linear_grid(lo, hi, count: int) -> list[Fraction]:
    lo, hi = to_fraction(lo), to_fraction(hi)
    if count == 1:
        return [lo]
    step = (hi - lo) / (count - 1)
    return [lo + i * step for i in range(count)]
