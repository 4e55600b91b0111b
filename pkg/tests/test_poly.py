from fractions import Fraction

import pytest
from hypothesis import assume, given, settings, strategies as st

from cmcert import poly, specfun
from cmcert.poly import Polynomial

coeff_lists = st.lists(
    st.fractions(min_value=-50, max_value=50, max_denominator=100),
    min_size=1, max_size=8)
unit_points = st.fractions(min_value=0, max_value=1, max_denominator=500)
shifts = st.fractions(min_value=-10, max_value=10, max_denominator=50)


def test_polynomial_basics():
    p = Polynomial.of([1, 2, 3])
    assert p.degree == 2
    assert p(2) == 17
    assert p.derivative().coeffs == (2, 6)
    assert (p * Polynomial.x()).coeffs == (0, 1, 2, 3)
    assert p[5] == 0


@given(coeff_lists, unit_points)
def test_sandwich_bounds_contain_values_on_unit_interval(coeffs, x):
    p = Polynomial.of(coeffs)
    if p.is_zero():
        return
    bks = poly.cargo_shisha_bounds(p)
    assert len(bks) == p.degree + 1
    assert min(bks) <= p(x) <= max(bks)


@given(coeff_lists)
def test_sandwich_bounds_endpoints(coeffs):
    p = Polynomial.of(coeffs)
    if p.is_zero():
        return
    bks = poly.cargo_shisha_bounds(p)
    assert bks[0] == p[0]
    assert bks[-1] == p(1)


@given(coeff_lists, shifts)
def test_taylor_shift_roundtrip(coeffs, a):
    p = Polynomial.of(coeffs)
    assert poly.taylor_shift(poly.taylor_shift(p, a), -a) == p


@given(coeff_lists, shifts, unit_points)
def test_taylor_shift_evaluates_correctly(coeffs, a, x):
    p = Polynomial.of(coeffs)
    assert poly.taylor_shift(p, a)(x) == p(x + a)


@given(coeff_lists, shifts, shifts, unit_points)
def test_compose_affine_evaluates_correctly(coeffs, a, s, x):
    p = Polynomial.of(coeffs)
    assert poly.compose_affine(p, a, s)(x) == p(a + s * x)


def test_descartes_counts():
    assert poly.descartes_sign_changes(Polynomial.of([1, 0, -3, 2])) == 2
    assert poly.descartes_sign_changes(Polynomial.of([1, 1, 1])) == 0
    assert poly.descartes_sign_changes(Polynomial.of([-1, 0, 1])) == 1


def test_certify_positive_certifies_simple_polynomial():
    # (x - 10)**2 + 1 > 0 everywhere
    p = Polynomial.of([101, -20, 1])
    cert = poly.certify_positive_on_interval(p, 0, 6, 1)
    assert cert.verdict == "certified"
    assert len(cert.pieces) == 6
    assert cert.witness is None


def test_certify_positive_finds_counterexample():
    # x**2 - 2 dips below zero inside [0, 6]
    p = Polynomial.of([-2, 0, 1])
    cert = poly.certify_positive_on_interval(p, 0, 6, 1)
    assert cert.verdict == "falsified"
    assert cert.witness is not None
    assert p(cert.witness) == cert.witness_value
    assert cert.witness_value <= 0


def test_certificate_json_roundtrip():
    import json
    p = Polynomial.of([101, -20, 1])
    cert = poly.certify_positive_on_interval(p, 0, 6, 1)
    data = json.loads(cert.to_json())
    assert data["verdict"] == "certified"
    assert len(data["pieces"]) == 6


def test_isolate_root_brackets_sqrt2():
    p = Polynomial.of([-2, 0, 1])
    lo, hi = poly.isolate_root(p, 1, 2, Fraction(1, 1024))
    assert lo ** 2 < 2 < hi ** 2
    assert hi - lo <= Fraction(1, 1024)


def test_isolate_root_rejects_same_sign_endpoints():
    p = Polynomial.of([1, 0, 1])
    with pytest.raises(ValueError):
        poly.isolate_root(p, 0, 1, Fraction(1, 64))


def test_exp_bound_polynomial_small_cases():
    # n = 1: coefficients (2n-k)! C(n,k)/n! -> [2, 1]
    assert poly.exp_bound_polynomial(1).coeffs == (2, 1)
    assert poly.exp_bound_polynomial(2).coeffs == (12, 6, 1)


@settings(deadline=None)
@given(st.integers(min_value=0, max_value=3), st.integers(min_value=1, max_value=3),
       st.fractions(min_value=Fraction(1, 10), max_value=2, max_denominator=20))
def test_lemma1_bounds_sandwich_exp(m, n, u):
    assume(u < 2 * (m + 1))  # upper bound has a pole at the range endpoint
    (low_n, low_d), (up_n, up_d), threshold = poly.lemma1_exp_bounds(m, n)
    assert threshold == Fraction(1, 2 * (m + 1))
    e = specfun.exp_enclosure(u, 30)
    lo = Fraction(low_n(u), low_d(u))
    hi = Fraction(up_n(u), up_d(u))
    assert lo < e.lo
    assert e.hi < hi
