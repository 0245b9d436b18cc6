from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bernvar.corpus import corpus_default, lookup
from bernvar.errors import DomainError, NonFiniteValueError, SingularRepresentationError
from bernvar.operators import (
    BernsteinPoly,
    bernstein_apply,
    durrmeyer_apply,
    durrmeyer_apply_exact,
    durrmeyer_coefficients,
    durrmeyer_coefficients_exact,
    durrmeyer_derivative_a,
    durrmeyer_derivative_b,
)
from bernvar.analysis import coefficients_for
from bernvar.quadrature import Panelization

ONE = BernsteinPoly.exact([1])
ID = BernsteinPoly.exact([0, 1])
T2 = BernsteinPoly.exact([0, 0, 1])


def test_poly_invariants():
    p = BernsteinPoly.exact([Fraction(1, 3), 2, -1, 5])
    assert p.degree == 3
    assert p(0) == Fraction(1, 3) and p(1) == 5
    assert p.derivative().coeffs == (Fraction(5), Fraction(-9), Fraction(18))
    q = BernsteinPoly.floating([0.2, -1.0, 4.0])
    assert q(0.0) == 0.2 and q(1.0) == 4.0
    with pytest.raises(ValueError):
        q.coeffs[0] = 3.0
    with pytest.raises(DomainError):
        q(1.5)


def test_poly_elevation_and_split_preserve_values():
    p = BernsteinPoly.exact([1, -2, 3, 0])
    e = p.elevate(7)
    for x in (Fraction(0), Fraction(1, 5), Fraction(2, 3), Fraction(1)):
        assert e(x) == p(x)
    left, right = p.split(Fraction(1, 3))
    assert left(Fraction(1, 2)) == p(Fraction(1, 6))
    assert right(Fraction(1, 2)) == p(Fraction(2, 3))


def test_poly_arithmetic():
    p = BernsteinPoly.exact([1, 2])
    q = BernsteinPoly.exact([0, 1, 1])
    assert (p + q)(Fraction(1, 2)) == p(Fraction(1, 2)) + q(Fraction(1, 2))
    assert (p - q)(Fraction(1, 4)) == p(Fraction(1, 4)) - q(Fraction(1, 4))
    assert (3 * p).coeffs == (3, 6)


def test_bernstein_examples():
    p = bernstein_apply(lambda t: np.ones_like(t), 5)
    np.testing.assert_array_equal(p.coeffs, np.ones(6))
    p = bernstein_apply(lambda t: t, 4)
    np.testing.assert_allclose(p.coeffs, [0, 0.25, 0.5, 0.75, 1])
    x = np.linspace(0, 1, 11)
    np.testing.assert_allclose(p(x), x, atol=1e-15)


def test_bernstein_square_at_half():
    # sum f(k/2) p_{2,k}(1/2) = 0/4 + (1/4)(1/2) + 1/4 = 3/8
    p = bernstein_apply(lambda t: t * t, 2, exact=True)
    assert p.coeffs == (0, Fraction(1, 4), 1)
    oracle = sum(Fraction(k, 2) ** 2 * w for k, w in enumerate([Fraction(1, 4), Fraction(1, 2), Fraction(1, 4)]))
    assert oracle == Fraction(3, 8)
    assert p(Fraction(1, 2)) == oracle
    assert bernstein_apply(lambda t: t * t, 2)(0.5) == pytest.approx(0.375, abs=1e-16)


def test_bernstein_nonfinite_node():
    with pytest.raises(NonFiniteValueError) as info:
        bernstein_apply(lambda t: np.where(t == 0.5, np.inf, t), 4)
    assert info.value.node == 0.5


def test_durrmeyer_constant():
    for n in (0, 1, 5, 30):
        c = durrmeyer_coefficients(lambda t: np.ones_like(t), n)
        np.testing.assert_allclose(c.F, np.ones(n + 1), atol=1e-13)
        assert durrmeyer_apply_exact(ONE, n).coeffs == tuple([Fraction(1)] * (n + 1))


def test_durrmeyer_identity_n1():
    c = durrmeyer_coefficients(lambda t: t, 1)
    np.testing.assert_allclose(c.F, [1 / 3, 2 / 3], atol=1e-14)
    p = durrmeyer_apply_exact(ID, 1)
    assert p.coeffs == (Fraction(1, 3), Fraction(2, 3))
    assert p(0) == Fraction(1, 3) and p(1) == Fraction(2, 3)


def test_durrmeyer_step_n1():
    step = lookup(["step_half"])[0]
    c = durrmeyer_coefficients(step.f, 1, panels=Panelization(step.breakpoints, 4))
    np.testing.assert_allclose(c.F, [0.25, 0.75], atol=1e-14)


def test_durrmeyer_identity_n10_at_half():
    assert durrmeyer_apply_exact(ID, 10)(Fraction(1, 2)) == Fraction(1, 2)
    assert durrmeyer_apply(lambda t: t, 10)(0.5) == pytest.approx(0.5, abs=1e-14)


def test_durrmeyer_exact_identity_n3():
    assert durrmeyer_apply_exact(ID, 3).coeffs == tuple(Fraction(k, 5) for k in range(1, 5))


def test_exact_and_quadrature_paths_agree():
    for p in (ID, T2, BernsteinPoly.exact([0, 0, 0, 1]), BernsteinPoly.exact([2, -1, 3, 0, 1])):
        for n in (1, 2, 7, 20):
            ex = np.array([float(v) for v in durrmeyer_coefficients_exact(p, n).F])
            q = durrmeyer_coefficients(p, n, degree=p.degree).F
            np.testing.assert_allclose(q, ex, rtol=1e-13, atol=1e-15)


def test_exact_path_rejects_floating():
    with pytest.raises(DomainError):
        durrmeyer_apply_exact(BernsteinPoly.floating([0.0, 1.0]), 3)


def test_coefficients_bounded_by_sup():
    for f in corpus_default():
        m = float(np.max(np.abs(f.f(np.linspace(0, 1, 10_001)))))
        c = coefficients_for(f, 17)
        assert np.all(np.abs(np.asarray(c.F, dtype=float)) <= m + 1e-12)


def test_derivative_a_examples():
    assert durrmeyer_derivative_a(lambda t: np.ones_like(t), 5, 0.37) == pytest.approx(0.0, abs=1e-13)
    assert durrmeyer_derivative_a(ID, 1, Fraction(1, 2)) == Fraction(1, 3)
    want = durrmeyer_apply_exact(T2, 4).derivative()(Fraction(1, 4))
    assert durrmeyer_derivative_a(lambda t: t * t, 4, 0.25) == pytest.approx(float(want), abs=1e-12)


@pytest.mark.parametrize("x", [0.0, 1.0, Fraction(0), 1])
def test_derivative_a_is_singular_at_endpoints(x):
    with pytest.raises(SingularRepresentationError):
        durrmeyer_derivative_a(ID, 3, x)


def test_derivative_b_examples():
    x = np.linspace(0, 1, 9)
    np.testing.assert_allclose(durrmeyer_derivative_b(lambda t: np.ones_like(t), 6, x), 0.0, atol=1e-13)
    assert durrmeyer_derivative_b(ID, 1, 0) == Fraction(1, 3)
    assert durrmeyer_derivative_b(lambda t: t, 1, 0.0) == pytest.approx(1 / 3, abs=1e-14)
    sin = lookup(["sin2pi"])[0]
    for x in (0.2, 0.8):
        a = durrmeyer_derivative_a(sin.f, 6, x)
        b = durrmeyer_derivative_b(sin.f, 6, x)
        assert a == pytest.approx(b, abs=1e-10)


def test_derivative_b_equals_coefficient_derivative():
    sin = lookup(["sin2pi"])[0]
    c = coefficients_for(sin, 12)
    x = np.linspace(0, 1, 41)
    np.testing.assert_allclose(durrmeyer_derivative_b(c, 12, x), c.poly.derivative()(x), atol=1e-12)


def test_linearity_exact():
    a, b = Fraction(3, 7), Fraction(-2)
    p = BernsteinPoly.exact([1, 0, 2])
    q = BernsteinPoly.exact([0, 5, -1, 3])
    combo = a * p.elevate(3) + b * q
    for n in (1, 4, 9):
        lhs = durrmeyer_apply_exact(combo, n)
        rhs = a * durrmeyer_apply_exact(p, n) + b * durrmeyer_apply_exact(q, n)
        assert lhs.coeffs == rhs.coeffs


@settings(max_examples=30, deadline=None)
@given(st.lists(st.floats(0.0, 5.0), min_size=1, max_size=6), st.integers(1, 25))
def test_positivity(coeffs, n):
    f = BernsteinPoly.floating(coeffs)
    c = durrmeyer_coefficients(f, n, degree=f.degree)
    assert np.all(c.F >= -1e-13)
    assert np.all(c.poly(np.linspace(0, 1, 51)) >= -1e-13)


@settings(max_examples=30, deadline=None)
@given(st.lists(st.integers(-9, 9), min_size=1, max_size=5), st.integers(1, 12))
def test_representations_agree_exactly(coeffs, n):
    p = BernsteinPoly.exact(coeffs)
    for x in (Fraction(1, 7), Fraction(1, 2), Fraction(5, 6)):
        assert durrmeyer_derivative_a(p, n, x) == durrmeyer_derivative_b(p, n, x)
