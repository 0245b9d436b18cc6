import math
from dataclasses import replace
from fractions import Fraction

import numpy as np
import pytest

from bernvar import analysis
from bernvar.basis import basis_matrix
from bernvar.corpus import lookup
from bernvar.errors import DomainError, SingularRepresentationError, UndefinedRatioError
from bernvar.operators import BernsteinPoly, durrmeyer_apply_exact
from bernvar.quadrature import Panelization, integrate


def fn(name):
    return lookup([name])[0]


def test_a_closed_examples():
    assert analysis.a_coefficient_closed(0, 33, 0.7) == 0
    assert analysis.a_coefficient_closed(1, 10, 0.123) == pytest.approx(5 / 6)
    assert analysis.a_coefficient_closed(1, 10, Fraction(1, 9)) == Fraction(5, 6)
    assert analysis.a_coefficient_closed(2, 8, 0.5) == 0
    with pytest.raises(DomainError):
        analysis.a_coefficient_closed(3, 8, 0.5)


def test_a_direct_examples():
    assert analysis.a_coefficient_direct(0, 6, 0.3) == pytest.approx(0.0, abs=1e-12)
    assert analysis.a_coefficient_direct(1, 6, 0.3) == pytest.approx(0.75, abs=1e-12)
    assert analysis.a_coefficient_direct(2, 5, 0.25) == pytest.approx(5 / 56, abs=1e-12)
    assert analysis.a_coefficient_direct(2, 5, Fraction(1, 4)) == Fraction(5, 56)
    with pytest.raises(SingularRepresentationError):
        analysis.a_coefficient_direct(1, 5, 0.0)


def test_a_direct_exact_matches_closed():
    for n in (1, 2, 7, 13):
        for x in (Fraction(1, 3), Fraction(5, 8)):
            for j in range(3):
                assert analysis.a_coefficient_direct(j, n, x) == analysis.a_coefficient_closed(j, n, x)


def test_quadratic_remainder_vanishes():
    g = fn("t2")
    x = np.linspace(0, 1, 41)
    for n in (1, 3, 10, 40):
        assert np.max(np.abs(analysis.remainder(g, n, x))) <= 1e-10


def test_remainder_t3_matches_split():
    g = fn("t3")
    r = analysis.remainder(g, 4, 0.5)
    b = analysis.b_components(g, 4, 0.5)
    assert np.isfinite(r)
    assert b.sum() == pytest.approx(float(r), abs=1e-10)
    b = analysis.b_components(g, 3, 0.5)
    assert b.sum() == pytest.approx(float(analysis.remainder(g, 3, 0.5)), abs=1e-10)


def test_remainder_sin_envelope():
    # each inner Taylor integral is at most |t-x|^3 sup|g3| / 3 in size
    g = fn("sin2pi")
    n, x = 16, 0.25
    X = x * (1 - x)
    k = np.arange(n + 1)
    moments = integrate(lambda t: np.abs(t - x) ** 3 * basis_matrix(n, t), panels=Panelization((x,), 8))
    weights = np.abs(k - n * x) * basis_matrix(n, np.array([x]))[:, 0]
    envelope = (n + 1) / (2 * X) * 8 * math.pi**3 / 3 * float(weights @ moments)
    value = abs(float(analysis.remainder(g, n, x)))
    assert 0 < value <= envelope


def test_b_components_quadratic_zero():
    g = fn("t2")
    b = analysis.b_components(g, 7, np.array([0.1, 0.5, 0.9]))
    assert b.shape == (4, 3)
    assert np.max(np.abs(b)) <= 1e-12


def test_b_components_exp_finite():
    g = fn("exp")
    b = analysis.b_components(g, 8, 0.3)
    assert np.all(np.isfinite(b))
    norms, gap = analysis.b_component_norms(g, 8)
    assert set(norms) == {"B1", "B2", "B3", "B4", "R"}
    assert gap < 1e-3


def test_b_components_reject_endpoints():
    with pytest.raises(SingularRepresentationError):
        analysis.b_components(fn("exp"), 4, 0.0)


def test_literal_split_does_not_reassemble():
    g = fn("sin2pi")
    x = np.array([0.3])
    lit = analysis.b_components(g, 8, x, split="literal").sum(axis=0)
    full = analysis.remainder(g, 8, x)
    assert abs(lit[0] - full[0]) > 1e-3


def test_bound_kernel_available():
    b = analysis.b_components(fn("t3"), 6, 0.4, kernel="bound")
    assert np.all(np.isfinite(b))
    with pytest.raises(DomainError):
        analysis.b_components(fn("t3"), 6, 0.4, kernel="other")


def test_integer_part_ties_downward():
    # n x = 3 exactly, and n x within rounding of 3
    assert analysis._integer_part(6, 0.5) == 3
    assert analysis._integer_part(10, 0.3) == 3
    assert analysis._integer_part(10, 0.29) == 2


def test_detracting_examples():
    r = analysis.verify_detracting(fn("const_one"), 7, exact=True)
    assert (r.v_input, r.v_output, r.margin) == (0.0, 0.0, 0.0)
    r = analysis.verify_detracting(fn("const_one"), 7)
    assert abs(r.margin) <= r.eps and r.passed
    r = analysis.verify_detracting(fn("step_half"), 10)
    assert r.v_input == 1.0
    assert r.v_output < 1.0 - 1e-4
    assert r.passed
    r = analysis.verify_detracting(fn("id"), 5, exact=True)
    F = durrmeyer_apply_exact(BernsteinPoly.exact([0, 1]), 5).coeffs
    assert r.v_output == float(F[5] - F[0])
    assert r.v_output <= 1


def test_rate_examples():
    r = analysis.verify_rate(fn("const_one"), 8)
    assert r.lhs == pytest.approx(0.0, abs=1e-12) and r.rhs == 0.0
    assert r.ratio == 0.0
    r = analysis.verify_rate(fn("id"), 6)
    assert r.lhs == pytest.approx(2 / 8, abs=1e-12)
    assert r.term1 == pytest.approx(2 / 8)
    # lhs equals term1 exactly for the identity, so the ratio sits at 1
    assert r.ratio == pytest.approx(1.0, abs=1e-10)
    assert r.passed(1e-8)
    r = analysis.verify_rate(fn("sin2pi"), 100)
    want = 2 / 102 * (4 + 8 * math.pi) + 2 / 10 * 16 * math.pi**2
    assert r.rhs == pytest.approx(want, rel=1e-14)
    assert r.rhs == pytest.approx(32.2, abs=0.1)
    assert r.ratio < 1


def test_rate_rejects_non_c3():
    with pytest.raises(DomainError):
        analysis.verify_rate(fn("abs_half"), 4)


def test_stein_ratio_examples():
    assert analysis.stein_ratio(fn("sin2pi")) == pytest.approx(1.0, abs=1e-14)
    assert analysis.stein_ratio(fn("exp")) == pytest.approx(1.0, abs=1e-14)
    with pytest.raises(UndefinedRatioError):
        analysis.stein_ratio(fn("id"))


def test_stein_ratio_from_quadrature():
    # drop the registered norms so l1_norm has to find them
    for name in ("sin2pi", "exp"):
        g = replace(fn(name), known_l1_norms=None)
        assert analysis.stein_ratio(g) == pytest.approx(1.0, abs=1e-8)


def test_variation_of_regimes():
    assert analysis.variation_of(fn("sin2pi")).method == "analytic"
    v = analysis.variation_of(replace(fn("sawtooth3"), known_tv=None))
    assert v.method == "l1_of_derivative" and v.value == pytest.approx(3.0, abs=1e-10)
    v = analysis.variation_of(replace(fn("step_half"), known_tv=None))
    assert v.method == "partition" and v.value == 1.0


def test_decay_slope():
    ns = [16, 32, 64]
    assert analysis.decay_slope(ns, [1 / n for n in ns]) == pytest.approx(-1.0)
    assert math.isnan(analysis.decay_slope([4], [1.0]))
