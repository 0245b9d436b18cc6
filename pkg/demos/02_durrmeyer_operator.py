"""Apply B_n and D_n to a few functions and compare their derivatives."""

from fractions import Fraction

import numpy as np

from bernvar import BernsteinPoly, bernstein_apply, durrmeyer_apply_exact, lookup
from bernvar.analysis import coefficients_for
from bernvar.operators import durrmeyer_derivative_a, durrmeyer_derivative_b

# D_n of the identity is (nx + 1)/(n + 2), so it never interpolates the endpoints
for n in (1, 3, 10):
    p = durrmeyer_apply_exact(BernsteinPoly.exact([0, 1]), n)
    print(f"n={n:2d}  F = {[str(c) for c in p.coeffs]}  D_n id(1/2) = {p(Fraction(1, 2))}")

# B_n samples, D_n averages
sin = lookup(["sin2pi"])[0]
x = np.linspace(0, 1, 5)
for n in (8, 32, 128):
    b = bernstein_apply(sin.f, n)(x)
    d = coefficients_for(sin, n).poly(x)
    print(f"n={n:3d}  B_n: {np.round(b, 4)}  D_n: {np.round(d, 4)}")

# the two derivative formulas agree at interior points; only (b) works at 0 and 1
c = coefficients_for(sin, 6)
xs = np.array([0.2, 0.5, 0.8])
print("rep (a):", durrmeyer_derivative_a(c, 6, xs))
print("rep (b):", durrmeyer_derivative_b(c, 6, xs))
print("rep (b) at endpoints:", durrmeyer_derivative_b(c, 6, np.array([0.0, 1.0])))
