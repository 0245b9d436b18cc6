"""Bernstein basis and its moment sums, checked in exact arithmetic."""

from fractions import Fraction

import numpy as np

from bernvar.basis import basis_eval_all, central_moment, central_moment_direct, sum_moment, sum_moment_direct

# the basis of degree 5 at x = 0.3; entries are nonnegative and sum to 1
p = basis_eval_all(5, 0.3)
print("p_5,k(0.3) =", np.round(p, 6), " sum =", p.sum())

# rational input gives rational output
print("p_3,k(1/2) =", basis_eval_all(3, Fraction(1, 2)))

# closed-form sums of k^r p_{n,k} against the brute-force sum
n, x = 9, Fraction(2, 7)
for r in range(5):
    print(f"T_{r}: closed {sum_moment(r, n, x)}  direct {sum_moment_direct(r, n, x)}")

# third central moment: nX(1 - 2x) with lowercase x
X = x * (1 - x)
print("third central moment:", central_moment_direct(3, n, x))
print("  nX(1-2x) =", n * X * (1 - 2 * x), "  nX(1-2X) =", n * X * (1 - 2 * X))
assert central_moment(3, n, x) == central_moment_direct(3, n, x)
