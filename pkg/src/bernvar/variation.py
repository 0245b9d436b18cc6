"""Total variation, the TV seminorm and the BV norm on [0, 1].

Three regimes are offered:

* ``variation_partition`` sums ``|f(x_{i+1}) - f(x_i)|`` over a sample grid;
  this is always a lower bound of the Jordan variation.
* ``tv_seminorm_ac`` integrates ``|f'|``, valid for absolutely continuous f.
* ``variation_bernstein_exact`` splits a Bernstein-form polynomial into
  monotone pieces by isolating the roots of its derivative and adds up the
  rises and falls.  This is the regime used for operator images.
"""

from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy.optimize import brentq

from .basis import basis_matrix
from .errors import DomainError
from .operators import BernsteinPoly, split_coefficients
from .quadrature import DEFAULT_TOL, l1_norm

__all__ = [
    "VariationResult",
    "variation_partition",
    "tv_seminorm_ac",
    "isolate_roots",
    "variation_bernstein_exact",
    "bv_norm",
]

_EPS = np.finfo(float).eps
_MAX_BOXES = 200_000


@dataclass(frozen=True)
class VariationResult:
    """A variation value with the regime that produced it.

    ``method`` is one of ``"partition"``, ``"l1_of_derivative"``,
    ``"exact_monotone"`` or ``"analytic"`` (a registered closed form).  ``error_bound`` of 0 marks an exact value; for the
    partition regime the value is a lower bound and ``error_bound`` is 0.
    """

    value: object
    method: str
    error_bound: float = 0.0

    def __float__(self):
        return float(self.value)

    @property
    def is_exact(self):
        return self.method == "exact_monotone" and self.error_bound == 0.0


def variation_partition(x, fx):
    """Variation of the samples ``fx`` taken at strictly increasing ``x``."""
    x = np.asarray(x, dtype=float)
    fx = np.asarray(fx, dtype=float)
    if x.ndim != 1 or x.shape != fx.shape:
        raise DomainError("x and fx must be 1-D arrays of equal length")
    if np.any(np.diff(x) <= 0):
        raise DomainError("sample abscissae must be strictly increasing")
    if x.size and (x[0] < 0.0 or x[-1] > 1.0):
        raise DomainError("sample abscissae must lie in [0, 1]")
    return VariationResult(float(np.sum(np.abs(np.diff(fx)))), "partition", 0.0)


def tv_seminorm_ac(fprime, panels=None, tol=DEFAULT_TOL, **kwargs):
    """``V[f] = int_0^1 |f'(t)| dt`` for absolutely continuous f."""
    value = l1_norm(fprime, panels=panels, tol=tol, **kwargs)
    return VariationResult(value, "l1_of_derivative", tol)


def _variations(c, thr):
    s = np.sign(c[np.abs(c) > thr])
    return int(np.count_nonzero(s[:-1] != s[1:]))


def _local_eval(c):
    deg = c.size - 1
    return lambda s: float(c @ basis_matrix(deg, np.array([s]))[:, 0])


def isolate_roots(coeffs, tol=1e-12, zero_threshold=0.0):
    """Roots in (0, 1) of a float polynomial given by Bernstein coefficients.

    Subdivides with de Casteljau and counts coefficient sign variations,
    which bound the number of roots in a box from above.  A box with no
    variation is discarded; a box with exactly one variation and opposite
    end signs holds exactly one root, which is refined with Brent's method;
    anything else is halved until narrower than ``tol``.  Coefficients with
    magnitude at or below ``zero_threshold`` are treated as zero.

    Spurious extra roots (for instance at a double root) are possible and
    harmless for variation purposes; genuine sign changes are never dropped.
    """
    c0 = np.asarray(coeffs, dtype=float)
    roots = []
    stack = [(c0, 0.0, 1.0)]
    boxes = 0
    while stack:
        c, a, b = stack.pop()
        boxes += 1
        if boxes > _MAX_BOXES:
            raise DomainError("root isolation exceeded its subdivision budget")
        v = _variations(c, zero_threshold)
        if v == 0:
            continue
        width = b - a
        if width < tol:
            roots.append(0.5 * (a + b))
            continue
        lo, hi = c[0], c[-1]
        if v == 1 and abs(lo) > zero_threshold and abs(hi) > zero_threshold and lo * hi < 0:
            s = brentq(_local_eval(c), 0.0, 1.0, xtol=max(tol / width, 4 * _EPS), rtol=4 * _EPS)
            roots.append(a + s * width)
            continue
        left, right = split_coefficients(c, 0.5)
        mid = 0.5 * (a + b)
        if abs(left[-1]) <= zero_threshold:
            roots.append(mid)
        stack.append((right, mid, b))
        stack.append((left, a, mid))
    return sorted(r for r in roots if 0.0 < r < 1.0)


def variation_bernstein_exact(p, tol=1e-12):
    """Variation of a Bernstein-form polynomial over [0, 1].

    The derivative ``q = p'`` is again in Bernstein form.  If its
    coefficients share one sign, p is monotone and ``V = |c_n - c_0|``.
    Otherwise the roots of q are isolated (see :func:`isolate_roots`), and
    ``V`` is the sum of ``|p(r_{i+1}) - p(r_i)|`` over the monotone pieces.

    ``error_bound`` accounts for root brackets of width ``tol``, rounding in
    the evaluations of p, and coefficients of q treated as zero.
    """
    if not isinstance(p, BernsteinPoly):
        raise DomainError("variation_bernstein_exact expects a BernsteinPoly")
    n = p.degree
    if n == 0:
        return VariationResult(Fraction(0) if p.kind == "exact" else 0.0, "exact_monotone", 0.0)
    q = p.derivative()
    if p.kind == "exact":
        qc = q.coeffs
        if all(v >= 0 for v in qc) or all(v <= 0 for v in qc):
            return VariationResult(abs(p.coeffs[-1] - p.coeffs[0]), "exact_monotone", 0.0)
        roots = isolate_roots(np.array([float(v) for v in qc]), tol)
        pts = [Fraction(0), *(Fraction(r) for r in roots), Fraction(1)]
        vals = [p(x) for x in pts]
        value = float(sum(abs(b - a) for a, b in zip(vals[:-1], vals[1:])))
        qmax = float(max(abs(v) for v in qc))
        return VariationResult(value, "exact_monotone", 2 * len(roots) * qmax * tol)

    c = np.asarray(p.coeffs, dtype=float)
    qc = np.asarray(q.coeffs, dtype=float)
    scale = float(np.max(np.abs(c)))
    thr = 32 * _EPS * n * scale
    rounding = 8 * _EPS * scale
    pos, neg = qc[qc > 0], qc[qc < 0]
    if np.all(np.abs(qc) <= thr):
        rise = abs(c[-1] - c[0])
        return VariationResult(float(rise), "exact_monotone", float(np.sum(np.abs(np.diff(c))) - rise + rounding))
    if np.all(qc >= -thr) or np.all(qc <= thr):
        minority = neg if np.all(qc >= -thr) else pos
        err = 2.0 * float(np.sum(np.abs(minority))) / n
        return VariationResult(float(abs(c[-1] - c[0])), "exact_monotone", float(err + (rounding if err else 0.0)))
    roots = isolate_roots(qc, tol, thr)
    pts = np.array([0.0, *roots, 1.0])
    vals = p(pts)
    value = float(np.sum(np.abs(np.diff(vals))))
    qmax = float(np.max(np.abs(qc)))
    err = 2 * len(roots) * qmax * tol + pts.size * rounding + 2 * thr
    return VariationResult(value, "exact_monotone", float(err))


def bv_norm(variation, anchor_value):
    """``||f||_BV = V[f] + |f(c)|`` with the anchor value ``f(c)`` (c = 0 here)."""
    return float(variation.value) + abs(float(anchor_value))
