"""Verification engines for the Durrmeyer operator results.

This module checks, numerically, the following facts about ``D_n``:

* it does not increase total variation or the BV norm;
* its derivative splits as ``A_1 g' + A_2 g'' + R_n g`` with closed-form
  ``A_j``;
* the remainder ``R_n g`` splits into four partial sums ``B_1..B_4``;
* ``||(D_n g)' - g'||_1 <= 2/(n+2) ||g'|| + 2/(n+2) ||g''|| + 2/sqrt(n) ||g'''||``.
"""

import math
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial

import numpy as np

from .basis import basis_eval_all, basis_matrix, basis_product_integral, is_exact
from .errors import DomainError, SingularRepresentationError, UndefinedRatioError
from .operators import durrmeyer_coefficients, durrmeyer_coefficients_exact, durrmeyer_derivative_b
from .quadrature import (
    DEFAULT_PANELS,
    DEFAULT_TOL,
    Panelization,
    gauss_legendre,
    l1_norm,
)
from .variation import VariationResult, bv_norm, tv_seminorm_ac, variation_bernstein_exact, variation_partition

__all__ = [
    "DetractingRecord",
    "RateRecord",
    "RemainderRecord",
    "coefficients_for",
    "variation_of",
    "a_coefficient_closed",
    "a_coefficient_direct",
    "remainder",
    "b_components",
    "b_component_norms",
    "verify_detracting",
    "verify_rate",
    "verify_remainder",
    "stein_ratio",
    "derivative_l1_norms",
    "decay_slope",
]


@dataclass(frozen=True)
class DetractingRecord:
    function_id: str
    n: int
    v_input: float
    v_output: float
    bv_input: float
    bv_output: float
    eps: float

    @property
    def margin(self):
        return self.v_input - self.v_output

    @property
    def bv_margin(self):
        return self.bv_input - self.bv_output

    @property
    def passed(self):
        return self.margin >= -self.eps and self.bv_margin >= -self.eps


@dataclass(frozen=True)
class RateRecord:
    function_id: str
    n: int
    lhs: float
    term1: float
    term2: float
    term3: float
    stein: float = None
    theorem_rhs: float = None

    @property
    def rhs(self):
        return self.term1 + self.term2 + self.term3

    @property
    def ratio(self):
        if self.rhs > 0:
            return self.lhs / self.rhs
        return 0.0 if self.lhs <= 1e-12 else math.inf

    def passed(self, tol=1e-8):
        return self.ratio <= 1.0 + tol


@dataclass(frozen=True)
class RemainderRecord:
    """Pointwise remainder and its four-way split on an x-grid, plus L1 norms."""

    function_id: str
    n: int
    x: np.ndarray
    remainder: np.ndarray
    components: np.ndarray
    norms: dict = field(default_factory=dict)
    norm_gap: float = 0.0
    third_derivative_l1: float = 0.0
    literal_gap: float = None

    @property
    def decomposition_gap(self):
        return float(np.max(np.abs(self.components.sum(axis=0) - self.remainder)))

    @property
    def max_abs_remainder(self):
        return float(np.max(np.abs(self.remainder)))

    @property
    def bound_b2(self):
        return self.third_derivative_l1 / math.sqrt(self.n)

    @property
    def bound_b3(self):
        return self.third_derivative_l1 / (2 * self.n)


def _panels(f, panels_per_segment=DEFAULT_PANELS):
    return Panelization(f.breakpoints, panels_per_segment)


def coefficients_for(f, n, rule=None, panels_per_segment=DEFAULT_PANELS, tol=DEFAULT_TOL, exact=False):
    """Durrmeyer coefficients of a corpus entry, routing its breakpoints and
    using an exactness-matched rule for polynomial entries."""
    if f.poly is not None:
        if exact:
            return durrmeyer_coefficients_exact(f.poly, n)
        return durrmeyer_coefficients(f.f, n, panels=_panels(f, 1), degree=f.poly.degree)
    return durrmeyer_coefficients(f.f, n, rule=rule, panels=_panels(f, panels_per_segment), tol=tol)


def variation_of(f, tol=DEFAULT_TOL):
    """V[f] for a corpus entry by the best regime available.

    A registered value wins.  Otherwise AC entries integrate ``|f'|``; BV
    entries fall back to a dense partition with the breakpoints injected
    (a lower bound).
    """
    if f.known_tv is not None:
        return VariationResult(float(f.known_tv), "analytic", 0.0)
    if f.is_ac:
        return tv_seminorm_ac(f.d1, _panels(f), tol)
    grid = np.linspace(0.0, 1.0, 100_001)
    pts = np.unique(np.concatenate([grid, f.breakpoints, np.nextafter(f.breakpoints, 0.0)]))
    return variation_partition(pts, f.f(pts))


# --- the A_{j,n} coefficients -------------------------------------------------


def a_coefficient_closed(j, n, x):
    """Closed forms ``A_0 = 0``, ``A_1 = n/(n+2)``, ``A_2 = 2n(1-2x)/((n+2)(n+3))``."""
    if j == 0:
        return 0 * x
    if j == 1:
        return Fraction(n, n + 2) + 0 * x if is_exact(x) else n / (n + 2) + 0 * x
    if j == 2:
        if is_exact(x):
            return Fraction(2 * n, (n + 2) * (n + 3)) * (1 - 2 * Fraction(x))
        return 2 * n * (1 - 2 * np.asarray(x, dtype=float)) / ((n + 2) * (n + 3))
    raise DomainError(f"A_j is defined for j in 0, 1, 2, got {j!r}")


def a_coefficient_direct(j, n, x):
    """``A_j(x) = (n+1)/(X j!) sum_k (k - n x) p_{n,k}(x) int_0^1 (t-x)^j p_{n,k}(t) dt``.

    The inner integral expands ``(t - x)^j`` binomially; each
    ``int t^i p_{n,k}`` is a Beta product integral, so no quadrature is
    involved.  Rational ``x`` gives an exact rational result.
    """
    if j not in (0, 1, 2):
        raise DomainError(f"A_j is defined for j in 0, 1, 2, got {j!r}")
    exact = is_exact(x)
    if not 0 < x < 1:
        raise SingularRepresentationError(f"A_j divides by x(1-x); x={x} is an endpoint")
    x = Fraction(x) if exact else float(x)
    X = x * (1 - x)
    p = basis_eval_all(n, x)
    total = Fraction(0) if exact else 0.0
    for k in range(n + 1):
        inner = Fraction(0) if exact else 0.0
        for i in range(j + 1):
            moment = basis_product_integral(n, k, i, i, exact=exact)
            inner += math.comb(j, i) * (-x) ** (j - i) * moment
        total += (k - n * x) * p[k] * (n + 1) * inner
    return total / (X * factorial(j))


# --- remainder and its four-way split ----------------------------------------


def remainder(g, n, x, coeffs=None):
    """``R_n g(x) = (D_n g)'(x) - A_1 g'(x) - A_2(x) g''(x)``.

    Uses the endpoint-safe derivative representation, so x may be anywhere in
    [0, 1].  ``coeffs`` may carry precomputed Durrmeyer coefficients.
    """
    if g.d2 is None:
        raise DomainError(f"{g.id}: the remainder needs g' and g''")
    coeffs = coeffs or coefficients_for(g, n)
    x = np.asarray(x, dtype=float)
    deriv = durrmeyer_derivative_b(coeffs, n, x)
    return deriv - a_coefficient_closed(1, n, x) * g.d1(x) - a_coefficient_closed(2, n, x) * g.d2(x)


def _integer_part(n, x):
    nx = n * np.asarray(x, dtype=float)
    r = np.round(nx)
    return np.where(np.abs(nx - r) < 1e-12, r, np.floor(nx)).astype(int)


def _kernel(g, x, t, kind):
    d = t[None, :] - x[:, None]
    gx, g1, g2 = g.f(x)[:, None], g.d1(x)[:, None], g.d2(x)[:, None]
    if kind == "taylor":
        # int_x^t (t - v)^2 g'''(v) dv, i.e. twice the second-order Taylor remainder
        return 2.0 * (g.f(t)[None, :] - gx - d * g1 - 0.5 * d * d * g2)
    if kind == "bound":
        return d * d * (g.d2(t)[None, :] - g2)
    raise DomainError(f"unknown kernel {kind!r}")


def _t_nodes(breakpoints, order):
    rule = gauss_legendre(order)
    a, b = np.asarray(breakpoints[:-1]), np.asarray(breakpoints[1:])
    keep = b > a
    a, h = a[keep], (b - a)[keep]
    t = (a[:, None] + h[:, None] * rule.nodes[None, :]).ravel()
    w = (h[:, None] * rule.weights[None, :]).ravel()
    return t, w


def b_components(g, n, x, split="complete", kernel="taylor", order=24):
    """The four partial sums ``B_1..B_4`` of the remainder at points ``x``.

    Every term ``(n+1)/(2X) (k - n x) p_{n,k}(x) int K(t) p_{n,k}(t) dt`` is
    routed by ``k <= [nx]`` versus ``k > [nx]`` and by ``t < k/n`` versus
    ``t > k/n``::

        B_1: k <= [nx], t < k/n        B_2: k <= [nx], t > k/n
        B_3: k >  [nx], t < k/n        B_4: k >  [nx], t > k/n

    With ``split="complete"`` (default) these four pieces cover every
    ``(k, t)`` pair, so they add up to ``R_n g(x)``.  ``split="literal"``
    instead restricts ``B_2`` to ``k/n < t < x`` and ``B_3`` to
    ``x < t < k/n``; those ranges leave part of each integral out, and the
    four values then do not reassemble the remainder.

    ``kernel="taylor"`` integrates the exact remainder
    ``K(t) = int_x^t (t-v)^2 g'''(v) dv``; ``kernel="bound"`` uses the
    majorant ``(t-x)^2 (g''(t) - g''(x))``.

    Returns an array of shape ``(4,) + x.shape``.
    """
    if g.d2 is None:
        raise DomainError(f"{g.id}: the B components need g' and g''")
    xa = np.asarray(x, dtype=float)
    flat = np.atleast_1d(xa).ravel()
    if np.any((flat <= 0.0) | (flat >= 1.0)):
        raise SingularRepresentationError("the B components divide by x(1-x); use interior points")
    if split == "complete":
        out = _b_complete(g, n, flat, kernel, order)
    elif split == "literal":
        out = np.stack([_b_literal(g, n, xi, kernel, order) for xi in flat], axis=1)
    else:
        raise DomainError(f"unknown split {split!r}")
    return out.reshape((4,) + xa.shape)


def _prefactor(n, x):
    k = np.arange(n + 1)[None, :]
    return (n + 1) / (2 * x * (1 - x))[:, None] * (k - n * x[:, None]) * basis_matrix(n, x).T


def _b_complete(g, n, x, kernel, order):
    t, w = _t_nodes(np.arange(n + 1) / n, order)
    P = basis_matrix(n, t)
    below = t[None, :] < (np.arange(n + 1) / n)[:, None]
    Kw = _kernel(g, x, t, kernel) * w[None, :]
    lower = Kw @ (P * below).T
    upper = Kw @ (P * ~below).T
    coef = _prefactor(n, x)
    low_k = np.arange(n + 1)[None, :] <= _integer_part(n, x)[:, None]
    return np.stack([
        np.sum(coef * lower * low_k, axis=1),
        np.sum(coef * upper * low_k, axis=1),
        np.sum(coef * lower * ~low_k, axis=1),
        np.sum(coef * upper * ~low_k, axis=1),
    ])


def _b_literal(g, n, x, kernel, order):
    grid = np.unique(np.concatenate([np.arange(n + 1) / n, [x]]))
    t, w = _t_nodes(grid, order)
    P = basis_matrix(n, t)
    nodes = (np.arange(n + 1) / n)[:, None]
    below = t[None, :] < nodes
    left = t[None, :] < x
    xs = np.array([x])
    Kw = (_kernel(g, xs, t, kernel) * w[None, :])[0]
    coef = _prefactor(n, xs)[0]
    m = int(_integer_part(n, xs)[0])
    k = np.arange(n + 1)
    low = k <= m
    parts = [
        (P * below) @ Kw,
        (P * (~below & left)) @ Kw,
        (P * (below & ~left)) @ Kw,
        (P * ~below) @ Kw,
    ]
    masks = [low, low, ~low, ~low]
    return np.array([np.sum(coef * part * mask) for part, mask in zip(parts, masks)])


def b_component_norms(g, n, order=8, panels=4, kernel="taylor"):
    """L1 norms over x of ``B_1..B_4`` and of their sum ``R_n g``.

    Each ``B_i`` jumps where ``nx`` crosses an integer, so x is integrated
    panel by panel on ``[j/n, (j+1)/n]``.  The computation is repeated with
    twice the panels, and the largest change is returned as ``gap``.
    """

    def once(p):
        edges = np.concatenate([np.linspace(j / n, (j + 1) / n, p + 1)[:-1] for j in range(n)] + [[1.0]])
        xs, ws = _t_nodes(edges, order)
        B = b_components(g, n, xs, kernel=kernel)
        values = np.abs(B) @ ws
        return np.append(values, np.abs(B.sum(axis=0)) @ ws)

    coarse, fine = once(panels), once(2 * panels)
    keys = ("B1", "B2", "B3", "B4", "R")
    return dict(zip(keys, map(float, fine))), float(np.max(np.abs(fine - coarse)))


# --- headline verifications --------------------------------------------------


def verify_detracting(f, n, rule=None, panels_per_segment=DEFAULT_PANELS, tol=DEFAULT_TOL, exact=False):
    """Compare ``V[D_n f]`` with ``V[f]`` and ``||D_n f||_BV`` with ``||f||_BV``.

    ``V[D_n f]`` always comes from the monotone-segment decomposition of the
    materialised polynomial.  The slack ``eps`` sums both variation error
    bounds and the effect of coefficient errors, ``2 n max|dF|``.
    """
    coeffs = coefficients_for(f, n, rule, panels_per_segment, tol, exact=exact)
    poly = coeffs.poly
    v_out = variation_bernstein_exact(poly)
    v_in = variation_of(f, tol)
    eps = v_in.error_bound + v_out.error_bound + 2 * n * coeffs.error
    return DetractingRecord(
        function_id=f.id,
        n=n,
        v_input=float(v_in.value),
        v_output=float(v_out.value),
        bv_input=bv_norm(v_in, f.f0),
        bv_output=bv_norm(v_out, float(poly.coeffs[0])),
        eps=float(eps),
    )


def derivative_l1_norms(g, tol=DEFAULT_TOL):
    """``(||g'||, ||g''||, ||g'''||)`` in L1(0, 1); registered values preferred."""
    if g.known_l1_norms is not None:
        return tuple(float(v) for v in g.known_l1_norms)
    if not g.is_c3:
        raise DomainError(f"{g.id}: three derivatives are required")
    return tuple(l1_norm(d, _panels(g), tol) for d in (g.d1, g.d2, g.d3))


def stein_ratio(g, tol=DEFAULT_TOL):
    """Empirical constant ``||g''|| / sqrt(||g'|| ||g'''||)``."""
    n1, n2, n3 = derivative_l1_norms(g, tol)
    denom = math.sqrt(n1 * n3)
    if denom == 0.0:
        raise UndefinedRatioError(f"{g.id}: ||g'|| * ||g'''|| vanishes")
    return n2 / denom


def verify_rate(g, n, rule=None, panels_per_segment=DEFAULT_PANELS, tol=DEFAULT_TOL):
    """Measure ``||(D_n g)' - g'||_1`` against the three-term bound.

    The derivative of ``D_n g`` is taken from its Bernstein coefficients, and
    the L1 norm splits panels at every sign change of the difference.
    """
    if not g.is_c3:
        raise DomainError(f"{g.id}: the rate bound needs g', g'', g'''")
    coeffs = coefficients_for(g, n, rule, panels_per_segment, tol)
    dpoly = coeffs.poly.derivative()
    lhs = l1_norm(lambda x: dpoly(x) - g.d1(x), _panels(g, panels_per_segment), tol)
    n1, n2, n3 = derivative_l1_norms(g, tol)
    try:
        C = stein_ratio(g, tol)
        theorem_rhs = 2 * (C + 1) / math.sqrt(n) * (n1 + n3)
    except UndefinedRatioError:
        C = theorem_rhs = None
    return RateRecord(
        function_id=g.id,
        n=n,
        lhs=lhs,
        term1=2 / (n + 2) * n1,
        term2=2 / (n + 2) * n2,
        term3=2 / math.sqrt(n) * n3,
        stein=C,
        theorem_rhs=theorem_rhs,
    )


def verify_remainder(g, n, x=None, with_norms=True, with_literal=False):
    """Remainder, its four-way split and (optionally) the L1 norms of the parts."""
    x = np.arange(1, 20) / 20 if x is None else np.asarray(x, dtype=float)
    coeffs = coefficients_for(g, n)
    rem = remainder(g, n, x, coeffs)
    comps = b_components(g, n, x)
    norms, gap = b_component_norms(g, n) if with_norms else ({}, 0.0)
    literal_gap = None
    if with_literal:
        lit = b_components(g, n, x, split="literal")
        literal_gap = float(np.max(np.abs(lit.sum(axis=0) - rem)))
    return RemainderRecord(
        function_id=g.id,
        n=n,
        x=x,
        remainder=np.asarray(rem),
        components=comps,
        norms=norms,
        norm_gap=gap,
        third_derivative_l1=derivative_l1_norms(g)[2],
        literal_gap=literal_gap,
    )


def decay_slope(ns, values):
    """Least-squares slope of ``log(values)`` against ``log(ns)``."""
    ns = np.asarray(ns, dtype=float)
    values = np.asarray(values, dtype=float)
    if ns.size < 2 or np.any(values <= 0):
        return math.nan
    return float(np.polyfit(np.log(ns), np.log(values), 1)[0])
