"""Gauss-Legendre quadrature on [0, 1] with breakpoint-aware panels."""

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import ConvergenceError, DomainError, IntegrationError

__all__ = [
    "QuadratureRule",
    "Panelization",
    "gauss_legendre",
    "composite_nodes",
    "integrate",
    "integrate_converged",
    "sign_changes",
    "l1_norm",
    "DEFAULT_ORDER",
    "DEFAULT_PANELS",
    "DEFAULT_TOL",
]

DEFAULT_ORDER = 32
DEFAULT_PANELS = 64
DEFAULT_TOL = 1e-10
MAX_PANELS = 4096


@dataclass(frozen=True, eq=False)
class QuadratureRule:
    """Nodes and weights on [0, 1] that integrate polynomials of degree
    ``exactness`` exactly."""

    nodes: np.ndarray
    weights: np.ndarray
    exactness: int

    @property
    def order(self):
        return len(self.nodes)


@dataclass(frozen=True)
class Panelization:
    """Split [0, 1] at ``breakpoints`` and cut every segment into
    ``panels_per_segment`` equal panels.

    ``breakpoints`` may be given without the endpoints; 0 and 1 are always
    added.
    """

    breakpoints: tuple = (0.0, 1.0)
    panels_per_segment: int = DEFAULT_PANELS

    def __post_init__(self):
        pts = sorted({0.0, 1.0, *(float(b) for b in self.breakpoints)})
        if pts[0] < 0.0 or pts[-1] > 1.0:
            raise DomainError(f"breakpoints must lie in [0, 1], got {self.breakpoints}")
        if self.panels_per_segment < 1:
            raise DomainError("panels_per_segment must be at least 1")
        object.__setattr__(self, "breakpoints", tuple(pts))

    def refined(self):
        return Panelization(self.breakpoints, 2 * self.panels_per_segment)

    def with_breakpoints(self, extra):
        return Panelization(self.breakpoints + tuple(extra), self.panels_per_segment)

    def edges(self):
        segs = [
            np.linspace(a, b, self.panels_per_segment + 1)[:-1]
            for a, b in zip(self.breakpoints[:-1], self.breakpoints[1:])
        ]
        return np.concatenate(segs + [np.array([1.0])])


@lru_cache(maxsize=None)
def gauss_legendre(order):
    """Gauss-Legendre rule with ``order`` nodes mapped to [0, 1].

    Exact for polynomials of degree ``2 * order - 1``.
    """
    if int(order) != order or order < 1:
        raise DomainError(f"order must be a positive integer, got {order!r}")
    x, w = np.polynomial.legendre.leggauss(int(order))
    nodes = 0.5 * (x + 1.0)
    weights = 0.5 * w
    nodes.setflags(write=False)
    weights.setflags(write=False)
    return QuadratureRule(nodes, weights, 2 * int(order) - 1)


@lru_cache(maxsize=256)
def _composite(rule, panels):
    edges = panels.edges()
    a, b = edges[:-1], edges[1:]
    h = b - a
    keep = h > 0
    a, h = a[keep], h[keep]
    t = (a[:, None] + h[:, None] * rule.nodes[None, :]).ravel()
    w = (h[:, None] * rule.weights[None, :]).ravel()
    t.setflags(write=False)
    w.setflags(write=False)
    return t, w


def composite_nodes(rule=None, panels=None):
    """Flattened nodes and weights of ``rule`` applied on every panel."""
    rule = rule or gauss_legendre(DEFAULT_ORDER)
    panels = panels or Panelization()
    return _composite(rule, panels)


def _sample(f, t):
    values = np.asarray(f(t), dtype=float)
    values = np.broadcast_to(values, values.shape[:-1] + t.shape) if values.ndim else np.full(t.shape, float(values))
    bad = ~np.isfinite(values)
    if bad.any():
        node = float(t[np.nonzero(bad)[-1][0]])
        raise IntegrationError(f"integrand is not finite at t={node!r}", node)
    return values


def integrate(f, rule=None, panels=None):
    """Composite quadrature of a vectorised ``f`` over [0, 1].

    ``f`` receives a 1-D array of nodes and may return either an array of the
    same length or a stack of shape ``(..., len(nodes))``; the result then has
    the leading shape.  Gauss nodes are interior to every panel, so ``f`` is
    never sampled at a breakpoint.
    """
    t, w = composite_nodes(rule, panels)
    values = _sample(f, t)
    result = values @ w
    return float(result) if np.ndim(result) == 0 else result


def integrate_converged(f, rule=None, panels=None, tol=DEFAULT_TOL, max_panels=MAX_PANELS):
    """Double the panel count until two successive estimates agree to ``tol``.

    Returns ``(value, gap)`` where ``gap`` is the largest absolute difference
    between the last two estimates.
    """
    panels = panels or Panelization()
    prev = integrate(f, rule, panels)
    while True:
        panels = panels.refined()
        cur = integrate(f, rule, panels)
        gap = float(np.max(np.abs(np.asarray(cur) - np.asarray(prev))))
        if gap < tol:
            return cur, gap
        if panels.panels_per_segment >= max_panels:
            raise ConvergenceError(
                f"no convergence at {panels.panels_per_segment} panels per segment (gap {gap:.3e})",
                best=cur,
                gap=gap,
            )
        prev = cur


def sign_changes(f, breakpoints=(0.0, 1.0), scan_points=1024, xtol=1e-13):
    """Locate sign changes of ``f`` inside each segment between breakpoints.

    Each segment is scanned on ``scan_points`` interior points; every bracket
    with a strict sign change is bisected to width ``xtol``.  Scan points
    where ``f`` is exactly zero are reported as they are.
    """
    pts = sorted({0.0, 1.0, *(float(b) for b in breakpoints)})
    roots = []
    for a, b in zip(pts[:-1], pts[1:]):
        grid = np.linspace(a, b, scan_points + 2)[1:-1]
        v = np.asarray(f(grid), dtype=float)
        sgn = np.sign(v)
        roots.extend(grid[sgn == 0.0].tolist())
        idx = np.nonzero(sgn[:-1] * sgn[1:] < 0)[0]
        if idx.size == 0:
            continue
        lo, hi = grid[idx].copy(), grid[idx + 1].copy()
        slo = sgn[idx]
        for _ in range(200):
            if np.max(hi - lo) <= xtol:
                break
            mid = 0.5 * (lo + hi)
            sm = np.sign(np.asarray(f(mid), dtype=float))
            left = sm == slo
            lo = np.where(left, mid, lo)
            hi = np.where(left, hi, mid)
        roots.extend((0.5 * (lo + hi)).tolist())
    return sorted(roots)


def l1_norm(f, panels=None, tol=DEFAULT_TOL, rule=None, scan_points=1024, max_panels=MAX_PANELS):
    """``int_0^1 |f(t)| dt`` with panels split at the sign changes of ``f``.

    Splitting at the roots keeps every panel's integrand smooth, so the Gauss
    rule stays spectrally accurate.  Raises :class:`ConvergenceError` (with
    the best estimate attached) if doubling the panels does not settle below
    ``tol``.
    """
    panels = panels or Panelization()
    roots = sign_changes(f, panels.breakpoints, scan_points=scan_points)
    if roots:
        panels = panels.with_breakpoints(roots)
    value, _ = integrate_converged(lambda t: np.abs(f(t)), rule, panels, tol, max_panels)
    return value
