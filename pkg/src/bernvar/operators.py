"""Bernstein and Bernstein-Durrmeyer operators in coefficient form.

Both operators map a function to a polynomial of degree n written in the
Bernstein basis, so their images are materialised as :class:`BernsteinPoly`
objects.  The Bernstein operator samples ``f(k/n)``; the Durrmeyer operator
uses the averaged coefficients ``F_k = (n+1) int_0^1 f(t) p_{n,k}(t) dt``.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import ceil, comb

import numpy as np

from .basis import basis_eval_all, basis_matrix, basis_product_integral, is_exact
from .errors import DomainError, NonFiniteValueError, SingularRepresentationError
from .quadrature import (
    DEFAULT_ORDER,
    DEFAULT_TOL,
    MAX_PANELS,
    Panelization,
    gauss_legendre,
    integrate,
    integrate_converged,
)

__all__ = [
    "BernsteinPoly",
    "DurrmeyerCoefficients",
    "bernstein_apply",
    "durrmeyer_coefficients",
    "durrmeyer_apply",
    "durrmeyer_apply_exact",
    "durrmeyer_derivative_a",
    "durrmeyer_derivative_b",
]

# Rounding floor for quadrature-built coefficients, relative to max |F|.
_COEFF_FLOOR = 1e-13
# Bulk evaluation is chunked so the basis matrix stays small.
_EVAL_CHUNK = 4096


def split_coefficients(c, s=0.5):
    """de Casteljau split of a float coefficient vector at parameter ``s``."""
    b = np.asarray(c, dtype=float)
    n = b.size - 1
    left = np.empty(n + 1)
    right = np.empty(n + 1)
    left[0], right[n] = b[0], b[n]
    for j in range(1, n + 1):
        b = (1.0 - s) * b[:-1] + s * b[1:]
        left[j] = b[0]
        right[n - j] = b[-1]
    return left, right


class BernsteinPoly:
    """Polynomial ``sum_k c_k p_{n,k}(x)`` of degree ``n`` on [0, 1].

    ``kind`` is ``"exact"`` (coefficients stored as a tuple of
    :class:`~fractions.Fraction`) or ``"floating"`` (a read-only float
    array).  Instances are immutable.
    """

    __slots__ = ("_coeffs", "_kind")

    def __init__(self, coeffs, kind=None):
        if kind is None:
            kind = "exact" if all(is_exact(c) for c in coeffs) else "floating"
        if kind == "exact":
            c = tuple(Fraction(v) for v in coeffs)
        elif kind == "floating":
            c = np.array(coeffs, dtype=float)
            c.setflags(write=False)
        else:
            raise DomainError(f"unknown coefficient kind {kind!r}")
        if len(c) == 0:
            raise DomainError("a Bernstein polynomial needs at least one coefficient")
        self._coeffs = c
        self._kind = kind

    @classmethod
    def exact(cls, coeffs):
        return cls(coeffs, "exact")

    @classmethod
    def floating(cls, coeffs):
        return cls(coeffs, "floating")

    @property
    def coeffs(self):
        return self._coeffs

    @property
    def kind(self):
        return self._kind

    @property
    def degree(self):
        return len(self._coeffs) - 1

    def __repr__(self):
        vals = ", ".join(str(c) for c in self._coeffs) if self._kind == "exact" else np.array2string(self._coeffs, precision=6)
        return f"BernsteinPoly(degree={self.degree}, kind={self._kind!r}, coeffs=[{vals}])"

    def __eq__(self, other):
        if not isinstance(other, BernsteinPoly) or other.degree != self.degree:
            return NotImplemented
        return all(a == b for a, b in zip(self._coeffs, other._coeffs))

    __hash__ = None

    def __call__(self, x):
        if self._kind == "exact" and is_exact(x):
            x = Fraction(x)
            if not 0 <= x <= 1:
                raise DomainError(f"x={x} lies outside [0, 1]")
            return self._de_casteljau_exact(x)
        c = np.asarray(self._coeffs, dtype=float)
        xa = np.asarray(x, dtype=float)
        flat = np.atleast_1d(xa).ravel()
        if np.any((flat < 0.0) | (flat > 1.0)):
            raise DomainError("evaluation points must lie in [0, 1]")
        out = np.empty(flat.shape)
        for start in range(0, flat.size, _EVAL_CHUNK):
            chunk = flat[start:start + _EVAL_CHUNK]
            out[start:start + _EVAL_CHUNK] = c @ basis_matrix(self.degree, chunk)
        return out.reshape(xa.shape)[()] if xa.ndim else float(out[0])

    def _de_casteljau_exact(self, x):
        b = list(self._coeffs)
        for j in range(1, len(b)):
            b = [(1 - x) * b[i] + x * b[i + 1] for i in range(len(b) - 1)]
        return b[0]

    def derivative(self):
        """Degree ``n-1`` polynomial with coefficients ``n (c_{k+1} - c_k)``.

        The derivative of a constant is the degree-0 zero polynomial.
        """
        n = self.degree
        c = self._coeffs
        if n == 0:
            return BernsteinPoly([0 * c[0]], self._kind)
        if self._kind == "exact":
            return BernsteinPoly.exact([n * (c[k + 1] - c[k]) for k in range(n)])
        return BernsteinPoly.floating(n * np.diff(c))

    def elevate(self, degree):
        """Same polynomial rewritten in the Bernstein basis of a higher degree."""
        n = self.degree
        if degree < n:
            raise DomainError(f"cannot elevate degree {n} down to {degree}")
        c = list(self._coeffs) if self._kind == "exact" else self._coeffs
        r = degree - n
        out = []
        for k in range(degree + 1):
            lo, hi = max(0, k - r), min(n, k)
            if self._kind == "exact":
                s = sum((Fraction(comb(n, j) * comb(r, k - j), comb(degree, k)) * c[j] for j in range(lo, hi + 1)), Fraction(0))
            else:
                s = sum(comb(n, j) * comb(r, k - j) / comb(degree, k) * c[j] for j in range(lo, hi + 1))
            out.append(s)
        return BernsteinPoly(out, self._kind)

    def split(self, s=0.5):
        """de Casteljau subdivision at ``s``: polynomials on [0, s] and [s, 1],
        each reparametrised to [0, 1]."""
        if self._kind == "floating":
            left, right = split_coefficients(self._coeffs, float(s))
            return BernsteinPoly.floating(left), BernsteinPoly.floating(right)
        b = list(self._coeffs)
        left, right = [b[0]], [b[-1]]
        for _ in range(self.degree):
            b = [(1 - s) * b[i] + s * b[i + 1] for i in range(len(b) - 1)]
            left.append(b[0])
            right.append(b[-1])
        return BernsteinPoly.exact(left), BernsteinPoly.exact(right[::-1])

    def to_floating(self):
        return self if self._kind == "floating" else BernsteinPoly.floating([float(c) for c in self._coeffs])

    def _binary(self, other, op):
        if not isinstance(other, BernsteinPoly):
            return NotImplemented
        deg = max(self.degree, other.degree)
        a, b = self.elevate(deg), other.elevate(deg)
        kind = "exact" if a.kind == b.kind == "exact" else "floating"
        if kind == "floating":
            a, b = a.to_floating(), b.to_floating()
            return BernsteinPoly(op(a.coeffs, b.coeffs), kind)
        return BernsteinPoly([op(x, y) for x, y in zip(a.coeffs, b.coeffs)], kind)

    def __add__(self, other):
        return self._binary(other, lambda u, v: u + v)

    def __sub__(self, other):
        return self._binary(other, lambda u, v: u - v)

    def __mul__(self, scalar):
        if isinstance(scalar, BernsteinPoly):
            return NotImplemented
        if self._kind == "exact" and is_exact(scalar):
            return BernsteinPoly.exact([scalar * c for c in self._coeffs])
        return BernsteinPoly.floating(float(scalar) * np.asarray(self._coeffs, dtype=float))

    __rmul__ = __mul__


@dataclass(frozen=True)
class DurrmeyerCoefficients:
    """The vector ``F_{0,n}, ..., F_{n,n}`` and how it was obtained.

    ``error`` bounds the absolute error of each entry (zero for the exact
    path); it combines the panel-doubling gap with a rounding floor.
    """

    n: int
    F: object
    provenance: str
    error: float = 0.0

    @property
    def poly(self):
        return BernsteinPoly(self.F, "exact" if self.provenance == "exact" else "floating")


def bernstein_apply(f, n, exact=False):
    """Bernstein operator: the polynomial with coefficients ``f(k/n)``.

    With ``exact=True`` the nodes are passed as fractions, so a rational
    ``f`` yields an exact polynomial.
    """
    if int(n) != n or n < 1:
        raise DomainError(f"degree must be a positive integer, got {n!r}")
    if exact:
        nodes = [Fraction(k, n) for k in range(n + 1)]
        return BernsteinPoly.exact([f(t) for t in nodes])
    nodes = np.arange(n + 1) / n
    values = np.asarray(f(nodes), dtype=float)
    values = np.broadcast_to(values, nodes.shape)
    bad = ~np.isfinite(values)
    if bad.any():
        node = float(nodes[np.argmax(bad)])
        raise NonFiniteValueError(f"f is not finite at node {node!r}", node)
    return BernsteinPoly.floating(values)


def durrmeyer_coefficients(f, n, rule=None, panels=None, tol=DEFAULT_TOL, degree=None, max_panels=MAX_PANELS):
    """``F_k = (n+1) int_0^1 f(t) p_{n,k}(t) dt`` for k = 0..n by quadrature.

    If ``f`` is known to be a polynomial of degree ``degree`` a single
    Gauss-Legendre panel per segment of order ``ceil((n+degree)/2) + 1`` is
    used, which is exact up to rounding.  Otherwise the composite rule is
    refined by panel doubling until successive coefficient vectors agree to
    ``tol``.  Breakpoints of ``f`` must be passed through ``panels``.
    """
    if int(n) != n or n < 0:
        raise DomainError(f"degree must be a non-negative integer, got {n!r}")
    n = int(n)
    panels = panels or Panelization()

    def kernel(t):
        return (n + 1) * basis_matrix(n, t) * np.asarray(f(t), dtype=float)

    if degree is not None:
        rule = gauss_legendre(ceil((n + degree) / 2) + 1)
        panels = Panelization(panels.breakpoints, 1)
        F = integrate(kernel, rule, panels)
        gap = 0.0
        label = f"quadrature(order={rule.order}, panels=1)"
    else:
        rule = rule or gauss_legendre(DEFAULT_ORDER)
        F, gap = integrate_converged(kernel, rule, panels, tol, max_panels)
        label = f"quadrature(order={rule.order}, panels>={2 * panels.panels_per_segment})"
    F = np.atleast_1d(np.asarray(F, dtype=float))
    F.setflags(write=False)
    err = max(gap, _COEFF_FLOOR * max(1.0, float(np.max(np.abs(F)))))
    return DurrmeyerCoefficients(n, F, label, err)


def durrmeyer_apply(f, n, rule=None, panels=None, tol=DEFAULT_TOL, degree=None):
    """Bernstein-Durrmeyer image ``D_n f`` as a floating :class:`BernsteinPoly`."""
    return durrmeyer_coefficients(f, n, rule, panels, tol, degree).poly


def durrmeyer_coefficients_exact(p, n):
    """Exact coefficients of ``D_n p`` for a polynomial given in Bernstein form."""
    if p.kind != "exact":
        raise DomainError("durrmeyer_apply_exact needs exact coefficients")
    m = p.degree
    F = tuple(
        (n + 1) * sum((c * basis_product_integral(n, k, m, j) for j, c in enumerate(p.coeffs)), Fraction(0))
        for k in range(n + 1)
    )
    return DurrmeyerCoefficients(n, F, "exact", 0.0)


def durrmeyer_apply_exact(p, n):
    """``D_n p`` in rational arithmetic via the Beta product integrals."""
    return durrmeyer_coefficients_exact(p, n).poly


def _resolve(f, n, rule, panels, tol, degree):
    if isinstance(f, DurrmeyerCoefficients):
        if f.n != n:
            raise DomainError(f"coefficients have degree {f.n}, expected {n}")
        return f
    if isinstance(f, BernsteinPoly):
        if f.kind == "exact":
            return durrmeyer_coefficients_exact(f, n)
        return durrmeyer_coefficients(f, n, rule, panels, tol, degree=f.degree)
    return durrmeyer_coefficients(f, n, rule, panels, tol, degree)


def durrmeyer_derivative_a(f, n, x, rule=None, panels=None, tol=DEFAULT_TOL, degree=None):
    """``(D_n f)'(x)`` from ``(1/X) sum_k (k - n x) p_{n,k}(x) F_k`` with ``X = x(1-x)``.

    ``f`` may be a callable, a :class:`BernsteinPoly` (taken as the input
    function) or precomputed :class:`DurrmeyerCoefficients`.  Only valid at
    interior points.
    """
    coeffs = _resolve(f, n, rule, panels, tol, degree)
    if is_exact(x) and coeffs.provenance == "exact":
        x = Fraction(x)
        if not 0 < x < 1:
            raise SingularRepresentationError(
                f"representation (a) divides by x(1-x); use durrmeyer_derivative_b at x={x}"
            )
        X = x * (1 - x)
        p = basis_eval_all(n, x)
        return sum(((k - n * x) * p[k] * F for k, F in enumerate(coeffs.F)), Fraction(0)) / X
    xa = np.asarray(x, dtype=float)
    flat = np.atleast_1d(xa).ravel()
    if np.any((flat <= 0.0) | (flat >= 1.0)):
        raise SingularRepresentationError(
            "representation (a) divides by x(1-x) and is undefined at the endpoints; "
            "use durrmeyer_derivative_b there"
        )
    F = np.asarray(coeffs.F, dtype=float)
    k = np.arange(n + 1, dtype=float)[:, None]
    weights = (k - n * flat[None, :]) * basis_matrix(n, flat)
    out = (F @ weights) / (flat * (1.0 - flat))
    return out.reshape(xa.shape)[()] if xa.ndim else float(out[0])


def durrmeyer_derivative_b(f, n, x, rule=None, panels=None, tol=DEFAULT_TOL, degree=None):
    """``(D_n f)'(x) = n sum_{k<n} p_{n-1,k}(x) (F_{k+1} - F_k)``; valid on all of [0, 1]."""
    coeffs = _resolve(f, n, rule, panels, tol, degree)
    return coeffs.poly.derivative()(x)
