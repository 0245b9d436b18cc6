"""Bernstein basis functions on [0, 1], their moments and integrals.

Every function here has two scalar paths.  Passing an ``int`` or a
:class:`fractions.Fraction` selects exact rational arithmetic; passing a
``float`` or a numpy array selects floating point.  The exact path exists so
that polynomial identities can be checked with ``==`` rather than with a
tolerance.
"""

from fractions import Fraction
from math import comb, lgamma

import numpy as np

from .errors import DomainError, UnsupportedOrderError

__all__ = [
    "is_exact",
    "basis_eval",
    "basis_eval_all",
    "basis_matrix",
    "basis_derivative",
    "basis_integral",
    "basis_product_integral",
    "moment_table",
    "sum_moment",
    "sum_moment_direct",
    "central_moment",
    "central_moment_direct",
]

# Above this degree float binomials are formed through log-gamma.
_LOGGAMMA_DEGREE = 1000


def is_exact(x):
    """True when ``x`` should be handled by the rational path."""
    return isinstance(x, (int, Fraction)) and not isinstance(x, bool)


def _check_degree(n):
    if int(n) != n or n < 0:
        raise DomainError(f"degree must be a non-negative integer, got {n!r}")


def _check_point(x):
    if is_exact(x):
        if not 0 <= x <= 1:
            raise DomainError(f"x={x} lies outside [0, 1]")
        return x
    arr = np.asarray(x, dtype=float)
    if not np.all((arr >= 0.0) & (arr <= 1.0)):
        bad = arr[~((arr >= 0.0) & (arr <= 1.0))].ravel()[0]
        raise DomainError(f"x={bad} lies outside [0, 1]")
    return arr


def basis_eval_all(n, x):
    """Values of ``p_{n,0}(x), ..., p_{n,n}(x)``.

    Uses the triangular recurrence
    ``p_{j,k} = (1 - x) p_{j-1,k} + x p_{j-1,k-1}``, so every entry is a
    convex combination of the previous row and no binomial is formed.

    For an array ``x`` the result has shape ``(n + 1,) + x.shape``.  In the
    exact path a list of rationals is returned.
    """
    _check_degree(n)
    x = _check_point(x)
    if is_exact(x):
        x = Fraction(x)
        row = [Fraction(1)]
        for j in range(1, n + 1):
            nxt = [Fraction(0)] * (j + 1)
            for k in range(j):
                nxt[k] += (1 - x) * row[k]
                nxt[k + 1] += x * row[k]
            row = nxt
        return row
    row = np.ones((1,) + x.shape)
    for j in range(1, n + 1):
        nxt = np.empty((j + 1,) + x.shape)
        nxt[:j] = (1.0 - x) * row
        nxt[j] = 0.0
        nxt[1:] += x * row
        row = nxt
    return row


def basis_matrix(n, t):
    """Dense matrix ``B[k, i] = p_{n,k}(t_i)`` for a 1-D array of nodes.

    This is the workhorse behind quadrature and bulk evaluation.  It uses the
    product form ``C(n,k) t^k (1-t)^(n-k)``, which is accurate to a few ulp
    per entry, and switches to log-gamma binomials above degree 1000 so that
    nothing overflows.
    """
    _check_degree(n)
    t = np.atleast_1d(np.asarray(t, dtype=float))
    k = np.arange(n + 1)[:, None]
    if n <= _LOGGAMMA_DEGREE:
        binom = np.array([float(comb(n, j)) for j in range(n + 1)])[:, None]
        return binom * t[None, :] ** k * (1.0 - t[None, :]) ** (n - k)
    logc = np.array([lgamma(n + 1) - lgamma(j + 1) - lgamma(n - j + 1) for j in range(n + 1)])
    with np.errstate(divide="ignore", invalid="ignore"):
        logp = logc[:, None] + k * np.log(t)[None, :] + (n - k) * np.log1p(-t)[None, :]
        out = np.exp(logp)
    # 0 * log(0) terms at the endpoints
    out[:, t == 0.0] = 0.0
    out[0, t == 0.0] = 1.0
    out[:, t == 1.0] = 0.0
    out[n, t == 1.0] = 1.0
    return out


def basis_eval(n, k, x):
    """Bernstein basis function ``p_{n,k}(x) = C(n,k) x^k (1-x)^(n-k)``.

    Indices outside ``0 <= k <= n`` give the zero function, which lets the
    derivative identity ``p'_{n,k} = n (p_{n-1,k-1} - p_{n-1,k})`` run over
    the boundary indices without special cases.

    Raises
    ------
    DomainError
        If ``x`` lies outside [0, 1] or ``n`` is not a non-negative integer.
    """
    _check_degree(n)
    x = _check_point(x)
    if is_exact(x):
        if k < 0 or k > n:
            return Fraction(0)
        x = Fraction(x)
        return comb(n, k) * x**k * (1 - x) ** (n - k)
    if k < 0 or k > n:
        return np.zeros(x.shape)[()]
    if n > _LOGGAMMA_DEGREE:
        flat = np.atleast_1d(x).ravel()
        return basis_matrix(n, flat)[k].reshape(x.shape)[()]
    return basis_eval_all(n, x)[k][()]


def basis_derivative(n, k, x):
    """``d/dx p_{n,k}(x)`` through ``n (p_{n-1,k-1}(x) - p_{n-1,k}(x))``."""
    _check_degree(n)
    if n == 0:
        x = _check_point(x)
        return Fraction(0) if is_exact(x) else np.zeros(np.shape(x))[()]
    return n * (basis_eval(n - 1, k - 1, x) - basis_eval(n - 1, k, x))


def _check_index(n, k):
    _check_degree(n)
    if int(k) != k or not 0 <= k <= n:
        raise DomainError(f"index k={k} outside 0..{n}")


def basis_integral(n, k, exact=True):
    """``int_0^1 p_{n,k}(t) dt``, which equals ``1/(n+1)`` for every k."""
    _check_index(n, k)
    value = Fraction(1, n + 1)
    return value if exact else float(value)


def basis_product_integral(n, k, m, j, exact=True):
    """``int_0^1 p_{n,k}(t) p_{m,j}(t) dt`` from the Beta integral.

    The product is ``C(n,k) C(m,j) t^(k+j) (1-t)^(n+m-k-j)`` and
    ``int t^a (1-t)^b = 1 / ((a+b+1) C(a+b, a))``.
    """
    _check_index(n, k)
    _check_index(m, j)
    value = Fraction(comb(n, k) * comb(m, j), comb(n + m, k + j) * (n + m + 1))
    return value if exact else float(value)


def moment_table(n):
    """Closed forms of ``T_{r,n}(x) = sum_k k^r p_{n,k}(x)`` for r = 0..4.

    Returns a dict mapping r to the coefficient tuple of a polynomial in x,
    lowest power first.
    """
    _check_degree(n)
    f1 = n
    f2 = n * (n - 1)
    f3 = f2 * (n - 2)
    f4 = f3 * (n - 3)
    return {
        0: (1,),
        1: (0, f1),
        2: (0, f1, f2),
        3: (0, f1, 3 * f2, f3),
        4: (0, f1, 7 * f2, 6 * f3, f4),
    }


def _horner(coeffs, x):
    acc = 0
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def sum_moment(r, n, x):
    """Sum moment ``T_{r,n}(x)`` from its closed form (orders 0 through 4)."""
    if r not in (0, 1, 2, 3, 4):
        raise UnsupportedOrderError(
            f"no closed form for order r={r}; use sum_moment_direct instead"
        )
    x = _check_point(x)
    value = _horner(moment_table(n)[r], x)
    if is_exact(x):
        return Fraction(value)
    return value * np.ones(np.shape(x)) if np.ndim(x) else float(value)


def sum_moment_direct(r, n, x):
    """``sum_k k^r p_{n,k}(x)`` by explicit summation; any order r >= 0."""
    values = basis_eval_all(n, x)
    if is_exact(x):
        return sum((k**r * v for k, v in enumerate(values)), Fraction(0))
    weights = np.arange(n + 1, dtype=float) ** r
    return np.tensordot(weights, values, axes=1)[()]


def central_moment(r, n, x):
    """``sum_k (k - n x)^r p_{n,k}(x)`` in closed form for r = 1..4.

    With ``X = x (1 - x)`` the values are ``0``, ``nX``, ``nX (1 - 2x)`` and
    ``3 (nX)^2 + (1 - 6X) nX``.
    """
    if r not in (1, 2, 3, 4):
        raise UnsupportedOrderError(
            f"no closed form for central order r={r}; use central_moment_direct instead"
        )
    x = _check_point(x)
    if is_exact(x):
        x = Fraction(x)
    X = x * (1 - x)
    nX = n * X
    if r == 1:
        value = 0 * x
    elif r == 2:
        value = nX
    elif r == 3:
        value = nX * (1 - 2 * x)
    else:
        value = 3 * nX**2 + (1 - 6 * X) * nX
    if is_exact(x):
        return Fraction(value)
    return value[()] if isinstance(value, np.ndarray) else float(value)


def central_moment_direct(r, n, x):
    """``sum_k (k - n x)^r p_{n,k}(x)`` by explicit summation."""
    values = basis_eval_all(n, x)
    if is_exact(x):
        x = Fraction(x)
        return sum(((k - n * x) ** r * v for k, v in enumerate(values)), Fraction(0))
    x = np.asarray(x, dtype=float)
    k = np.arange(n + 1, dtype=float).reshape((n + 1,) + (1,) * x.ndim)
    return np.sum((k - n * x) ** r * values, axis=0)[()]


