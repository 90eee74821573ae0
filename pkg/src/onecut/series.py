"""Polynomial and truncated power-series arithmetic over mpmath numbers.

Coefficient lists are ascending: ``coeffs[k]`` multiplies ``x**k``.
These helpers back the equilibrium-measure construction (Chebyshev
expansion of the field derivative) and the endpoint Laurent data.
"""

from __future__ import annotations

from mpmath import mp

from .errors import SeriesError


def poly_eval(coeffs, x):
    """Evaluate an ascending-coefficient polynomial by Horner's scheme."""
    acc = mp.mpf(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def poly_derivative(coeffs):
    return [k * c for k, c in enumerate(coeffs)][1:]


def poly_taylor_shift(coeffs, x0):
    """Coefficients of p(x0 + u) in powers of u (same length as input)."""
    a = list(coeffs)
    n = len(a)
    for i in range(n - 1):
        for j in range(n - 2, i - 1, -1):
            a[j] = a[j] + x0 * a[j + 1]
    return a


def poly_compose_linear(coeffs, alpha, beta):
    """Coefficients of p(alpha*x + beta)."""
    out: list = []
    for c in reversed(coeffs):
        new = [mp.mpf(0)] * (len(out) + 1)
        for k, r in enumerate(out):
            new[k] += beta * r
            new[k + 1] += alpha * r
        out = new if out else [mp.mpf(0)]
        out[0] += c
    return out if out else [mp.mpf(0)]


def series_mul(a, b, nterms):
    c = [mp.mpf(0)] * nterms
    for i, ai in enumerate(a[:nterms]):
        if ai == 0:
            continue
        for j, bj in enumerate(b[: nterms - i]):
            c[i + j] += ai * bj
    return c


def series_div(a, b, nterms):
    """Truncated quotient a(u)/b(u); requires b[0] != 0."""
    if not b or b[0] == 0:
        raise SeriesError("series division by a series with vanishing leading coefficient")
    q = [mp.mpf(0)] * nterms
    for k in range(nterms):
        acc = a[k] if k < len(a) else mp.mpf(0)
        for i in range(1, k + 1):
            if i < len(b):
                acc -= b[i] * q[k - i]
        q[k] = acc / b[0]
    return q


def sqrt_linear_series(c0, c1, nterms):
    """Taylor coefficients of sqrt(c0 + c1*u) about u = 0, c0 > 0."""
    if c0 <= 0:
        raise SeriesError("sqrt series needs a positive constant term")
    root = mp.sqrt(c0)
    ratio = c1 / c0
    out = [root]
    term = root
    for k in range(1, nterms):
        # binomial(1/2, k) built by recurrence
        term = term * (mp.mpf(3) / 2 / k - 1) * ratio
        out.append(term)
    return out


def reciprocal_linear_series(c0, c1, nterms):
    """Taylor coefficients of 1/(c0 + c1*u) about u = 0, c0 != 0."""
    if c0 == 0:
        raise SeriesError("reciprocal series needs a nonzero constant term")
    out = []
    term = 1 / mp.mpf(c0)
    ratio = -c1 / c0
    for _ in range(nterms):
        out.append(term)
        term = term * ratio
    return out


def chebyshev_u_polynomials(nmax):
    """Monomial coefficient lists of U_0 .. U_{nmax} (second kind)."""
    polys = [[mp.mpf(1)]]
    if nmax >= 1:
        polys.append([mp.mpf(0), mp.mpf(2)])
    for _ in range(2, nmax + 1):
        prev, prev2 = polys[-1], polys[-2]
        new = [mp.mpf(0)] + [2 * c for c in prev]
        for k, c in enumerate(prev2):
            new[k] -= c
        polys.append(new)
    return polys
