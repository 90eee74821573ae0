"""Equilibrium measure for one-cut regular external fields.

The density has the form sqrt((b-x)(x-a)) h(x) on a single interval
[a, b].  This module finds the endpoints from the two classical endpoint
conditions

    (1/2pi) int_a^b V'(s) / sqrt((s-a)(b-s)) ds = 0
    (1/2pi) int_a^b s V'(s) / sqrt((s-a)(b-s)) ds = 1,

constructs the analytic factor h, evaluates the exterior functions
phi / phi-tilde, checks regularity, and extracts the endpoint Laurent
data (A0, A1, B0, B1) used by the expansion machinery.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from mpmath import mp

from .errors import (
    ConvergenceError,
    DomainError,
    NotOneCutError,
    QuadratureError,
    SeriesError,
)
from .potential import JACOBI, POLYNOMIAL, Potential, eval_V, eval_Vprime, vprime_coeffs
from .precision import working_precision
from .series import (
    chebyshev_u_polynomials,
    poly_compose_linear,
    poly_eval,
    poly_taylor_shift,
    series_div,
    series_mul,
    sqrt_linear_series,
)

# ---------------------------------------------------------------------------
# The analytic factor h


class PolynomialFactor:
    """h given by ascending polynomial coefficients (entire function)."""

    kind = "poly"

    def __init__(self, coeffs):
        self.coeffs = tuple(coeffs)

    def value(self, x):
        return poly_eval(self.coeffs, x)

    def taylor(self, x0, nterms):
        shifted = poly_taylor_shift(list(self.coeffs), x0)
        if len(shifted) < nterms:
            shifted = shifted + [mp.mpf(0)] * (nterms - len(shifted))
        return shifted[:nterms]

    def singularity_distance(self, x0):
        return mp.inf


class JacobiFactor:
    """Closed form h(x) = (2+A+B) / (2 pi (1 - x^2)) with poles at +-1."""

    kind = "jacobi"

    def __init__(self, A, B):
        self.A = A
        self.B = B

    @property
    def _scale(self):
        return (2 + self.A + self.B) / (2 * mp.pi)

    def value(self, x):
        return self._scale / ((1 - x) * (1 + x))

    def taylor(self, x0, nterms):
        # 1/(1-x^2) = (1/2) [1/(1-x) + 1/(1+x)], expanded geometrically.
        c = self._scale / 2
        rm = 1 - x0
        rp = 1 + x0
        out = []
        tm = 1 / rm
        tp = 1 / rp
        for _ in range(nterms):
            out.append(c * (tm + tp))
            tm = tm / rm
            tp = -tp / rp
        return out

    def singularity_distance(self, x0):
        return min(abs(1 - x0), abs(1 + x0))


class ReflectedFactor:
    """h of the measure reflected through the midpoint of [a, b]."""

    kind = "reflected"

    def __init__(self, inner, endpoint_sum):
        self.inner = inner
        self.endpoint_sum = endpoint_sum  # a + b

    def value(self, x):
        return self.inner.value(self.endpoint_sum - x)

    def taylor(self, x0, nterms):
        base = self.inner.taylor(self.endpoint_sum - x0, nterms)
        return [c if k % 2 == 0 else -c for k, c in enumerate(base)]

    def singularity_distance(self, x0):
        return self.inner.singularity_distance(self.endpoint_sum - x0)


# ---------------------------------------------------------------------------
# Data types


@dataclass
class RegularityReport:
    h_min: object = None
    h_min_location: object = None
    h_positive: bool = False
    phi_min: object = None
    phi_positive: bool = False
    tilde_phi_min: object = None
    tilde_phi_positive: bool = False
    normalization_residual: object = None
    normalized: bool = False

    @property
    def regular(self) -> bool:
        return (
            self.h_positive
            and self.phi_positive
            and self.tilde_phi_positive
            and self.normalized
        )


@dataclass
class EquilibriumMeasure:
    a: object
    b: object
    h: object
    lagrange_const: Optional[object] = None
    regular: Optional[bool] = None
    report: Optional[RegularityReport] = None

    @property
    def width(self):
        return self.b - self.a

    @property
    def midpoint(self):
        return (self.a + self.b) / 2


@dataclass(frozen=True)
class EndpointLaurentData:
    """First two Laurent coefficients at each endpoint.

    B_m expand beta(z)^-2 / phi(z) at b, A_m expand beta(z)^2 / phi~(z)
    at a; the leading terms satisfy B0 = 3/(2 pi h(b)), A0 = 3/(2 pi h(a)).
    """

    A0: object
    A1: object
    B0: object
    B1: object


def reflected_measure(m: EquilibriumMeasure) -> EquilibriumMeasure:
    """Measure of the field reflected through the midpoint (same [a, b])."""
    return EquilibriumMeasure(
        a=m.a,
        b=m.b,
        h=ReflectedFactor(m.h, m.a + m.b),
        regular=m.regular,
        report=m.report,
    )


# ---------------------------------------------------------------------------
# Endpoint conditions and Newton solve


def _endpoint_residuals(p: Potential, a, b, nodes: int):
    """Gauss-Chebyshev (first kind) evaluation of the two conditions."""
    mid = (a + b) / 2
    wid = (b - a) / 2
    f1 = mp.mpf(0)
    f2 = mp.mpf(0)
    for k in range(nodes):
        t = mp.cos(mp.pi * (2 * k + 1) / (2 * nodes))
        s = mid + wid * t
        vp = eval_Vprime(p, s)
        f1 += vp
        f2 += s * vp
    f1 = f1 / (2 * nodes)
    f2 = f2 / (2 * nodes) - 1
    return f1, f2


def _newton_endpoints(p: Potential, a, b, nodes, tol, max_iter=200):
    def residual(a_, b_):
        if not b_ > a_:
            return None
        if p.kind == JACOBI and not (-1 < a_ and b_ < 1):
            return None
        return _endpoint_residuals(p, a_, b_, nodes)

    cur = residual(a, b)
    if cur is None:
        raise ConvergenceError("endpoint initial guess is inadmissible")
    step = mp.mpf(2) ** (-mp.prec // 2)
    for _ in range(max_iter):
        f1, f2 = cur
        norm = abs(f1) + abs(f2)
        if norm <= tol:
            return a, b
        # finite-difference Jacobian
        da = step * max(1, abs(a))
        db = step * max(1, abs(b))
        fa = residual(a + da, b)
        fb = residual(a, b + db)
        if fa is None or fb is None:
            raise ConvergenceError("endpoint Jacobian evaluation left the domain")
        j11 = (fa[0] - f1) / da
        j21 = (fa[1] - f2) / da
        j12 = (fb[0] - f1) / db
        j22 = (fb[1] - f2) / db
        det = j11 * j22 - j12 * j21
        if det == 0:
            raise ConvergenceError("singular Jacobian in endpoint Newton iteration")
        dxa = (f1 * j22 - f2 * j12) / det
        dxb = (j11 * f2 - j21 * f1) / det
        lam = mp.mpf(1)
        improved = None
        while lam > mp.mpf(2) ** (-80):
            cand = residual(a - lam * dxa, b - lam * dxb)
            if cand is not None and abs(cand[0]) + abs(cand[1]) < norm:
                improved = (a - lam * dxa, b - lam * dxb, cand)
                break
            lam = lam / 2
        if improved is None:
            # residual already at the roundoff floor
            if norm <= tol * 1e5:
                return a, b
            raise ConvergenceError("endpoint Newton damping stalled")
        a, b, cur = improved
    raise ConvergenceError(f"endpoint Newton did not converge in {max_iter} iterations")


def _initial_endpoints(p: Potential):
    if p.kind == JACOBI:
        return jacobi_endpoints(p.jacobi_A, p.jacobi_B)
    d = p.degree
    lead = p.poly_coeffs[d]
    r = (2 / lead) ** (mp.mpf(1) / d)
    return -r, r


def jacobi_endpoints(A, B):
    """Closed-form support endpoints of the varying-Jacobi field."""
    disc = 4 * mp.sqrt((1 + A + B) * (1 + A) * (1 + B))
    den = (2 + A + B) ** 2
    return (B * B - A * A - disc) / den, (B * B - A * A + disc) / den


def solve_endpoints(p: Potential, prec: int | None = None, nodes: int = 512):
    """Support endpoints (a, b) of the equilibrium measure.

    Gauss-Chebyshev quadrature is exact for polynomial fields; for the
    Jacobi family the node count is doubled until two successive solves
    agree to the Newton tolerance.
    """
    with working_precision(prec, guard=48):
        tol = max(mp.mpf(10) ** (-30), mp.mpf(2) ** (10 - mp.prec + 48))
        a0, b0 = _initial_endpoints(p)
        if p.kind == POLYNOMIAL:
            m_nodes = max(64, p.degree)
            return _newton_endpoints(p, a0, b0, m_nodes, tol)
        a, b = _newton_endpoints(p, a0, b0, nodes, tol)
        for _ in range(6):
            nodes *= 2
            a2, b2 = _newton_endpoints(p, a, b, nodes, tol)
            if abs(a2 - a) + abs(b2 - b) <= tol:
                return a2, b2
            a, b = a2, b2
        raise ConvergenceError("endpoint quadrature did not stabilize under node doubling")


# ---------------------------------------------------------------------------
# The factor h


def compute_h(p: Potential, a, b, prec: int | None = None):
    """Analytic factor h with psi(x) = sqrt((b-x)(x-a)) h(x).

    Polynomial fields: expand V' in first-kind Chebyshev polynomials on
    [a, b]; the finite-Hilbert-transform map T_k -> U_{k-1} then gives h
    exactly as a polynomial of degree deg V - 2.  Jacobi fields use the
    closed form (2+A+B)/(2 pi (1-x^2)).
    """
    if p.kind == JACOBI:
        return JacobiFactor(p.jacobi_A, p.jacobi_B)
    with working_precision(prec, guard=48):
        vp = vprime_coeffs(p)
        deg = len(vp) - 1  # degree of V'
        mid = (a + b) / 2
        wid = (b - a) / 2
        nodes = deg + 4
        thetas = [mp.pi * (2 * j + 1) / (2 * nodes) for j in range(nodes)]
        fvals = [poly_eval(vp, mid + wid * mp.cos(t)) for t in thetas]
        coeffs_t = []  # Chebyshev-T coefficients of V'(mid + wid t)
        for k in range(deg + 1):
            acc = mp.mpf(0)
            for fv, t in zip(fvals, thetas):
                acc += fv * mp.cos(k * t)
            coeffs_t.append(2 * acc / nodes)
        upolys = chebyshev_u_polynomials(max(deg - 1, 0))
        ht = [mp.mpf(0)] * max(deg, 1)
        for k in range(1, deg + 1):
            ck = coeffs_t[k]
            for j, uc in enumerate(upolys[k - 1]):
                ht[j] += ck * uc
        scale = 1 / (2 * mp.pi * wid)
        ht = [scale * c for c in ht]
        hx = poly_compose_linear(ht, 1 / wid, -mid / wid)
        return PolynomialFactor(hx)


def equilibrium_density(m: EquilibriumMeasure, x):
    """Density sqrt((b-x)(x-a)) h(x) on [a, b], zero outside."""
    if x < m.a or x > m.b:
        return mp.mpf(0)
    radicand = (m.b - x) * (x - m.a)
    if radicand <= 0:
        return mp.mpf(0)
    return mp.sqrt(radicand) * m.h.value(x)


def normalization_residual(m: EquilibriumMeasure, prec: int | None = None, nodes: int = 512):
    """|int psi - 1| by second-kind Gauss-Chebyshev with node doubling."""
    with working_precision(prec, guard=48):
        wid = m.width / 2
        mid = m.midpoint

        def total(nn):
            acc = mp.mpf(0)
            for k in range(1, nn + 1):
                t = mp.pi * k / (nn + 1)
                acc += mp.sin(t) ** 2 * m.h.value(mid + wid * mp.cos(t))
            return acc * mp.pi / (nn + 1) * wid * wid

        prev = total(nodes)
        for _ in range(5):
            nodes *= 2
            cur = total(nodes)
            if abs(cur - prev) <= mp.mpf(10) ** (-mp.dps + 8):
                return abs(cur - 1)
            prev = cur
        return abs(prev - 1)


# ---------------------------------------------------------------------------
# phi, phi-tilde, Lagrange constant


def phi_real(m: EquilibriumMeasure, p: Potential, x, prec: int | None = None):
    """phi(x) = pi int_b^x sqrt((s-b)(s-a)) h(s) ds for real x > b.

    The substitution s = b + u^2 removes the square-root vanishing at b,
    leaving a smooth integrand.
    """
    return _exterior_integral(m, x, side="b", prec=prec)


def tilde_phi_real(m: EquilibriumMeasure, p: Potential, x, prec: int | None = None):
    """phi~(x) = pi int_x^a sqrt((b-s)(a-s)) h(s) ds for real x < a."""
    return _exterior_integral(m, x, side="a", prec=prec)


def _exterior_integral(m: EquilibriumMeasure, x, side: str, prec):
    with working_precision(prec, guard=16):
        if side == "b":
            if x <= m.b:
                if x == m.b:
                    return mp.mpf(0)
                raise DomainError("phi is evaluated for x > b only")
            upper = mp.sqrt(x - m.b)
            g = lambda u: u * u * mp.sqrt(u * u + m.width) * m.h.value(m.b + u * u)
        else:
            if x >= m.a:
                if x == m.a:
                    return mp.mpf(0)
                raise DomainError("phi~ is evaluated for x < a only")
            upper = mp.sqrt(m.a - x)
            g = lambda u: u * u * mp.sqrt(u * u + m.width) * m.h.value(m.a - u * u)
        return 2 * mp.pi * mp.quad(g, [0, upper])


def lagrange_constant(
    m: EquilibriumMeasure,
    p: Potential,
    x0=None,
    prec: int | None = None,
):
    """Constant l = 2 int log|x0 - y|^-1 dmu(y) + V(x0), x0 in (a, b).

    The substitution y = mid + (width/2) cos(theta) places the log
    singularity at an endpoint of the split quadrature intervals, where
    tanh-sinh quadrature absorbs it.  A self-consistency check compares
    two quadrature depths.
    """
    if m.regular is False:
        raise NotOneCutError("Lagrange constant requires a regular measure")
    with working_precision(prec, guard=32):
        wid = m.width / 2
        mid = m.midpoint
        if x0 is None:
            x0 = mid
        if not (m.a < x0 < m.b):
            raise DomainError("evaluation point must lie inside (a, b)")
        ct = (x0 - mid) / wid
        theta0 = mp.acos(ct)

        def integrand(theta):
            y = mid + wid * mp.cos(theta)
            return mp.log(abs(x0 - y)) * mp.sin(theta) ** 2 * m.h.value(y)

        def run(maxdeg):
            val = mp.quad(integrand, [0, theta0, mp.pi], maxdegree=maxdeg)
            return -2 * wid * wid * val + eval_V(p, x0)

        first = run(8)
        second = run(10)
        if abs(second - first) > mp.mpf(10) ** (-20) * max(1, abs(second)):
            raise QuadratureError(
                "logarithmic-potential quadrature failed its self-consistency check"
            )
        return second


# ---------------------------------------------------------------------------
# Regularity verification


def verify_one_cut_regular(
    m: EquilibriumMeasure,
    p: Potential,
    h_grid: int = 2001,
    exterior_grid: int = 200,
    exterior_span=None,
    prec: int | None = None,
) -> RegularityReport:
    """Scan h on [a, b], phi / phi~ off the support, and the normalization.

    exterior_span defaults to 10 (b-a) beyond each endpoint; Jacobi
    fields are scanned up to just inside the hard edges +-1 instead.
    """
    report = RegularityReport()
    with working_precision(prec, guard=16):
        a, b = m.a, m.b
        width = m.width
        if exterior_span is None:
            exterior_span = 10 * width

        h_min = None
        h_loc = None
        for j in range(h_grid):
            x = a + width * mp.mpf(j) / (h_grid - 1)
            v = m.h.value(x)
            if h_min is None or v < h_min:
                h_min, h_loc = v, x
        report.h_min = h_min
        report.h_min_location = h_loc
        h_scale = max(1, abs(h_min))
        report.h_positive = h_min > mp.mpf(10) ** (-20) * h_scale

        def scan(side):
            if p.kind == JACOBI:
                span = (1 - b) * mp.mpf("0.95") if side == "b" else (a + 1) * mp.mpf("0.95")
            else:
                span = exterior_span
            # cumulative composite Gauss-Legendre in the u = sqrt(|x - edge|)
            # variable; only the sign matters here.
            umax = mp.sqrt(span)
            glx = [-mp.sqrt(mp.mpf(3) / 5), mp.mpf(0), mp.sqrt(mp.mpf(3) / 5)]
            glw = [mp.mpf(5) / 9, mp.mpf(8) / 9, mp.mpf(5) / 9]
            acc = mp.mpf(0)
            best = None
            for seg in range(exterior_grid):
                u0 = umax * mp.mpf(seg) / exterior_grid
                u1 = umax * mp.mpf(seg + 1) / exterior_grid
                half = (u1 - u0) / 2
                cen = (u0 + u1) / 2
                for xg, wg in zip(glx, glw):
                    u = cen + half * xg
                    s = b + u * u if side == "b" else a - u * u
                    acc_term = u * u * mp.sqrt(u * u + width) * m.h.value(s)
                    acc += wg * half * 2 * mp.pi * acc_term
                if best is None or acc < best:
                    best = acc
            return best

        report.phi_min = scan("b")
        report.phi_positive = report.phi_min > 0
        report.tilde_phi_min = scan("a")
        report.tilde_phi_positive = report.tilde_phi_min > 0

        report.normalization_residual = normalization_residual(m, prec=prec)
        report.normalized = report.normalization_residual <= mp.mpf(10) ** (-25)
    return report


def solve_equilibrium(
    p: Potential,
    prec: int | None = None,
    with_lagrange: bool = False,
) -> EquilibriumMeasure:
    """End-to-end construction: endpoints, h, regularity, optionally l."""
    a, b = solve_endpoints(p, prec=prec)
    h = compute_h(p, a, b, prec=prec)
    m = EquilibriumMeasure(a=a, b=b, h=h)
    m.report = verify_one_cut_regular(m, p, prec=prec)
    m.regular = m.report.regular
    if with_lagrange:
        if not m.regular:
            raise NotOneCutError("field is not one-cut regular; no Lagrange constant")
        m.lagrange_const = lagrange_constant(m, p, prec=prec)
    return m


# ---------------------------------------------------------------------------
# Endpoint Laurent data


def phi_endpoint_series(m: EquilibriumMeasure, nterms: int, side: str = "b"):
    """Coefficients F_j with phi(z) = (z-b)^{3/2} sum_j F_j (z-b)^j (side b),
    or phi~ analogously at a in powers of (a - z) after reflection.

    Termwise integration of sqrt(s-a) h(s) (resp. sqrt(b-s) h(s)).
    """
    width = m.width
    if side == "b":
        edge_series = sqrt_linear_series(width, mp.mpf(1), nterms)
        hts = m.h.taylor(m.b, nterms)
    else:
        edge_series = sqrt_linear_series(width, mp.mpf(-1), nterms)
        hts = m.h.taylor(m.a, nterms)
    g = series_mul(edge_series, hts, nterms)
    return [mp.pi * gj / (j + mp.mpf(3) / 2) for j, gj in enumerate(g)]


def endpoint_laurent(
    m: EquilibriumMeasure,
    p: Potential,
    nterms: int = 8,
    prec: int | None = None,
) -> EndpointLaurentData:
    """Series-derived Laurent data at both endpoints.

    At b:  beta^-2 / phi = (z-b)^-2 sum B_m (z-b)^m with
           B-series = sqrt(z-a)-series / F-series;
    at a the mirrored construction yields the A_m.  The common branch
    factor of sqrt(z-b) cancels between numerator and denominator, so
    all coefficients are real.
    """
    if m.regular is False:
        raise NotOneCutError("endpoint Laurent data requires a regular measure")
    with working_precision(prec, guard=48):
        width = m.width
        fb = phi_endpoint_series(m, nterms, side="b")
        nb = sqrt_linear_series(width, mp.mpf(1), nterms)
        bser = series_div(nb, fb, nterms)

        fa = phi_endpoint_series(m, nterms, side="a")
        na = sqrt_linear_series(width, mp.mpf(-1), nterms)
        aser = series_div(na, fa, nterms)

        if not (aser[0] > 0 and bser[0] > 0) or not (
            mp.isfinite(aser[1]) and mp.isfinite(bser[1])
        ):
            raise SeriesError("endpoint Laurent series produced invalid leading data")
        return EndpointLaurentData(A0=aser[0], A1=aser[1], B0=bser[0], B1=bser[1])
