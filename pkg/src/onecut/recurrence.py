"""Diagonal recurrence coefficients for the varying weight exp(-n V).

For each n the weight changes, so the discretized Stieltjes procedure is
rerun per n: discretize exp(-n V) on a composite Gauss-Legendre grid,
run the three-term orthogonalization recursion, and keep the index-n
coefficient pair.  The hot loop uses gmpy2.mpfr directly; node tables
are built once in mpmath and cached.

A small-n Hankel-determinant oracle (moments via independent tanh-sinh
quadrature) cross-validates the Stieltjes path.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import gmpy2
import numpy as np
from mpmath import mp

from .errors import DomainError, NotOneCutError, PrecisionError
from .potential import POLYNOMIAL, Potential, eval_V
from .precision import PrecisionConfig, working_precision
from .series import poly_derivative, poly_eval

# ---------------------------------------------------------------------------
# Table type


@dataclass
class RecurrenceTable:
    """Diagonal sequence (n, a_nn, b_nn) with provenance metadata."""

    entries: list = field(default_factory=list)  # (n, a_nn, b_nn) mpmath reals
    precision_bits: int = 0
    node_count: int = 0
    potential_spec: str = ""

    def ns(self):
        return [e[0] for e in self.entries]

    def a_sequence(self):
        return [(e[0], e[1]) for e in self.entries]

    def b_sequence(self):
        return [(e[0], e[2]) for e in self.entries]

    def validate(self):
        prev = 0
        for n, a_nn, _ in self.entries:
            if n != prev + 1:
                raise PrecisionError("recurrence table has gaps or is unordered")
            if not a_nn > 0:
                raise PrecisionError(f"a_nn must be positive, got {mp.nstr(a_nn, 8)} at n={n}")
            prev = n


# ---------------------------------------------------------------------------
# Gauss-Legendre nodes (cached per (count, precision))

_GL_CACHE: dict = {}


def legendre_nodes(count: int, bits: int):
    """Nodes/weights of count-point Gauss-Legendre on [-1, 1] (mpmath)."""
    key = (count, bits)
    if key in _GL_CACHE:
        return _GL_CACHE[key]
    with working_precision(bits, guard=32):
        xs = []
        ws = []
        for i in range(count):
            # Newton from the Chebyshev-based initial guess
            x = mp.cos(mp.pi * (i + mp.mpf(3) / 4) / (count + mp.mpf(1) / 2))
            for _ in range(100):
                p0, p1 = mp.mpf(1), x
                for k in range(2, count + 1):
                    p0, p1 = p1, ((2 * k - 1) * x * p1 - (k - 1) * p0) / k
                dp = count * (x * p1 - p0) / (x * x - 1)
                dx = p1 / dp
                x -= dx
                if abs(dx) < mp.mpf(2) ** (-bits - 16):
                    break
            p0, p1 = mp.mpf(1), x
            for k in range(2, count + 1):
                p0, p1 = p1, ((2 * k - 1) * x * p1 - (k - 1) * p0) / k
            dp = count * (x * p1 - p0) / (x * x - 1)
            xs.append(x)
            ws.append(2 / ((1 - x * x) * dp * dp))
    _GL_CACHE[key] = (xs, ws)
    return xs, ws


def _to_mpfr(x):
    """Exact mpmath -> gmpy2 conversion via mantissa/exponent."""
    sign, man, exp, _ = mp.mpf(x)._mpf_
    r = gmpy2.mpfr(man) * gmpy2.exp2(exp)
    return -r if sign else r


def _to_mpf(x, bits: int):
    m, e = x.as_mantissa_exp()
    with working_precision(bits, guard=16):
        return mp.ldexp(mp.mpf(int(m)), int(e))


# ---------------------------------------------------------------------------
# Weight discretization


def _poly_minimum(p: Potential, bits: int):
    """Location and value of min V for a polynomial field."""
    with working_precision(bits, guard=16):
        vp = poly_derivative(list(p.poly_coeffs))
        vpp = poly_derivative(vp)
        roots = np.roots([float(c) for c in reversed(vp)])
        candidates = [mp.mpf(0)]
        for r in roots:
            if abs(r.imag) < 1e-9:
                candidates.append(mp.mpf(repr(float(r.real))))
        best_x, best_v = None, None
        for x in candidates:
            # polish simple critical points
            for _ in range(8):
                d2 = poly_eval(vpp, x)
                if abs(d2) < mp.mpf("1e-30"):
                    break
                x = x - poly_eval(vp, x) / d2
            v = eval_V(p, x)
            if best_v is None or v < best_v:
                best_x, best_v = x, v
        return best_x, best_v


def _discretize(p: Potential, n: int, cfg: PrecisionConfig, panels: int):
    """Nodes and weight-included quadrature weights as gmpy2 mpfr lists."""
    bits = cfg.precision_bits
    glx, glw = legendre_nodes(cfg.panel_nodes, bits)
    ctx_prec = bits + 64
    with gmpy2.context(precision=ctx_prec):
        gx = [_to_mpfr(x) for x in glx]
        gw = [_to_mpfr(w) for w in glw]
        xs: list = []
        vs: list = []
        if p.kind == POLYNOMIAL:
            lo, hi = _polynomial_domain(p, n, cfg)
            glo, ghi = _to_mpfr(lo), _to_mpfr(hi)
            coeffs = [_to_mpfr(c) for c in reversed(p.poly_coeffs)]
            gn = gmpy2.mpfr(n)
            for j in range(panels):
                p_lo = glo + (ghi - glo) * j / panels
                p_hi = glo + (ghi - glo) * (j + 1) / panels
                half = (p_hi - p_lo) / 2
                cen = (p_hi + p_lo) / 2
                for t, w in zip(gx, gw):
                    x = cen + half * t
                    acc = coeffs[0]
                    for c in coeffs[1:]:
                        acc = acc * x + c
                    xs.append(x)
                    vs.append(w * half * gmpy2.exp(-gn * acc))
        else:
            ga = _to_mpfr(p.jacobi_A)
            gb = _to_mpfr(p.jacobi_B)
            gn = gmpy2.mpfr(n)
            gpi = gmpy2.const_pi(ctx_prec)
            for j in range(panels):
                p_lo = gpi * j / panels
                p_hi = gpi * (j + 1) / panels
                half = (p_hi - p_lo) / 2
                cen = (p_hi + p_lo) / 2
                for t, w in zip(gx, gw):
                    theta = cen + half * t
                    s2 = gmpy2.sin(theta / 2) ** 2  # (1 - cos)/2
                    c2 = gmpy2.cos(theta / 2) ** 2  # (1 + cos)/2
                    x = c2 - s2
                    logw = gn * (ga * gmpy2.log(2 * s2) + gb * gmpy2.log(2 * c2))
                    xs.append(x)
                    vs.append(w * half * gmpy2.sin(theta) * gmpy2.exp(logw))
    return xs, vs


_DOMAIN_CACHE: dict = {}


def _polynomial_domain(p: Potential, n: int, cfg: PrecisionConfig):
    """Fixed truncation interval where exp(-(V - V_min)) is negligible.

    The interval must not shrink with n: off the support the integrand
    p_k^2 exp(-n V) decays at least as fast as the bare weight does for
    n = 1, so a single n-independent domain with a generous digit margin
    is valid for the whole table.
    """
    key = (p.spec(), cfg.precision_bits, cfg.digits_target)
    if key in _DOMAIN_CACHE:
        return _DOMAIN_CACHE[key]
    with working_precision(cfg.precision_bits, guard=16):
        xmin, vmin = _poly_minimum(p, cfg.precision_bits)
        threshold = (cfg.digits_target + 20) * mp.log(10)

        def bound(direction):
            step = mp.mpf(1)
            x = xmin + direction * step
            while eval_V(p, x) - vmin < threshold:
                step *= 2
                x = xmin + direction * step
            lo, hi = (xmin, x) if direction > 0 else (x, xmin)
            for _ in range(64):
                mid = (lo + hi) / 2
                if eval_V(p, mid) - vmin < threshold:
                    if direction > 0:
                        lo = mid
                    else:
                        hi = mid
                else:
                    if direction > 0:
                        hi = mid
                    else:
                        lo = mid
            return hi if direction > 0 else lo

        right = bound(1)
        if p.is_even():
            domain = (-right, right)
        else:
            domain = (bound(-1), right)
    _DOMAIN_CACHE[key] = domain
    return domain


def _stieltjes_pair(xs, vs, n: int):
    """(a_n, b_n) of the monic orthogonal polynomials for the discrete
    measure sum v_i delta_{x_i}; requires n < len(xs)."""
    p_prev = [gmpy2.mpfr(0)] * len(xs)
    p_cur = [gmpy2.mpfr(1)] * len(xs)
    s0_prev = None
    a_k = None
    for k in range(n + 1):
        s0 = gmpy2.mpfr(0)
        s1 = gmpy2.mpfr(0)
        for x, v, pc in zip(xs, vs, p_cur):
            t = v * pc * pc
            s0 += t
            s1 += t * x
        b_k = s1 / s0
        if k > 0:
            a_k = s0 / s0_prev
        if k == n:
            return a_k, b_k
        s0_prev = s0
        if k == 0:
            p_prev, p_cur = p_cur, [x - b_k for x in xs]
        else:
            p_prev, p_cur = (
                p_cur,
                [
                    (x - b_k) * pc - a_k * pp
                    for x, pc, pp in zip(xs, p_cur, p_prev)
                ],
            )
    raise AssertionError("unreachable")


def _table_at(p: Potential, n_max: int, cfg: PrecisionConfig, panels: int):
    rows = []
    with gmpy2.context(precision=cfg.precision_bits + 64):
        for n in range(1, n_max + 1):
            xs, vs = _discretize(p, n, cfg, panels)
            a_nn, b_nn = _stieltjes_pair(xs, vs, n)
            rows.append((n, a_nn, b_nn))
    return rows


def compute_recurrence(
    p: Potential,
    n_max: int,
    cfg: PrecisionConfig | None = None,
    check_regularity: bool = False,
) -> RecurrenceTable:
    """Diagonal pairs (a_nn, b_nn) for n = 1..n_max by discretized Stieltjes.

    Self-validation: the whole table is recomputed with doubled panel
    count until no value moves by more than 10^-digits_target.  With
    check_regularity=True the field is first run through the one-cut
    test (NotOneCutError on failure).
    """
    if cfg is None:
        cfg = PrecisionConfig.default()
    if n_max < 1:
        raise DomainError("n_max must be >= 1")
    if check_regularity:
        from .equilibrium import solve_equilibrium

        measure = solve_equilibrium(p, prec=cfg.precision_bits)
        if not measure.regular:
            raise NotOneCutError("potential failed the one-cut regularity checks")
    tol = mp.mpf(10) ** (-cfg.digits_target)
    panels = cfg.initial_panels
    prev = _table_at(p, n_max, cfg, panels)
    for _ in range(cfg.max_doublings):
        panels *= 2
        cur = _table_at(p, n_max, cfg, panels)
        worst = max(
            max(abs(_to_mpf(c[1] - q[1], cfg.precision_bits)),
                abs(_to_mpf(c[2] - q[2], cfg.precision_bits)))
            for c, q in zip(cur, prev)
        )
        if worst <= tol:
            table = RecurrenceTable(
                entries=[
                    (n, _to_mpf(a, cfg.precision_bits), _to_mpf(b, cfg.precision_bits))
                    for n, a, b in cur
                ],
                precision_bits=cfg.precision_bits,
                node_count=panels * cfg.panel_nodes,
                potential_spec=p.spec(),
            )
            table.validate()
            return table
        prev = cur
    raise PrecisionError(
        f"self-validation did not reach 10^-{cfg.digits_target} at "
        f"{panels * cfg.panel_nodes} nodes"
    )


# ---------------------------------------------------------------------------
# Hankel-determinant oracle


def _moment(p: Potential, n: int, k: int):
    """M_k = int x^k exp(-n V) dx by tanh-sinh quadrature."""
    if p.kind == POLYNOMIAL:
        cfg = PrecisionConfig(precision_bits=mp.prec, digits_target=mp.dps)
        lo, hi = _polynomial_domain(p, n, cfg)
        xmin, _ = _poly_minimum(p, mp.prec)
        return mp.quad(lambda x: x**k * mp.exp(-n * eval_V(p, x)), [lo, xmin, hi])
    A, B = p.jacobi_A, p.jacobi_B
    return mp.quad(
        lambda x: x**k * (1 - x) ** (A * n) * (1 + x) ** (B * n), [-1, 0, 1]
    )


def hankel_oracle(
    p: Potential,
    n_small: int,
    cfg: PrecisionConfig | None = None,
) -> RecurrenceTable:
    """Small-n cross-check of the recurrence table from moment determinants.

    a_nn = D_{n+1} D_{n-1} / D_n^2 and b_nn = sigma_{n+1} - sigma_n with
    sigma_n = D~_n / D_n, where D_n is the Hankel determinant of the
    moments of exp(-n V) and D~_n shifts its last column by one moment.
    Determinants are exponentially ill-conditioned, hence n_small <= 10.
    """
    if cfg is None:
        cfg = PrecisionConfig.default()
    if n_small > 10:
        raise DomainError("hankel_oracle is limited to n <= 10")
    entries = []
    with working_precision(cfg.precision_bits, guard=64):
        for n in range(1, n_small + 1):
            moments = [_moment(p, n, k) for k in range(2 * n + 2)]

            def hankel_det(size, shifted=False):
                if size == 0:
                    return mp.mpf(1)
                rows = []
                for i in range(size):
                    cols = [moments[i + j] for j in range(size - 1)]
                    cols.append(moments[i + size] if shifted else moments[i + size - 1])
                    rows.append(cols)
                mat = mp.matrix(rows)
                det = mp.det(mat)
                bound = mp.mpf(1)
                for i in range(size):
                    bound *= mp.norm(mat[i, :])
                # Shifted determinants may be exactly zero (even weights have
                # vanishing odd moments), so only denominators are guarded.
                if (
                    not shifted
                    and bound > 0
                    and abs(det) < bound * mp.mpf(2) ** (-(mp.prec - 80))
                ):
                    raise PrecisionError(
                        "Hankel determinant too small for the precision budget"
                    )
                return det

            d_n = hankel_det(n)
            d_np1 = hankel_det(n + 1)
            d_nm1 = hankel_det(n - 1)
            a_nn = d_np1 * d_nm1 / (d_n * d_n)
            sigma_n = hankel_det(n, shifted=True) / d_n if n > 0 else mp.mpf(0)
            sigma_np1 = hankel_det(n + 1, shifted=True) / d_np1
            b_nn = sigma_np1 - sigma_n
            entries.append((n, a_nn, b_nn))
    table = RecurrenceTable(
        entries=entries,
        precision_bits=cfg.precision_bits,
        node_count=0,
        potential_spec=p.spec(),
    )
    table.validate()
    return table


# ---------------------------------------------------------------------------
# Jacobi closed forms


def jacobi_recurrence_closed(A, B, n: int, prec: int | None = None):
    """Closed-form (a_nn, b_nn) for the varying-Jacobi weight."""
    if n < 1:
        raise DomainError("n must be >= 1")
    with working_precision(prec, guard=16):
        A = mp.mpf(A) if not hasattr(A, "_mpf_") else A
        B = mp.mpf(B) if not hasattr(B, "_mpf_") else B
        if not (A > 0 and B > 0):
            raise DomainError("jacobi parameters must be positive")
        s = 2 + A + B
        a_nn = 4 * (1 + A + B) * (1 + A) * (1 + B) / ((s * s - mp.mpf(1) / (n * n)) * s * s)
        b_nn = (B * B - A * A) / (s * (s + mp.mpf(2) / n))
        return a_nn, b_nn
