"""Inverse-power fits of the diagonal sequences and the end-to-end check.

The diagonal coefficients behave like

    a_nn ~ (b-a)^2/16 + sum alpha_{2m} n^{-2m}        (even powers only)
    b_nn ~ (b+a)/2 + sum beta_m n^{-m}

with beta_1 = (1/(2 pi (b-a))) (1/h(b) - 1/h(a)).  Here we extract
coefficients by weighted least squares over a large-n window and compare
against the closed-form predictions.
"""

from __future__ import annotations

from dataclasses import dataclass

from mpmath import mp

from .equilibrium import EquilibriumMeasure
from .errors import DomainError, IllConditionedError
from .potential import Potential
from .precision import working_precision
from .recurrence import RecurrenceTable
from .rh_expansion import beta1_closed


@dataclass
class ExpansionFit:
    powers: list
    coefficients: list
    residual_max: object
    condition: object
    window: tuple

    def coefficient(self, power: int):
        try:
            return self.coefficients[self.powers.index(power)]
        except ValueError:
            raise DomainError(f"power {power} was not part of the fit basis") from None

    def uncertainty(self, power: int):
        """Heuristic coefficient uncertainty: residual scaled by the basis
        column norm ratio.  Not a statistical error bar."""
        n_lo, n_hi = self.window
        ref = sum(mp.mpf(n) ** (-2 * power) for n in range(n_lo, n_hi + 1))
        return self.residual_max * mp.sqrt((n_hi - n_lo + 1) / ref)


@dataclass
class VerificationReport:
    a_limit_expected: object = None
    a_limit_fitted: object = None
    b_limit_expected: object = None
    b_limit_fitted: object = None
    beta1_expected: object = None
    beta1_fitted: object = None
    odd_alpha_max: object = None
    a_limit_pass: bool = False
    b_limit_pass: bool = False
    beta1_pass: bool = False
    odd_alpha_pass: bool = False
    a_fit: ExpansionFit | None = None
    b_fit: ExpansionFit | None = None

    @property
    def overall_pass(self) -> bool:
        return (
            self.a_limit_pass and self.b_limit_pass and self.beta1_pass and self.odd_alpha_pass
        )


@dataclass(frozen=True)
class ToleranceConfig:
    limit_abs: object = mp.mpf("1e-6")
    beta1_abs: object = mp.mpf("1e-3")
    odd_alpha_rel: object = mp.mpf("1e-3")


def fit_inverse_powers(
    seq,
    powers,
    window,
    prec: int | None = None,
    cond_limit=None,
) -> ExpansionFit:
    """Weighted least squares value(n) ~ sum_m c_m n^-m over the window.

    Rows are weighted by n^max(powers) so all basis columns have
    comparable scale; the system is solved by QR factorization, never by
    forming normal equations.
    """
    powers = list(powers)
    n_lo, n_hi = int(window[0]), int(window[1])
    data = [(n, v) for n, v in seq if n_lo <= n <= n_hi]
    if len(data) < len(powers) + 2:
        raise DomainError("fit window holds fewer points than coefficients + 2")
    with working_precision(prec, guard=32):
        pmax = max(powers)
        rows = len(data)
        cols = len(powers)
        amat = mp.matrix(rows, cols)
        rhs = mp.matrix(rows, 1)
        for i, (n, v) in enumerate(data):
            wgt = mp.mpf(n) ** pmax
            for j, m in enumerate(powers):
                amat[i, j] = wgt * mp.mpf(n) ** (-m)
            rhs[i] = wgt * v
        q, r = mp.qr(amat)
        diag = [abs(r[j, j]) for j in range(cols)]
        condition = max(diag) / min(diag) if min(diag) > 0 else mp.inf
        if cond_limit is None:
            cond_limit = mp.mpf(10) ** 12 * mp.mpf(10) ** max(0, mp.dps - 30)
        if condition > cond_limit:
            raise IllConditionedError(
                f"normal-system condition {mp.nstr(condition, 5)} exceeds the budget; "
                "shrink the power set or widen the window"
            )
        qtb = q.T * rhs
        coeffs = [mp.mpf(0)] * cols
        for j in range(cols - 1, -1, -1):
            acc = qtb[j]
            for kk in range(j + 1, cols):
                acc -= r[j, kk] * coeffs[kk]
            coeffs[j] = acc / r[j, j]
        residual_max = mp.mpf(0)
        for n, v in data:
            model = sum(c * mp.mpf(n) ** (-m) for c, m in zip(coeffs, powers))
            residual_max = max(residual_max, abs(model - v))
    return ExpansionFit(
        powers=powers,
        coefficients=coeffs,
        residual_max=residual_max,
        condition=condition,
        window=(n_lo, n_hi),
    )


def richardson_limit(seq, order: int, prec: int | None = None):
    """Cross-check limit estimate: Neville extrapolation in 1/n to 0.

    Uses the last order+1 points; eliminates the leading inverse powers
    successively, equivalent to polynomial extrapolation in x = 1/n.
    """
    pts = list(seq)[-(order + 1):]
    if len(pts) < order + 1:
        raise DomainError("not enough points for the requested extrapolation order")
    with working_precision(prec, guard=32):
        xs = [1 / mp.mpf(n) for n, _ in pts]
        tab = [mp.mpf(v) for _, v in pts]
        for level in range(1, len(pts)):
            for i in range(len(pts) - level):
                tab[i] = tab[i] + xs[i] * (tab[i] - tab[i + 1]) / (xs[i + level] - xs[i])
        return tab[0]


def default_window(n_max: int) -> tuple:
    return (max(1, n_max // 2), n_max)


def verify_theorem(
    p: Potential,
    m: EquilibriumMeasure,
    table: RecurrenceTable,
    tolerances: ToleranceConfig | None = None,
    window: tuple | None = None,
    prec: int | None = None,
) -> VerificationReport:
    """Fit both diagonal sequences and compare with the predicted limits,
    the closed-form 1/n coefficient of b_nn, and the suppression of odd
    inverse powers in a_nn."""
    if tolerances is None:
        tolerances = ToleranceConfig()
    n_max = table.entries[-1][0]
    if window is None:
        window = default_window(n_max)
    report = VerificationReport()
    with working_precision(prec, guard=32):
        a_fit = fit_inverse_powers(table.a_sequence(), [0, 1, 2, 3, 4], window, prec=prec)
        b_fit = fit_inverse_powers(table.b_sequence(), [0, 1, 2, 3], window, prec=prec)
        report.a_fit = a_fit
        report.b_fit = b_fit
        report.a_limit_expected = (m.b - m.a) ** 2 / 16
        report.a_limit_fitted = a_fit.coefficient(0)
        report.b_limit_expected = (m.b + m.a) / 2
        report.b_limit_fitted = b_fit.coefficient(0)
        report.beta1_expected = beta1_closed(m, prec=prec)
        report.beta1_fitted = b_fit.coefficient(1)
        report.odd_alpha_max = max(abs(a_fit.coefficient(1)), abs(a_fit.coefficient(3)))
        report.a_limit_pass = (
            abs(report.a_limit_fitted - report.a_limit_expected) <= tolerances.limit_abs
        )
        report.b_limit_pass = (
            abs(report.b_limit_fitted - report.b_limit_expected) <= tolerances.limit_abs
        )
        report.beta1_pass = (
            abs(report.beta1_fitted - report.beta1_expected) <= tolerances.beta1_abs
        )
        alpha2 = abs(a_fit.coefficient(2))
        report.odd_alpha_pass = report.odd_alpha_max <= tolerances.odd_alpha_rel * max(
            1, alpha2
        )
    return report
