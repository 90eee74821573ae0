"""Report figures for the verify pipeline.

Renders matplotlib figures to files next to the delimited data output:
the approach of b_nn to its limit (with the fitted inverse-power model)
and the even-power decay of a_nn.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
from mpmath import mp


def _model(fit, n):
    return sum(float(c) * float(n) ** (-m) for c, m in zip(fit.coefficients, fit.powers))


def write_fit_datafile(path, table, b_fit):
    """Gnuplot-compatible columns: n, b_nn - beta0, fitted model - beta0."""
    beta0 = b_fit.coefficient(0)
    with open(path, "w") as fh:
        fh.write("# n  b_nn_minus_beta0  model_minus_beta0\n")
        for n, _, b_nn in table.entries:
            fh.write(
                f"{n} {mp.nstr(b_nn - beta0, 20)} "
                f"{mp.nstr(mp.mpf(_model(b_fit, n)) - beta0, 20)}\n"
            )


def render_verify_figures(prefix, table, report):
    """Write <prefix>_b.png and <prefix>_a.png; returns the file list."""
    ns = [n for n, _, _ in table.entries]
    a_vals = [float(a) for _, a, _ in table.entries]
    b_vals = [float(b) for _, _, b in table.entries]
    written = []

    beta0 = float(report.b_fit.coefficient(0))
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.plot(ns, [v - beta0 for v in b_vals], "o", ms=3, label=r"$b_{n,n}-\beta_0$")
    ax.plot(
        ns,
        [_model(report.b_fit, n) - beta0 for n in ns],
        "-",
        lw=1,
        label="inverse-power fit",
    )
    ax.set_xlabel("n")
    ax.set_ylabel(r"$b_{n,n}-\beta_0$")
    ax.legend(frameon=False)
    fig.tight_layout()
    path = f"{prefix}_b.png"
    fig.savefig(path, dpi=150)
    plt.close(fig)
    written.append(path)

    alpha0 = float(report.a_fit.coefficient(0))
    fig, ax = plt.subplots(figsize=(6, 4))
    dev = [abs(v - alpha0) for v in a_vals]
    ax.loglog(ns, [d if d > 0 else None for d in dev], "o", ms=3)
    ax.set_xlabel("n")
    ax.set_ylabel(r"$|a_{n,n}-\alpha_0|$")
    ax.set_title("even-power decay of the a-sequence")
    fig.tight_layout()
    path = f"{prefix}_a.png"
    fig.savefig(path, dpi=150)
    plt.close(fig)
    written.append(path)
    return written
