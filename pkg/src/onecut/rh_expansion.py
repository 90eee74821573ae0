"""Outer parametrix, jump-correction matrices, and the two beta1 routes.

Everything here is an explicit formula in the equilibrium data: the
outer parametrix N(z) built from beta(z) = ((z-b)/(z-a))^(1/4), the
1/n jump corrections Delta_k on circles around the endpoints, the first
correction moments R11 / R12 assembled from the endpoint Laurent data,
and the identity beta1 = (B0 - A0) / (3 (b - a)).

Matrices are carried in Pauli coordinates (I, sigma1, sigma2, sigma3),
which makes the odd/even parity structure of the expansion exact by
construction and directly testable.
"""

from __future__ import annotations

from dataclasses import dataclass

from mpmath import mp

from .equilibrium import (
    EndpointLaurentData,
    EquilibriumMeasure,
    endpoint_laurent,
    phi_endpoint_series,
    reflected_measure,
)
from .errors import CancellationError, DomainError, NotOneCutError
from .potential import Potential
from .precision import working_precision
from .series import poly_eval

# ---------------------------------------------------------------------------
# Pauli coordinates


@dataclass(frozen=True)
class PauliCoefficients:
    """2x2 complex matrix as cI*I + c1*sigma1 + c2*sigma2 + c3*sigma3."""

    cI: object
    c1: object
    c2: object
    c3: object

    @classmethod
    def zero(cls):
        z = mp.mpc(0)
        return cls(z, z, z, z)

    @classmethod
    def from_matrix(cls, mat):
        """Invert the (orthogonal) Pauli decomposition of a 2x2 matrix."""
        a, bb = mat[0, 0], mat[0, 1]
        c, d = mat[1, 0], mat[1, 1]
        return cls(
            cI=(a + d) / 2,
            c1=(bb + c) / 2,
            c2=(bb - c) * mp.mpc(0, 1) / 2,
            c3=(a - d) / 2,
        )

    def to_matrix(self):
        i = mp.mpc(0, 1)
        return mp.matrix(
            [
                [self.cI + self.c3, self.c1 - i * self.c2],
                [self.c1 + i * self.c2, self.cI - self.c3],
            ]
        )

    def __add__(self, other):
        return PauliCoefficients(
            self.cI + other.cI,
            self.c1 + other.c1,
            self.c2 + other.c2,
            self.c3 + other.c3,
        )

    def scale(self, factor):
        return PauliCoefficients(
            factor * self.cI, factor * self.c1, factor * self.c2, factor * self.c3
        )

    def conjugate_sigma3(self):
        """sigma3 M sigma3 flips the sign of the sigma1/sigma2 parts."""
        return PauliCoefficients(self.cI, -self.c1, -self.c2, self.c3)

    def max_abs(self):
        return max(abs(self.cI), abs(self.c1), abs(self.c2), abs(self.c3))


@dataclass(frozen=True)
class R1Moments:
    """1/z and 1/z^2 coefficients at infinity of the first correction."""

    R11: PauliCoefficients
    R12: PauliCoefficients


@dataclass(frozen=True)
class Delta1Laurent:
    """Laurent parts of the first jump correction at both endpoints."""

    b_pole2: PauliCoefficients
    b_pole1: PauliCoefficients
    a_pole2: PauliCoefficients
    a_pole1: PauliCoefficients


# ---------------------------------------------------------------------------
# Outer parametrix


def _beta_squared(m: EquilibriumMeasure, z):
    """beta(z)^2 = sqrt((z-b)/(z-a)); cut on [a, b], positive for z > b."""
    ratio = (mp.mpc(z) - m.b) / (mp.mpc(z) - m.a)
    return mp.sqrt(ratio)


def _check_off_cut(m: EquilibriumMeasure, z):
    zc = mp.mpc(z)
    if zc.imag == 0 and m.a <= zc.real <= m.b:
        raise DomainError("z lies on the support cut [a, b]")


def outer_parametrix(m: EquilibriumMeasure, z):
    """Global parametrix N(z); analytic off [a, b], det N = 1, N(inf) = I."""
    _check_off_cut(m, z)
    beta = mp.sqrt(_beta_squared(m, z))
    i = mp.mpc(0, 1)
    plus = (beta + 1 / beta) / 2
    minus = (beta - 1 / beta) / (2 * i)
    return mp.matrix([[plus, minus], [-minus, plus]])


def outer_expansion_moments(m: EquilibriumMeasure):
    """1/z and 1/z^2 Pauli moments of N(z) at infinity."""
    width = m.b - m.a
    zero = mp.mpc(0)
    n1 = PauliCoefficients(zero, zero, mp.mpc(-width / 4), zero)
    n2 = PauliCoefficients(
        mp.mpc(width * width / 32),
        zero,
        mp.mpc(-(m.b * m.b - m.a * m.a) / 8),
        zero,
    )
    return n1, n2


# ---------------------------------------------------------------------------
# Gamma constants at half-integers


def gamma_half_integer(j: int):
    """Gamma(j + 1/2) = sqrt(pi) (2j-1)!! / 2^j for integer j >= 0."""
    if j < 0:
        raise ValueError("gamma_half_integer needs j >= 0")
    num = 1
    for k in range(1, 2 * j, 2):
        num *= k
    return mp.sqrt(mp.pi) * num / mp.mpf(2) ** j


def _delta_constants(k: int):
    """Scalar prefactors of the Delta_k formulas (b side).

    Returns (cI, c2) for even k or (c_plus, c_minus) for odd k, where
    c_plus multiplies beta^2 (sigma3 + i sigma1) and c_minus multiplies
    beta^-2 (sigma3 - i sigma1); the common factor phi^-k is applied by
    the caller.
    """
    g_top = gamma_half_integer(3 * k)  # Gamma(3k + 1/2)
    g_low = gamma_half_integer(3 * k - 2)  # Gamma(3k - 3/2)
    fact_2k = mp.factorial(2 * k)
    fact_2k2 = mp.factorial(2 * k - 2)
    nine_k = mp.mpf(9) ** k
    nine_k1 = mp.mpf(9) ** (k - 1)
    top = g_top / (nine_k * fact_2k)
    low = g_low / (nine_k1 * fact_2k2)
    if k % 2 == 0:
        c_i = (top - low / 4) / mp.sqrt(mp.pi)
        c_2 = -low / (4 * mp.sqrt(mp.pi))
        return c_i, c_2
    c_plus = -(top - low / 2) / (2 * mp.sqrt(mp.pi))
    c_minus = -top / (2 * mp.sqrt(mp.pi))
    return c_plus, c_minus


def _phi_series_factor(m: EquilibriumMeasure, z, nterms: int):
    """(v, S(v)) with phi(z) = v^{3/2} S(v), v = z - b; raises off-disk.

    Splitting off the half-integer power keeps the Delta_k assembly
    single-valued: the branch factors of beta^{+-2} and phi^{-k} cancel
    into integer powers of v, so Delta_k is genuinely meromorphic at b.
    """
    v = mp.mpc(z) - m.b
    radius = min(m.width, m.h.singularity_distance(m.b))
    if abs(v) >= mp.mpf("0.8") * radius:
        raise DomainError("z is outside the guaranteed convergence disk of phi's series")
    f = phi_endpoint_series(m, nterms, side="b")
    return v, poly_eval(f, v)


def _phi_near_edge(m: EquilibriumMeasure, z, nterms: int):
    """phi(z) near b from the endpoint Taylor series (principal branch)."""
    v, s = _phi_series_factor(m, z, nterms)
    return v ** mp.mpf("1.5") * s


def delta_k(
    m: EquilibriumMeasure,
    p: Potential,
    z,
    k: int,
    endpoint: str = "b",
    nterms: int = 48,
    prec: int | None = None,
) -> PauliCoefficients:
    """Jump-correction matrix Delta_k(z) near b, or its a-side analogue.

    Odd k lives in span{sigma1, sigma3}, even k in span{I, sigma2}.  The
    a-side matrix comes from the b-side one of the reflected measure,
    evaluated at the reflected point and conjugated by sigma3.
    """
    if k < 1:
        raise ValueError("order k must be a positive integer")
    if endpoint not in ("a", "b"):
        raise ValueError("endpoint must be 'a' or 'b'")
    with working_precision(prec, guard=32):
        if endpoint == "a":
            refl = reflected_measure(m)
            inner = delta_k(
                refl, p, m.a + m.b - mp.mpc(z), k, endpoint="b", nterms=nterms, prec=prec
            )
            return inner.conjugate_sigma3()
        v, s = _phi_series_factor(m, z, nterms)
        if v == 0:
            raise DomainError("Delta_k has a pole at the endpoint itself")
        common = (mp.mpf(3) / 2 * s) ** (-k)
        zero = mp.mpc(0)
        i = mp.mpc(0, 1)
        if k % 2 == 0:
            # phi^{-k} = v^{-3k/2} S^{-k}; 3k/2 is an integer here
            scale = common * v ** (-(3 * k // 2))
            c_i, c_2 = _delta_constants(k)
            return PauliCoefficients(c_i * scale, zero, c_2 * scale, zero)
        c_plus, c_minus = _delta_constants(k)
        root_za = mp.sqrt(mp.mpc(z) - m.a)  # analytic in the disk around b
        # beta^2 phi^-k = v^{(1-3k)/2} (z-a)^{-1/2} S^-k  (integer exponent)
        plus = c_plus * common * v ** ((1 - 3 * k) // 2) / root_za
        minus = c_minus * common * v ** (-(1 + 3 * k) // 2) * root_za
        # plus * (sigma3 + i sigma1) + minus * (sigma3 - i sigma1)
        return PauliCoefficients(zero, i * (plus - minus), zero, plus + minus)


# ---------------------------------------------------------------------------
# Laurent parts of Delta_1 and the R1 moments


def _sigma3_plus_i_sigma1(coeff):
    i = mp.mpc(0, 1)
    return PauliCoefficients(mp.mpc(0), i * mp.mpc(coeff), mp.mpc(0), mp.mpc(coeff))


def _sigma3_minus_i_sigma1(coeff):
    i = mp.mpc(0, 1)
    return PauliCoefficients(mp.mpc(0), -i * mp.mpc(coeff), mp.mpc(0), mp.mpc(coeff))


def delta1_laurent(
    m: EquilibriumMeasure,
    p: Potential,
    data: EndpointLaurentData | None = None,
    prec: int | None = None,
) -> Delta1Laurent:
    """Pole parts of Delta_1 at b and of its mirror at a.

    At b:   -(5 B0/144)(s3 - i s1)/(z-b)^2
            + [-(5 B1/144)(s3 - i s1) + (7 B0/(144(b-a)))(s3 + i s1)]/(z-b)
    at a:   -(5 A0/144)(s3 + i s1)/(z-a)^2
            + [-(5 A1/144)(s3 + i s1) - (7 A0/(144(b-a)))(s3 - i s1)]/(z-a)
    """
    if data is None:
        data = endpoint_laurent(m, p, prec=prec)
    with working_precision(prec, guard=32):
        width = m.width
        f5 = mp.mpf(5) / 144
        f7 = mp.mpf(7) / 144
        b_pole2 = _sigma3_minus_i_sigma1(-f5 * data.B0)
        b_pole1 = _sigma3_minus_i_sigma1(-f5 * data.B1) + _sigma3_plus_i_sigma1(
            f7 * data.B0 / width
        )
        a_pole2 = _sigma3_plus_i_sigma1(-f5 * data.A0)
        a_pole1 = _sigma3_plus_i_sigma1(-f5 * data.A1) + _sigma3_minus_i_sigma1(
            -f7 * data.A0 / width
        )
        return Delta1Laurent(
            b_pole2=b_pole2, b_pole1=b_pole1, a_pole2=a_pole2, a_pole1=a_pole1
        )


def r1_moments(
    m: EquilibriumMeasure,
    p: Potential,
    data: EndpointLaurentData | None = None,
    prec: int | None = None,
) -> R1Moments:
    """R11 and R12 from the sum of endpoint Laurent parts.

    A sum of c/(z-x0) + d/(z-x0)^2 terms expands at infinity as
    (sum c)/z + (sum (x0 c + d))/z^2, which gives both moments directly.
    """
    parts = delta1_laurent(m, p, data=data, prec=prec)
    r11 = parts.b_pole1 + parts.a_pole1
    r12 = (
        parts.b_pole1.scale(mp.mpc(m.b))
        + parts.a_pole1.scale(mp.mpc(m.a))
        + parts.b_pole2
        + parts.a_pole2
    )
    return R1Moments(R11=r11, R12=r12)


# ---------------------------------------------------------------------------
# beta1


def beta1_closed(m: EquilibriumMeasure, prec: int | None = None):
    """Closed form (1/(2 pi (b-a))) (1/h(b) - 1/h(a)); zero iff h(a)=h(b)."""
    if m.regular is False:
        raise NotOneCutError("beta1 requires a regular measure")
    with working_precision(prec, guard=32):
        return (1 / m.h.value(m.b) - 1 / m.h.value(m.a)) / (2 * mp.pi * m.width)


def beta1_via_R(
    m: EquilibriumMeasure,
    p: Potential,
    data: EndpointLaurentData | None = None,
    prec: int | None = None,
):
    """beta1 assembled from the R1 moments:

        2 R11_s3 - (4/(b-a)) i R12_s1 + (2(b+a)/(b-a)) i R11_s1.

    The imaginary part must cancel to roundoff and the real part must
    equal (B0 - A0)/(3(b-a)); a CancellationError flags a violation,
    since the A1/B1 dependence is known to drop out identically.
    """
    if m.regular is False:
        raise NotOneCutError("beta1 requires a regular measure")
    with working_precision(prec, guard=32):
        if data is None:
            data = endpoint_laurent(m, p, prec=prec)
        mom = r1_moments(m, p, data=data, prec=prec)
        i = mp.mpc(0, 1)
        width = m.width
        total = (
            2 * mom.R11.c3
            - 4 / width * i * mom.R12.c1
            + 2 * (m.b + m.a) / width * i * mom.R11.c1
        )
        scale = max(1, mom.R11.max_abs(), mom.R12.max_abs())
        if abs(total.imag) > mp.mpf(10) ** (-25) * scale:
            raise CancellationError("imaginary part of the beta1 assembly failed to cancel")
        simplified = (data.B0 - data.A0) / (3 * width)
        if abs(total.real - simplified) > mp.mpf(10) ** (-20) * max(1, abs(simplified)):
            raise CancellationError(
                "beta1 assembly disagrees with its simplified form; "
                "the A1/B1 cancellation is broken"
            )
        return total.real


# ---------------------------------------------------------------------------
# Circle-sampling Laurent extraction (consistency oracle)


def laurent_coefficients_by_sampling(fn, center, radius, orders, samples: int = 64):
    """Laurent coefficients of a matrix-valued fn on a circle around center.

    Discrete Fourier extraction: the trapezoid rule on the circle is the
    least-squares fit in the (orthogonal) Laurent basis.  ``fn`` maps z to
    PauliCoefficients; returns {order: PauliCoefficients}.
    """
    vals = []
    points = []
    for j in range(samples):
        theta = 2 * mp.pi * j / samples
        z = center + radius * mp.expjpi(2 * mp.mpf(j) / samples)
        points.append(z - center)
        vals.append(fn(z))
    out = {}
    for order in orders:
        comps = []
        for attr in ("cI", "c1", "c2", "c3"):
            acc = mp.mpc(0)
            for dz, v in zip(points, vals):
                acc += getattr(v, attr) * dz ** (-order)
            comps.append(acc / samples)
        out[order] = PauliCoefficients(*comps)
    return out
