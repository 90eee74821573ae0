import pytest
from mpmath import mp

import onecut as oc
from onecut.errors import DomainError

TIGHT = mp.mpf("1e-40")


class TestSemicircle:
    def test_endpoints(self, semicircle):
        a, b = oc.solve_endpoints(semicircle)
        assert abs(a + 2) < TIGHT
        assert abs(b - 2) < TIGHT

    def test_h_is_constant(self, semicircle_measure):
        m = semicircle_measure
        for x in (mp.mpf("-1.9"), mp.mpf(0), mp.mpf("0.77"), mp.mpf(2)):
            assert abs(m.h.value(x) - 1 / (2 * mp.pi)) < TIGHT

    def test_density_at_zero(self, semicircle_measure):
        # semicircle density 1/(2 pi) sqrt(4 - x^2)
        got = oc.equilibrium_density(semicircle_measure, mp.mpf(1))
        assert abs(got - mp.sqrt(3) / (2 * mp.pi)) < TIGHT

    def test_normalization(self, semicircle_measure):
        assert abs(oc.normalization_residual(semicircle_measure)) < mp.mpf("1e-30")

    def test_lagrange_constant(self, semicircle, semicircle_measure):
        # V(0) - 2 int log|y| dmu_sc(y) = 0 - 2(-1/2) = 1
        ell = oc.lagrange_constant(semicircle_measure, semicircle)
        assert abs(ell - 1) < mp.mpf("1e-20")

    def test_phi_against_antiderivative(self, semicircle, semicircle_measure):
        # phi(x) = (1/2) int_2^x sqrt(s^2-4) ds for x > 2
        x = mp.mpf(3)
        r = mp.sqrt(x * x - 4)
        oracle = (x * r / 2 - 2 * mp.log((x + r) / 2)) / 2
        got = oc.phi_real(semicircle_measure, semicircle, x)
        assert abs(got - oracle) < mp.mpf("1e-30")

    def test_tilde_phi_mirror(self, semicircle, semicircle_measure):
        left = oc.tilde_phi_real(semicircle_measure, semicircle, mp.mpf(-3))
        right = oc.phi_real(semicircle_measure, semicircle, mp.mpf(3))
        assert abs(left - right) < mp.mpf("1e-30")

    def test_regular(self, semicircle_measure):
        assert semicircle_measure.regular
        assert semicircle_measure.report.regular


class TestQuartic:
    def test_endpoints(self, quartic_measure):
        c = (mp.mpf(16) / 3) ** (mp.mpf(1) / 4)
        assert abs(quartic_measure.b - c) < TIGHT
        assert abs(quartic_measure.a + c) < TIGHT

    def test_h_closed_form(self, quartic_measure):
        # h(x) = (x^2 + c^2/2) / (2 pi) with c the right endpoint
        c = quartic_measure.b
        for x in (mp.mpf(0), mp.mpf("0.6"), c):
            expect = (x * x + c * c / 2) / (2 * mp.pi)
            assert abs(quartic_measure.h.value(x) - expect) < TIGHT

    def test_normalization(self, quartic_measure):
        assert abs(oc.normalization_residual(quartic_measure)) < mp.mpf("1e-30")


class TestJacobi:
    def test_endpoints_closed_form(self, jacobi12_measure):
        m = jacobi12_measure
        # closed form for A=1, B=2: a+b = 0.24 and the explicit radicals
        s = mp.mpf(2) + 1 + 2
        disc = 4 * mp.sqrt((1 + 1 + 2) * (1 + 1) * (1 + 2))
        a_ref = (mp.mpf(4) - 1 - disc) / (s * s)
        b_ref = (mp.mpf(4) - 1 + disc) / (s * s)
        assert abs(m.a - a_ref) < TIGHT
        assert abs(m.b - b_ref) < TIGHT
        assert abs(m.a + m.b - mp.mpf("0.24")) < TIGHT

    def test_h_closed_form(self, jacobi12_measure):
        m = jacobi12_measure
        for x in (mp.mpf("-0.5"), mp.mpf(0), mp.mpf("0.8")):
            expect = (2 + 1 + 2) / (2 * mp.pi * (1 - x * x))
            assert abs(m.h.value(x) - expect) < mp.mpf("1e-35")

    def test_normalization(self, jacobi12_measure):
        assert abs(oc.normalization_residual(jacobi12_measure)) < mp.mpf("1e-30")

    def test_regular(self, jacobi12_measure):
        assert jacobi12_measure.regular


class TestRegularityDetection:
    def test_double_well_fails(self):
        # V = x^4/4 - x^2 has h(x) = x^2/(2 pi): a zero at the midpoint
        p = oc.polynomial_potential([0, 0, -1, 0, mp.mpf(1) / 4])
        m = oc.solve_equilibrium(p)
        assert not m.regular
        assert m.report.h_min < mp.mpf("1e-30")

    def test_asymmetric_is_regular(self, asym_measure):
        assert asym_measure.regular


class TestEndpointSeries:
    def test_semicircle_values(self, semicircle, semicircle_measure):
        data = oc.endpoint_laurent(semicircle_measure, semicircle)
        assert abs(data.B0 - 3) < mp.mpf("1e-50")
        assert abs(data.B1 - mp.mpf(3) / 20) < mp.mpf("1e-50")
        assert abs(data.A0 - 3) < mp.mpf("1e-50")
        assert abs(data.A1 + mp.mpf(3) / 20) < mp.mpf("1e-50")

    def test_leading_coefficient_identity(self, asym_quartic, asym_measure):
        m = asym_measure
        data = oc.endpoint_laurent(m, asym_quartic)
        assert abs(data.B0 - 3 / (2 * mp.pi * m.h.value(m.b))) < mp.mpf("1e-45")
        assert abs(data.A0 - 3 / (2 * mp.pi * m.h.value(m.a))) < mp.mpf("1e-45")

    def test_even_field_mirror_symmetry(self, quartic, quartic_measure):
        data = oc.endpoint_laurent(quartic_measure, quartic)
        assert abs(data.A0 - data.B0) < mp.mpf("1e-45")
        assert abs(data.A1 + data.B1) < mp.mpf("1e-45")

    def test_phi_series_matches_quadrature(self, asym_quartic, asym_measure):
        # phi(b + v) = v^{3/2} * series(v) must agree with direct quadrature
        m = asym_measure
        f = oc.phi_endpoint_series(m, 48, side="b")
        v = mp.mpf("0.05")
        from onecut.series import poly_eval

        series_val = v ** mp.mpf("1.5") * poly_eval(f, v)
        quad_val = oc.phi_real(m, asym_quartic, m.b + v)
        assert abs(series_val - quad_val) < mp.mpf("1e-30")


class TestReflection:
    def test_reflected_measure(self, asym_quartic, asym_measure):
        m = asym_measure
        r = oc.reflected_measure(m)
        # the support is unchanged; h is mirrored through the midpoint
        assert r.a == m.a and r.b == m.b
        x = mp.mpf("0.3")
        assert abs(r.h.value(x) - m.h.value(m.a + m.b - x)) < mp.mpf("1e-40")


def test_phi_real_rejects_interior(semicircle, semicircle_measure):
    with pytest.raises(DomainError):
        oc.phi_real(semicircle_measure, semicircle, mp.mpf(0))
