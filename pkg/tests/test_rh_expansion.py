import pytest
from mpmath import mp

import onecut as oc
from onecut.errors import DomainError
from onecut.rh_expansion import gamma_half_integer


class TestPauli:
    def test_roundtrip(self):
        mat = mp.matrix([[mp.mpc(1, 2), mp.mpc(3, -1)], [mp.mpc(0, 4), mp.mpc(-2, 5)]])
        pc = oc.PauliCoefficients.from_matrix(mat)
        back = pc.to_matrix()
        for i in range(2):
            for j in range(2):
                assert abs(back[i, j] - mat[i, j]) < mp.mpf("1e-70")

    def test_sigma3_conjugation_flips_off_diagonal(self):
        pc = oc.PauliCoefficients(mp.mpc(1), mp.mpc(2), mp.mpc(3), mp.mpc(4))
        conj = pc.conjugate_sigma3()
        assert conj.cI == pc.cI and conj.c3 == pc.c3
        assert conj.c1 == -pc.c1 and conj.c2 == -pc.c2


class TestGamma:
    def test_half_integer_values(self):
        for j in range(0, 12):
            assert abs(gamma_half_integer(j) - mp.gamma(j + mp.mpf(1) / 2)) < mp.mpf(
                "1e-70"
            ) * mp.gamma(j + mp.mpf(1) / 2)


class TestOuterParametrix:
    def test_identity_at_infinity(self, semicircle_measure):
        n = oc.outer_parametrix(semicircle_measure, mp.mpf("1e8"))
        assert abs(n[0, 0] - 1) < mp.mpf("1e-7")
        assert abs(n[0, 1]) < mp.mpf("1e-7")

    def test_unit_determinant(self, asym_measure):
        for z in (mp.mpc(2, 1), mp.mpc(-3, -2), mp.mpc(0, mp.mpf("0.1"))):
            n = oc.outer_parametrix(asym_measure, z)
            det = n[0, 0] * n[1, 1] - n[0, 1] * n[1, 0]
            assert abs(det - 1) < mp.mpf("1e-70")

    def test_rejects_cut(self, semicircle_measure):
        with pytest.raises(DomainError):
            oc.outer_parametrix(semicircle_measure, mp.mpf(0))

    def test_moments_match_sampled_expansion(self, asym_measure):
        # N(z) ~ I + N1/z + N2/z^2: check against finite differences on a circle
        n1, n2 = oc.outer_expansion_moments(asym_measure)
        got = oc.laurent_coefficients_by_sampling(
            lambda z: oc.PauliCoefficients.from_matrix(oc.outer_parametrix(asym_measure, z)),
            mp.mpf(0),
            mp.mpf(40),
            [-1, -2],
            samples=128,
        )
        for ref, order in ((n1, -1), (n2, -2)):
            pc = got[order]
            for attr in ("cI", "c1", "c2", "c3"):
                assert abs(getattr(pc, attr) - getattr(ref, attr)) < mp.mpf("1e-20")


class TestDeltaParity:
    def test_parity_exact(self, asym_measure, asym_quartic):
        m, p = asym_measure, asym_quartic
        pts = [m.b + mp.mpc(mp.cos(t), mp.sin(t)) * mp.mpf("0.15") * m.width
               for t in (0.3, 1.1, 2.0, 2.9, 4.0, 5.2)]
        for k in range(1, 7):
            for z in pts:
                d = oc.delta_k(m, p, z, k)
                if k % 2 == 1:
                    assert d.cI == 0 and d.c2 == 0
                else:
                    assert d.c1 == 0 and d.c3 == 0

    def test_rejects_outside_disk(self, semicircle_measure, semicircle):
        with pytest.raises(DomainError):
            oc.delta_k(semicircle_measure, semicircle, mp.mpf(30), 1)


class TestDelta1Laurent:
    def test_circle_fit_b_side(self, asym_measure, asym_quartic):
        m, p = asym_measure, asym_quartic
        lau = oc.delta1_laurent(m, p)
        got = oc.laurent_coefficients_by_sampling(
            lambda z: oc.delta_k(m, p, z, 1),
            m.b,
            mp.mpf("0.2") * m.width,
            [-2, -1],
            samples=96,
        )
        for order, ref in ((-1, lau.b_pole1), (-2, lau.b_pole2)):
            pc = got[order]
            for attr in ("cI", "c1", "c2", "c3"):
                assert abs(getattr(pc, attr) - getattr(ref, attr)) < mp.mpf("1e-30")

    def test_circle_fit_a_side(self, asym_measure, asym_quartic):
        m, p = asym_measure, asym_quartic
        lau = oc.delta1_laurent(m, p)
        got = oc.laurent_coefficients_by_sampling(
            lambda z: oc.delta_k(m, p, z, 1, endpoint="a"),
            m.a,
            mp.mpf("0.2") * m.width,
            [-2, -1],
            samples=96,
        )
        for order, ref in ((-1, lau.a_pole1), (-2, lau.a_pole2)):
            pc = got[order]
            for attr in ("cI", "c1", "c2", "c3"):
                assert abs(getattr(pc, attr) - getattr(ref, attr)) < mp.mpf("1e-30")

    def test_regular_part_bounded(self, semicircle_measure, semicircle):
        # Delta_1 minus its pole parts must stay bounded near b
        m, p = semicircle_measure, semicircle
        lau = oc.delta1_laurent(m, p)
        for eps in (mp.mpf("1e-3"), mp.mpf("1e-5")):
            z = m.b + eps
            d = oc.delta_k(m, p, z, 1)
            pole = lau.b_pole1.scale(1 / eps) + lau.b_pole2.scale(1 / eps**2)
            rest = max(
                abs(d.cI - pole.cI),
                abs(d.c1 - pole.c1),
                abs(d.c2 - pole.c2),
                abs(d.c3 - pole.c3),
            )
            assert rest < 10


class TestBeta1:
    def test_semicircle_zero(self, semicircle_measure, semicircle):
        assert abs(oc.beta1_closed(semicircle_measure)) < mp.mpf("1e-40")
        assert abs(oc.beta1_via_R(semicircle_measure, semicircle)) < mp.mpf("1e-40")

    def test_jacobi_closed_form(self, jacobi12_measure):
        # beta1 = -(a+b)/5 for the Jacobi family; here a+b = 0.24
        assert abs(oc.beta1_closed(jacobi12_measure) + mp.mpf("0.048")) < mp.mpf("1e-40")

    def test_routes_agree_asymmetric(self, asym_measure, asym_quartic):
        closed = oc.beta1_closed(asym_measure)
        via_r = oc.beta1_via_R(asym_measure, asym_quartic)
        assert abs(closed - via_r) < mp.mpf("1e-25")
        assert closed != 0

    def test_closed_form_is_h_difference(self, asym_measure):
        m = asym_measure
        expect = (1 / m.h.value(m.b) - 1 / m.h.value(m.a)) / (2 * mp.pi * (m.b - m.a))
        assert abs(oc.beta1_closed(m) - expect) < mp.mpf("1e-40")


class TestR1Moments:
    def test_r11_structure(self, asym_measure, asym_quartic):
        mom = oc.r1_moments(asym_measure, asym_quartic)
        # diagonal moments are real multiples of sigma3 plus imaginary sigma1
        for pc in (mom.R11, mom.R12):
            assert abs(pc.cI) < mp.mpf("1e-40")
            assert abs(pc.c2) < mp.mpf("1e-40")
            assert abs(pc.c3.imag) < mp.mpf("1e-40")
            assert abs(pc.c1.real) < mp.mpf("1e-40")
