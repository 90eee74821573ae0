import pytest
from mpmath import mp

import onecut as oc
from onecut.errors import DomainError, NotOneCutError, PrecisionError
from onecut.recurrence import legendre_nodes


class TestLegendreNodes:
    def test_quadrature_exactness(self):
        # 8-point rule integrates x^14 exactly on [-1, 1]
        xs, ws = legendre_nodes(8, 256)
        got = sum(w * x**14 for x, w in zip(xs, ws))
        assert abs(got - mp.mpf(2) / 15) < mp.mpf("1e-70")

    def test_weights_sum_to_two(self):
        xs, ws = legendre_nodes(64, 256)
        assert abs(sum(ws) - 2) < mp.mpf("1e-70")


class TestSemicircleRecurrence:
    def test_exact_values(self, semicircle_table):
        # monic Hermite for exp(-n x^2/2): a_nn = 1, b_nn = 0 exactly
        for n, a_nn, b_nn in semicircle_table.entries:
            assert abs(a_nn - 1) < mp.mpf("1e-25")
            assert abs(b_nn) < mp.mpf("1e-25")


class TestJacobiRecurrence:
    def test_closed_form_n10(self, jacobi12_table):
        n, a_nn, b_nn = jacobi12_table.entries[9]
        assert n == 10
        assert abs(a_nn - mp.mpf(96) / mp.mpf("624.75")) < mp.mpf("1e-25")
        assert abs(b_nn - mp.mpf(3) / 26) < mp.mpf("1e-25")

    def test_closed_form_all_n(self, jacobi12_table):
        for n, a_nn, b_nn in jacobi12_table.entries:
            a_ref, b_ref = oc.jacobi_recurrence_closed(1, 2, n)
            assert abs(a_nn - a_ref) < mp.mpf("1e-25") * a_ref
            assert abs(b_nn - b_ref) < mp.mpf("1e-25")


class TestHankelOracle:
    def test_matches_stieltjes_quartic(self, quartic, quartic_table):
        oracle = oc.hankel_oracle(quartic, 8)
        for (n1, a1, b1), (n2, a2, b2) in zip(quartic_table.entries, oracle.entries):
            assert n1 == n2
            assert abs(a1 - a2) / a2 < mp.mpf("1e-12")
            assert abs(b1 - b2) < mp.mpf("1e-12")

    def test_matches_stieltjes_jacobi(self, jacobi12, jacobi12_table):
        oracle = oc.hankel_oracle(jacobi12, 8)
        for (n1, a1, b1), (n2, a2, b2) in zip(jacobi12_table.entries, oracle.entries):
            assert abs(a1 - a2) / a2 < mp.mpf("1e-12")
            assert abs(b1 - b2) / abs(b2) < mp.mpf("1e-12")

    def test_rejects_large_n(self, quartic):
        with pytest.raises(DomainError):
            oc.hankel_oracle(quartic, 11)


class TestTableHygiene:
    def test_metadata(self, jacobi12_table):
        assert jacobi12_table.precision_bits == 256
        assert jacobi12_table.node_count > 0
        assert jacobi12_table.potential_spec.startswith("jacobi:")

    def test_sequences(self, jacobi12_table):
        ns = jacobi12_table.ns()
        assert ns == list(range(1, 65))
        assert len(jacobi12_table.a_sequence()) == 64

    def test_validate_rejects_gap(self):
        t = oc.RecurrenceTable(entries=[(1, mp.mpf(1), mp.mpf(0)), (3, mp.mpf(1), mp.mpf(0))])
        with pytest.raises(PrecisionError):
            t.validate()

    def test_validate_rejects_nonpositive_a(self):
        t = oc.RecurrenceTable(entries=[(1, mp.mpf(-1), mp.mpf(0))])
        with pytest.raises(PrecisionError):
            t.validate()


class TestGuards:
    def test_n_max_validation(self, quartic, cfg):
        with pytest.raises(DomainError):
            oc.compute_recurrence(quartic, 0, cfg)

    def test_regularity_gate(self, cfg):
        p = oc.polynomial_potential([0, 0, -1, 0, mp.mpf(1) / 4])  # double well
        with pytest.raises(NotOneCutError):
            oc.compute_recurrence(p, 4, cfg, check_regularity=True)


class TestJacobiClosedForm:
    def test_limits(self):
        # n -> infinity: a -> (b-a)^2/16, b -> (a+b)/2 for A=1, B=2
        a_inf, b_inf = oc.jacobi_recurrence_closed(1, 2, 10**12)
        from onecut.equilibrium import jacobi_endpoints

        a_end, b_end = jacobi_endpoints(mp.mpf(1), mp.mpf(2))
        assert abs(a_inf - (b_end - a_end) ** 2 / 16) < mp.mpf("1e-10")
        assert abs(b_inf - (a_end + b_end) / 2) < mp.mpf("1e-10")

    def test_rejects_bad_args(self):
        with pytest.raises(DomainError):
            oc.jacobi_recurrence_closed(1, 2, 0)
        with pytest.raises(DomainError):
            oc.jacobi_recurrence_closed(-1, 2, 5)
