"""Shared fixtures.

Recurrence tables are expensive (seconds each), so every table used by
more than one test is computed once per session here.
"""

from __future__ import annotations

import pytest
from mpmath import mp

import onecut as oc

mp.prec = 256


@pytest.fixture(scope="session")
def cfg():
    return oc.PrecisionConfig.default()


@pytest.fixture(scope="session")
def semicircle():
    return oc.polynomial_potential([0, 0, mp.mpf(1) / 2])


@pytest.fixture(scope="session")
def semicircle_measure(semicircle):
    return oc.solve_equilibrium(semicircle)


@pytest.fixture(scope="session")
def semicircle_table(semicircle, cfg):
    return oc.compute_recurrence(semicircle, 40, cfg)


@pytest.fixture(scope="session")
def quartic():
    return oc.polynomial_potential([0, 0, 0, 0, mp.mpf(1) / 4])


@pytest.fixture(scope="session")
def quartic_measure(quartic):
    return oc.solve_equilibrium(quartic)


@pytest.fixture(scope="session")
def quartic_table(quartic, cfg):
    return oc.compute_recurrence(quartic, 64, cfg)


@pytest.fixture(scope="session")
def asym_quartic():
    return oc.polynomial_potential([0, 0, 0, mp.mpf("0.1"), mp.mpf(1) / 4])


@pytest.fixture(scope="session")
def asym_measure(asym_quartic):
    return oc.solve_equilibrium(asym_quartic)


@pytest.fixture(scope="session")
def asym_table(asym_quartic, cfg):
    return oc.compute_recurrence(asym_quartic, 64, cfg)


@pytest.fixture(scope="session")
def jacobi12():
    return oc.jacobi_potential(1, 2)


@pytest.fixture(scope="session")
def jacobi12_measure(jacobi12):
    return oc.solve_equilibrium(jacobi12)


@pytest.fixture(scope="session")
def jacobi12_table(jacobi12, cfg):
    return oc.compute_recurrence(jacobi12, 64, cfg)
