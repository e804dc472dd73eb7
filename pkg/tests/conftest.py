"""Shared fixtures: one certified basis per shipped weight.

``build_basis`` caches by (measure, n_max), so these fixtures mostly make the
dependency explicit; session scope keeps the Gram certification out of
individual test timings.
"""

import pytest

from ohpade import build_basis, circle_measure, interval_measure

N_MAX = 60


@pytest.fixture(scope="session")
def circle_basis():
    return build_basis(circle_measure(), n_max=N_MAX)


@pytest.fixture(scope="session")
def cheb_basis():
    return build_basis(interval_measure("chebyshev"), n_max=N_MAX)


@pytest.fixture(scope="session")
def legendre_basis():
    return build_basis(interval_measure("legendre"), n_max=N_MAX)


@pytest.fixture(scope="session")
def jacobi_basis():
    return build_basis(interval_measure("jacobi", alpha=0.5, beta=-0.25), n_max=N_MAX)
