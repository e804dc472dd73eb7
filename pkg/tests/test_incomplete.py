"""Underdetermined denominators and pole-capture traces."""

import numpy as np
import pytest

from ohpade import (
    CoeffTable,
    InsufficientDataError,
    ParameterError,
    flat_zeros,
    from_terms,
    incomplete_matrix,
    matched_distance,
    pole,
    pole_capture_trace,
    solve_hp,
    solve_incomplete,
    system,
)
from ohpade.functions import LogTerm, PoleTerm


def test_parameter_validation(circle_basis):
    fn = pole(a=2.0)
    with pytest.raises(ParameterError):
        solve_incomplete(circle_basis, fn, m=2, m_star=3, n=10)
    with pytest.raises(ParameterError):
        solve_incomplete(circle_basis, fn, m=2, m_star=0, n=10)
    with pytest.raises(ParameterError):
        solve_incomplete(circle_basis, fn, m=2, m_star=1, n=-1)


def test_incomplete_matrix_shape(circle_basis):
    table = CoeffTable(circle_basis, pole(a=2.0))
    matrix = incomplete_matrix(table, n=10, m=3, m_star=2)
    assert matrix.shape == (2, 4)
    assert matrix[1, 2] == pytest.approx(complex(table.value(3, 10)), rel=1e-13)


def test_full_conditions_match_complete_solver(circle_basis):
    """With m_star = m the underdetermined path reduces to the standard one."""
    fn = from_terms(PoleTerm(a=1.2), PoleTerm(a=2.0))
    sys = system([fn], (1,))
    for n in (10, 15, 20):
        den_full, _ = solve_hp(circle_basis, sys, n)
        den_inc = solve_incomplete(circle_basis, fn, m=1, m_star=1, n=n)
        assert np.max(np.abs(den_full.q - den_inc.q)) < 1e-12


def test_exact_capture_rational(circle_basis):
    """F = 1/(z-2), m = 2, m* = 1: every representative has a zero at 2.

    The single condition reads Q(2) 2^(-n-1) = 0, so the nullspace is the
    multiples of (z - 2) (dimension 2) and capture is exact at finite n.
    """
    fn = pole(a=2.0)
    for n in (10, 20, 30):
        den = solve_incomplete(circle_basis, fn, m=2, m_star=1, n=n)
        assert den.nullspace_dim == 2
        dist = min(abs(z - 2.0) for z in flat_zeros(den.q))
        assert dist < 1e-8


def test_coefficient_stream_terminates(circle_basis):
    """With Q = z - 2 multiplying F = 1/(z-2), the product is entire (constant),
    so the defining stream [QF]_n dies off identically for n >= 1."""
    fn = pole(a=2.0)
    table = CoeffTable(circle_basis, fn)
    q = np.array([-2.0, 1.0])
    for n in (5, 12, 25):
        stream = q[0] * table.value(0, n) + q[1] * table.value(1, n)
        assert abs(stream) < 1e-13


def test_capture_trace_log_branch(circle_basis):
    """One zero locks onto the pole at rate |pole| / |branch| = 0.5."""
    fn = from_terms(PoleTerm(a=1.5), LogTerm(a=3.0))
    trace = pole_capture_trace(
        circle_basis, fn, m=2, m_star=1, ns=range(10, 31), targets=(1.5,)
    )
    assert trace.rate == pytest.approx(0.5, abs=0.05)
    assert float(trace.distances[-1]) < 1e-4
    assert np.all(trace.nullspace_dims == 2)
    # zero_rows exposes one row per zero per order
    rows = list(trace.zero_rows())
    assert len(rows) == sum(len(zs) for zs in trace.zeros_per_n)
    n0, z0, d0, dim0 = rows[0]
    assert n0 == 10 and dim0 == 2 and d0 == abs(z0 - 1.5)


def test_capture_trace_exact_mode(circle_basis):
    """Rational target: distances at the floor everywhere, rate reported 0."""
    trace = pole_capture_trace(
        circle_basis, pole(a=2.0), m=2, m_star=1, ns=range(10, 21), targets=(2.0,)
    )
    assert trace.rate == 0.0
    assert float(np.max(trace.distances)) <= 1e-9


def test_capture_trace_target_count_validation(circle_basis):
    with pytest.raises(ParameterError):
        pole_capture_trace(
            circle_basis, pole(a=2.0), m=2, m_star=1, ns=range(10, 21), targets=(2.0, 3.0)
        )


def test_capture_trace_insufficient_data(circle_basis):
    """Two orders cannot support a rate fit nor an exact-capture call."""
    fn = from_terms(PoleTerm(a=1.5), LogTerm(a=3.0))
    with pytest.raises(InsufficientDataError):
        pole_capture_trace(circle_basis, fn, m=2, m_star=1, ns=[10, 11], targets=(1.5,))


# -- matched_distance ---------------------------------------------------------


def test_matched_distance_assignment():
    zeros = [2.0 + 0.0j, 5.0 + 0.0j]
    targets = [2.1 + 0.0j]
    # the optimal assignment picks the close zero, not the spare one
    assert matched_distance(zeros, targets) == pytest.approx(0.1)
    # each target needs a distinct zero
    assert matched_distance([2.0], [2.0, 2.0]) == float("inf")
    assert matched_distance([2.05, 1.95], [2.0, 2.0]) == pytest.approx(0.05)
    assert matched_distance([1.0, 2.0], []) == 0.0


def test_matched_distance_cross_assignment():
    """The worst pair under the best assignment, not a greedy match."""
    zeros = [0.0 + 0.0j, 1.0 + 0.0j]
    targets = [0.9 + 0.0j, 0.1 + 0.0j]
    # greedy from the first target would pick the zero at 1.0 (cost 0.1) and
    # leave 0.1 -> 0.0; optimal pairs 0.9->1.0 and 0.1->0.0, both cost 0.1
    assert matched_distance(zeros, targets) == pytest.approx(0.1)
