"""Compiled kernels against the pure NumPy fallback, plus object-dtype support."""

import numpy as np
import pytest

from ohpade._kernels import BACKEND, _fallback

try:
    from ohpade._kernels import _core
except ImportError:
    _core = None

RNG = np.random.default_rng(20240817)


def _random_points(n):
    return RNG.standard_normal(n) + 1j * RNG.standard_normal(n)


def test_backend_reported():
    assert BACKEND in ("compiled", "fallback")


@pytest.mark.skipif(_core is None, reason="compiled extension not built")
class TestCompiledMatchesFallback:
    def test_recurrence_table(self):
        alpha = RNG.standard_normal(30) * 0.1
        sqrt_beta = 0.3 + RNG.random(31)
        z = _random_points(200)
        got = _core.recurrence_table(alpha, sqrt_beta, z)
        want = _fallback.recurrence_table(alpha, sqrt_beta, z)
        assert got.shape == want.shape == (31, 200)
        assert np.max(np.abs(got - want)) < 1e-13 * np.max(np.abs(want))

    def test_power_table(self):
        z = 0.9 * _random_points(150)
        got = _core.power_table(z, 40)
        want = _fallback.power_table(z, 40)
        assert np.max(np.abs(got - want)) < 1e-13 * max(1.0, np.max(np.abs(want)))

    def test_cauchy_sum(self):
        nodes = np.exp(2j * np.pi * np.arange(256) / 256)
        coeffs = _random_points(256)
        z = 2.0 * _random_points(50) + 3.0
        got = _core.cauchy_sum(coeffs, nodes, z)
        want = _fallback.cauchy_sum(coeffs, nodes, z)
        assert np.max(np.abs(got - want)) < 1e-13 * np.max(np.abs(want))

    def test_cauchy_table(self):
        nodes = np.cos(np.pi * (np.arange(128) + 0.5) / 128).astype(complex)
        weights = np.full(128, 1.0 / 128)
        table = _fallback.recurrence_table(
            np.zeros(10), np.concatenate([[1.0], np.full(10, 0.5)]), nodes
        )
        z = 3.0 + _random_points(20)
        got = _core.cauchy_table(weights, table, nodes, z)
        want = _fallback.cauchy_table(weights, table, nodes, z)
        assert np.max(np.abs(got - want)) < 1e-13 * np.max(np.abs(want))


def test_fallback_power_table_values():
    z = np.array([2.0 + 0.0j, 1j])
    table = _fallback.power_table(z, 3)
    assert table[0, 0] == 1.0 and table[3, 0] == 8.0
    assert table[2, 1] == -1.0 and table[3, 1] == -1j


def test_fallback_recurrence_chebyshev_values():
    """With the Chebyshev recurrence data, rows are sqrt(2) T_n on [-1, 1]."""
    z = np.array([0.3 + 0.0j, -0.8 + 0.0j])
    alpha = np.zeros(3)
    sqrt_beta = np.array([1.0, np.sqrt(0.5), np.sqrt(0.25), np.sqrt(0.25)])
    table = _fallback.recurrence_table(alpha, sqrt_beta, z)
    x = z.real
    t2 = 2 * x**2 - 1
    t3 = 4 * x**3 - 3 * x
    assert np.allclose(table[0], 1.0)
    assert np.allclose(table[1], np.sqrt(2) * x)
    assert np.allclose(table[2], np.sqrt(2) * t2)
    assert np.allclose(table[3], np.sqrt(2) * t3)


def test_fallback_cauchy_sum_partial_fractions():
    """sum 1/(z - node) over the N-th roots of unity is N z^(N-1) / (z^N - 1)."""
    nodes = np.exp(2j * np.pi * np.arange(8) / 8)
    z = np.array([2.0 + 0.5j, -3.0 + 0.0j])
    got = _fallback.cauchy_sum(np.ones(8, dtype=complex), nodes, z)
    want = 8 * z**7 / (z**8 - 1)
    assert np.max(np.abs(got - want)) < 1e-12


def test_fallback_object_dtype_passthrough():
    """Object arrays (arbitrary scalar types) run through the fallback."""
    mpmath = pytest.importorskip("mpmath")
    mpmath.mp.dps = 40
    z = np.array([mpmath.mpc("0.3", "0.1"), mpmath.mpc("1.7", "0")], dtype=object)
    alpha = np.array([mpmath.mpf(0)] * 3, dtype=object)
    sqrt_beta = np.array(
        [mpmath.mpf(1), mpmath.sqrt(mpmath.mpf(1) / 2), mpmath.mpf(1) / 2, mpmath.mpf(1) / 2],
        dtype=object,
    )
    table = _fallback.recurrence_table(alpha, sqrt_beta, z)
    # spot-check against the double-precision path
    ref = _fallback.recurrence_table(
        np.zeros(3), np.array([1.0, np.sqrt(0.5), 0.5, 0.5]), np.array([0.3 + 0.1j, 1.7 + 0j])
    )
    got = complex(table[3, 1].real, table[3, 1].imag)
    assert got == pytest.approx(complex(ref[3, 1]), rel=1e-12)
    powers = _fallback.power_table(z, 5)
    assert complex(powers[5, 0].real, powers[5, 0].imag) == pytest.approx(
        complex((0.3 + 0.1j) ** 5), rel=1e-12
    )


def test_env_override_selects_fallback():
    """OHPADE_PURE_PYTHON forces the fallback in a fresh interpreter."""
    import subprocess
    import sys

    code = "import ohpade; print(ohpade.kernel_backend)"
    out = subprocess.run(
        [sys.executable, "-c", code],
        capture_output=True,
        text=True,
        env={"PATH": "/usr/bin:/bin", "OHPADE_PURE_PYTHON": "1"},
    )
    assert out.returncode == 0, out.stderr
    assert out.stdout.strip() == "fallback"
