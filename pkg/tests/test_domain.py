"""Geometry of the supported compact sets and their exterior maps."""

import math

import numpy as np
import pytest

from ohpade import (
    ConformalMap,
    Domain,
    DomainError,
    ParameterError,
    default_phi_examples,
    joukowski_ellipse_axes,
    sup_phi,
)

INTERVAL = Domain(kind="interval", a=-1.0, b=1.0)
DISK = Domain(kind="unit_disk")


# -- Domain -------------------------------------------------------------------


def test_domain_validation():
    with pytest.raises(ParameterError):
        Domain(kind="triangle")
    with pytest.raises(ParameterError):
        Domain(kind="interval", a=1.0, b=-1.0)
    with pytest.raises(ParameterError):
        Domain(kind="interval", a=2.0, b=2.0)


def test_domain_geometry_numbers():
    assert DISK.center == 0.0 and DISK.halfwidth == 1.0 and DISK.diameter == 2.0
    assert DISK.sup_norm == 1.0
    shifted = Domain(kind="interval", a=0.0, b=3.0)
    assert shifted.center == 1.5 and shifted.halfwidth == 1.5 and shifted.diameter == 3.0
    assert shifted.sup_norm == 3.0
    assert Domain(kind="interval", a=-4.0, b=1.0).sup_norm == 4.0


def test_domain_membership():
    assert DISK.contains(0.5 + 0.5j)
    assert DISK.contains(1.0)  # boundary included
    assert not DISK.contains(1.0 + 1e-9)
    assert INTERVAL.contains(0.25)
    assert not INTERVAL.contains(0.25 + 1e-12j)
    assert not INTERVAL.contains(1.5)
    flags = INTERVAL.contains(np.array([-1.0, 0.0, 2.0]))
    assert flags.tolist() == [True, True, False]


def test_distance_to_support():
    assert DISK.distance_to_support(0.0) == pytest.approx(1.0)
    assert DISK.distance_to_support(3.0) == pytest.approx(2.0)
    assert INTERVAL.distance_to_support(0.5) == 0.0
    assert INTERVAL.distance_to_support(2.0) == pytest.approx(1.0)
    assert INTERVAL.distance_to_support(1j) == pytest.approx(1.0)
    assert INTERVAL.distance_to_support(-2.0 + 1.0j) == pytest.approx(math.sqrt(2.0))


def test_domain_config_roundtrip():
    for dom in (DISK, Domain(kind="interval", a=-2.0, b=0.5)):
        assert Domain.from_config(dom.to_config()) == dom
    with pytest.raises(ParameterError):
        Domain.from_config({"a": 1})
    with pytest.raises(ParameterError):
        Domain.from_config({"kind": "torus"})


# -- ConformalMap: the disk ---------------------------------------------------


def test_disk_phi_is_identity_outside():
    cmap = ConformalMap(DISK)
    z = np.array([2.0 + 0.0j, -1.5j, 1.0 + 1.0j])
    assert np.allclose(cmap.phi(z), z)
    with pytest.raises(DomainError):
        cmap.phi(0.5)
    # abs_phi extends by 1 inside
    assert cmap.abs_phi(0.2) == 1.0
    assert cmap.abs_phi(3.0) == 3.0


# -- ConformalMap: intervals --------------------------------------------------


def test_interval_phi_reference_values():
    cmap = ConformalMap(INTERVAL)
    for z, expected in default_phi_examples().items():
        assert complex(cmap.phi(z)) == pytest.approx(expected, rel=1e-14)
    # independently: phi(2) = 2 + sqrt(3), odd symmetry on the real axis
    assert complex(cmap.phi(2.0)) == pytest.approx(2.0 + math.sqrt(3.0), rel=1e-14)
    assert complex(cmap.phi(-2.0)) == pytest.approx(-(2.0 + math.sqrt(3.0)), rel=1e-14)


def test_interval_phi_inverts_joukowski():
    """phi((w + 1/w) / 2) = w for |w| > 1, the defining property of the map."""
    cmap = ConformalMap(INTERVAL)
    rng = np.random.default_rng(7)
    r = 1.0 + 3.0 * rng.random(64)
    ang = 2.0 * np.pi * rng.random(64)
    w = r * np.exp(1j * ang)
    z = 0.5 * (w + 1.0 / w)
    assert np.max(np.abs(cmap.phi(z) - w)) < 1e-10
    # and the packaged inverse agrees
    assert np.max(np.abs(cmap.phi_inverse(w) - z)) < 1e-12


def test_interval_phi_scaled_interval():
    dom = Domain(kind="interval", a=1.0, b=5.0)  # center 3, halfwidth 2
    cmap = ConformalMap(dom)
    # pullback of z = 7 is t = 2, so phi = 2 + sqrt(3)
    assert complex(cmap.phi(7.0)) == pytest.approx(2.0 + math.sqrt(3.0), rel=1e-14)
    assert float(np.asarray(cmap.abs_phi(3.0))) == 1.0  # interior of the interval


def test_interval_abs_phi_is_one_on_interval():
    cmap = ConformalMap(INTERVAL)
    x = np.linspace(-1.0, 1.0, 41)
    assert np.max(np.abs(np.asarray(cmap.abs_phi(x)) - 1.0)) < 1e-12


def test_phi_inverse_rejects_inside():
    cmap = ConformalMap(INTERVAL)
    with pytest.raises(ParameterError):
        cmap.phi_inverse(0.5)


# -- level curves and canonical domains --------------------------------------


def test_level_curve_is_ellipse():
    cmap = ConformalMap(INTERVAL)
    rho = 2.5
    curve = cmap.level_curve(rho, 256)
    a_semi, b_semi = joukowski_ellipse_axes(INTERVAL, rho)
    assert a_semi == pytest.approx(0.5 * (rho + 1.0 / rho), rel=1e-15)
    assert b_semi == pytest.approx(0.5 * (rho - 1.0 / rho), rel=1e-15)
    # every curve point satisfies the ellipse equation
    vals = (curve.real / a_semi) ** 2 + (curve.imag / b_semi) ** 2
    assert np.max(np.abs(vals - 1.0)) < 1e-10
    # and maps back onto |phi| = rho
    assert np.max(np.abs(np.asarray(cmap.abs_phi(curve)) - rho)) < 1e-10


def test_level_curve_rule_integrates_cauchy_kernel():
    """The contour rule reproduces (1/2 pi i) oint dz / (z - a) = 1 inside."""
    for dom in (DISK, INTERVAL):
        cmap = ConformalMap(dom)
        z, w = cmap.level_curve_rule(2.0, 512)
        inside = complex(np.sum(w / (z - 0.3)))
        outside = complex(np.sum(w / (z - 50.0)))
        assert inside == pytest.approx(1.0, abs=1e-12)
        assert outside == pytest.approx(0.0, abs=1e-12)


def test_level_curve_parameter_validation():
    cmap = ConformalMap(DISK)
    with pytest.raises(ParameterError):
        cmap.level_curve(1.0, 16)
    with pytest.raises(ParameterError):
        cmap.level_curve(2.0, 0)
    with pytest.raises(ParameterError):
        cmap.in_canonical_domain(0.0, rho=0.9)


def test_canonical_domain_membership():
    cmap = ConformalMap(INTERVAL)
    assert cmap.in_canonical_domain(0.5, rho=1.5)  # on E itself
    assert cmap.in_canonical_domain(1.05, rho=1.5)
    assert not cmap.in_canonical_domain(3.0, rho=1.5)
    # the pole of the interval benchmark sits inside D_rho for rho > phi(1.5)
    phi_15 = 1.5 + math.sqrt(1.25)
    assert cmap.in_canonical_domain(1.5, rho=phi_15 + 1e-9)
    assert not cmap.in_canonical_domain(1.5, rho=phi_15 - 1e-9)


def test_sup_phi():
    cmap = ConformalMap(DISK)
    assert sup_phi(cmap, [0.0, 0.3, 0.3j]) == 1.0
    assert sup_phi(cmap, [0.0, 2.0]) == 2.0
    with pytest.raises(ParameterError):
        sup_phi(cmap, [])


def test_ellipse_axes_validation():
    with pytest.raises(ParameterError):
        joukowski_ellipse_axes(DISK, 2.0)
    with pytest.raises(ParameterError):
        joukowski_ellipse_axes(INTERVAL, 1.0)
