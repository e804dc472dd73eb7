"""Compact sets, exterior conformal maps, level curves and canonical domains.

Two families of compact sets ``E`` with connected complement are supported:
the closed unit disk and a real interval ``[a, b]``.  For each, ``phi`` is the
conformal map of the exterior of ``E`` onto the exterior of the closed unit
disk with ``phi(inf) = inf`` and positive derivative at infinity.  Level
curves ``{|phi| = rho}`` bound the canonical domains ``D_rho``, the open sets
``E union {|phi| < rho}`` on which all convergence-rate statements of the
library are phrased.
"""

from __future__ import annotations

import dataclasses
import math

import numpy as np

from .errors import DomainError, ParameterError

_KINDS = ("unit_disk", "interval")


def _as_complex(z):
    """Return (array, was_scalar) with a complex dtype view of ``z``."""
    arr = np.asarray(z)
    scalar = arr.ndim == 0
    return np.atleast_1d(arr).astype(complex), scalar


def _maybe_scalar(values, scalar):
    return values[0] if scalar else values


@dataclasses.dataclass(frozen=True)
class Domain:
    """Compact set ``E``: the closed unit disk, or the interval ``[a, b]``."""

    kind: str = "unit_disk"
    a: float = -1.0
    b: float = 1.0

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise ParameterError(f"unknown domain kind {self.kind!r}; expected one of {_KINDS}")
        if self.kind == "interval" and not self.b > self.a:
            raise ParameterError(f"interval endpoints must satisfy a < b, got [{self.a}, {self.b}]")

    # -- geometry -----------------------------------------------------------

    @property
    def center(self) -> float:
        return 0.0 if self.kind == "unit_disk" else 0.5 * (self.a + self.b)

    @property
    def halfwidth(self) -> float:
        return 1.0 if self.kind == "unit_disk" else 0.5 * (self.b - self.a)

    @property
    def diameter(self) -> float:
        return 2.0 if self.kind == "unit_disk" else self.b - self.a

    @property
    def sup_norm(self) -> float:
        """``max_{z in E} |z|``, the constant in the kappa-ratio upper bound."""
        if self.kind == "unit_disk":
            return 1.0
        return max(abs(self.a), abs(self.b))

    def contains(self, z) -> bool | np.ndarray:
        """Membership in ``E`` (boundary included; exact for real interval points)."""
        arr, scalar = _as_complex(z)
        if self.kind == "unit_disk":
            inside = np.abs(arr) <= 1.0
        else:
            inside = (arr.imag == 0.0) & (arr.real >= self.a) & (arr.real <= self.b)
        return _maybe_scalar(inside, scalar)

    def distance_to_support(self, z):
        """Euclidean distance to the support of the shipped measures on ``E``.

        The circle measure lives on ``|z| = 1``; interval measures live on
        ``[a, b]`` itself.
        """
        arr, scalar = _as_complex(z)
        if self.kind == "unit_disk":
            dist = np.abs(np.abs(arr) - 1.0)
        else:
            t = np.clip(arr.real, self.a, self.b)
            dist = np.abs(arr - t)
        return _maybe_scalar(dist, scalar)

    # -- serialization ------------------------------------------------------

    def to_config(self) -> dict:
        if self.kind == "unit_disk":
            return {"kind": "unit_disk"}
        return {"kind": "interval", "a": self.a, "b": self.b}

    @classmethod
    def from_config(cls, cfg: dict) -> "Domain":
        if not isinstance(cfg, dict) or "kind" not in cfg:
            raise ParameterError(f"domain config must be a dict with a 'kind' key, got {cfg!r}")
        kind = cfg["kind"]
        if kind == "unit_disk":
            return cls(kind="unit_disk")
        if kind == "interval":
            return cls(kind="interval", a=float(cfg.get("a", -1.0)), b=float(cfg.get("b", 1.0)))
        raise ParameterError(f"unknown domain kind {kind!r}")


@dataclasses.dataclass(frozen=True)
class ConformalMap:
    """Exterior conformal map of the complement of ``E`` onto ``{|w| > 1}``."""

    domain: Domain

    # -- the map and its inverse -------------------------------------------

    def phi(self, z):
        """Evaluate ``phi(z)``.

        For the unit disk this is the identity; strictly interior points are
        rejected.  For an interval it is the scaled Joukowski inverse
        ``t + sqrt(t - 1) sqrt(t + 1)`` with ``t`` the affine pullback to
        ``[-1, 1]``; the square-root branch is continuous off the interval and
        behaves like ``t`` at infinity, so ``|phi| = 1`` on the interval and
        ``|phi| > 1`` elsewhere.
        """
        arr, scalar = _as_complex(z)
        if self.domain.kind == "unit_disk":
            if np.any(np.abs(arr) < 1.0 - 1e-12):
                raise DomainError("phi is undefined strictly inside the unit disk")
            return _maybe_scalar(arr.copy(), scalar)
        t = (arr - self.domain.center) / self.domain.halfwidth
        w = t + np.sqrt(t - 1.0) * np.sqrt(t + 1.0)
        return _maybe_scalar(w, scalar)

    def abs_phi(self, z):
        """``|phi(z)|`` extended by 1 on all of ``E`` (no interior rejection)."""
        arr, scalar = _as_complex(z)
        if self.domain.kind == "unit_disk":
            out = np.maximum(np.abs(arr), 1.0)
        else:
            t = (arr - self.domain.center) / self.domain.halfwidth
            out = np.abs(t + np.sqrt(t - 1.0) * np.sqrt(t + 1.0))
            out = np.maximum(out, 1.0)
        return _maybe_scalar(out, scalar)

    def phi_inverse(self, w):
        """Map ``{|w| >= 1}`` back to the exterior of ``E`` (boundary to ``E``)."""
        arr, scalar = _as_complex(w)
        if np.any(np.abs(arr) < 1.0 - 1e-12):
            raise ParameterError("phi_inverse requires |w| >= 1")
        if self.domain.kind == "unit_disk":
            return _maybe_scalar(arr.copy(), scalar)
        z = self.domain.center + self.domain.halfwidth * 0.5 * (arr + 1.0 / arr)
        return _maybe_scalar(z, scalar)

    # -- level curves -------------------------------------------------------

    def level_curve(self, rho: float, count: int) -> np.ndarray:
        """``count`` points of ``{|phi| = rho}``, counterclockwise from angle 0.

        For an interval the curve is the ellipse with semi-axes
        ``h (rho +- 1/rho) / 2`` about the interval's center.  The points
        double as trapezoidal nodes for contour integration.
        """
        if rho <= 1.0:
            raise ParameterError(f"level curves require rho > 1, got {rho}")
        if count < 1:
            raise ParameterError("count must be positive")
        theta = 2.0 * np.pi * np.arange(count) / count
        u = rho * np.exp(1j * theta)
        return self.phi_inverse(u)

    def level_curve_rule(self, rho: float, count: int):
        """Nodes and weights for ``(1/2 pi i) oint_{|phi|=rho} f(z) dz``.

        Returns ``(z, w)`` such that the contour integral is approximated by
        ``sum_j w_j f(z_j)`` (trapezoidal rule in the map parameter, spectrally
        accurate for integrands analytic near the curve).
        """
        if rho <= 1.0:
            raise ParameterError(f"level curves require rho > 1, got {rho}")
        theta = 2.0 * np.pi * np.arange(count) / count
        u = rho * np.exp(1j * theta)
        if self.domain.kind == "unit_disk":
            z = u
            dz = u  # d(psi)/du * u with psi = id
        else:
            z = self.domain.center + self.domain.halfwidth * 0.5 * (u + 1.0 / u)
            dz = self.domain.halfwidth * 0.5 * (1.0 - u**-2) * u
        return z, dz / count

    # -- canonical domains --------------------------------------------------

    def in_canonical_domain(self, z, rho: float):
        """Membership in ``D_rho = E union {|phi(z)| < rho}`` (open, ``rho > 1``)."""
        if rho <= 1.0:
            raise ParameterError(f"canonical domains require rho > 1, got {rho}")
        arr, scalar = _as_complex(z)
        inside = (np.asarray(self.abs_phi(arr)) < rho) | np.asarray(self.domain.contains(arr))
        return _maybe_scalar(inside, scalar)


def sup_phi(cmap: ConformalMap, points) -> float:
    """``max(1, max_j |phi(z_j)|)`` over a finite point cloud.

    This is the geometric factor entering approximation-rate bounds on a
    compact evaluation set that may meet ``E``.
    """
    pts, _ = _as_complex(points)
    if pts.size == 0:
        raise ParameterError("empty point set")
    return float(max(1.0, np.max(np.asarray(cmap.abs_phi(pts)))))


def joukowski_ellipse_axes(domain: Domain, rho: float) -> tuple[float, float]:
    """Semi-axes of the level ellipse of an interval domain."""
    if domain.kind != "interval":
        raise ParameterError("ellipse axes are defined for interval domains only")
    if rho <= 1.0:
        raise ParameterError("rho must exceed 1")
    h = domain.halfwidth
    return h * 0.5 * (rho + 1.0 / rho), h * 0.5 * (rho - 1.0 / rho)


def default_phi_examples() -> dict:
    """Reference values used by sanity checks (interval [-1, 1])."""
    return {
        2.0: 2.0 + math.sqrt(3.0),
        -2.0: -(2.0 + math.sqrt(3.0)),
        3.0: 3.0 + math.sqrt(8.0),
        1.5: 1.5 + math.sqrt(1.25),
    }
