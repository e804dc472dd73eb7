"""Zero clustering, pole ground truth, and geometric-rate measurement.

The zeros of the common denominators accumulate at the system's poles, with
geometric speed governed by how deep each pole sits inside the region where
the system stays meromorphic.  This module turns raw denominator
coefficients into clustered zeros, compares observed error decay against the
predicted rate ``max |phi(xi)| / rho_xi``, and checks the structural
hypothesis behind uniqueness (no nontrivial polynomial combination of the
components collapses to a polynomial).
"""

from __future__ import annotations

import dataclasses
import math

import numpy as np
import sympy

from .domain import ConformalMap, sup_phi
from .errors import InsufficientDataError, ParameterError, UnsupportedInputError

CLUSTER_RADIUS = 1e-7
ERROR_FLOOR = 1e-12
ERROR_CAP = 1e-2


def roots(q, cluster_radius: float = CLUSTER_RADIUS):
    """Zeros of a monomial-coefficient polynomial (low degree first).

    Uses the balanced companion-matrix eigensolve; numerical roots within
    ``cluster_radius`` of each other merge into one (centroid, multiplicity)
    pair.  Pairs come back sorted by real part, then imaginary part; a
    constant polynomial yields an empty list.
    """
    q = np.asarray(q, dtype=complex)
    if len(q) < 2:
        return []
    raw = np.roots(q[::-1])
    clusters: list[list[complex]] = []
    for r in sorted(raw, key=lambda z: (z.real, z.imag)):
        for members in clusters:
            centroid = sum(members) / len(members)
            if abs(r - centroid) <= cluster_radius:
                members.append(r)
                break
        else:
            clusters.append([r])
    out = [(sum(ms) / len(ms), len(ms)) for ms in clusters]
    out.sort(key=lambda pair: (pair[0].real, pair[0].imag))
    return out


def flat_zeros(q, cluster_radius: float = CLUSTER_RADIUS):
    """Clustered zeros repeated by multiplicity, sorted by (re, im)."""
    return [z for z, mult in roots(q, cluster_radius) for _ in range(mult)]


@dataclasses.dataclass(frozen=True)
class SystemPoleSpec:
    """A system pole with the meromorphy radii of its attraction.

    ``rho_list[t-1]`` is the best index achievable by a polynomial
    combination exhibiting the pole with order at least ``t``
    (``t = 1..tau``); the governing radius ``rho`` is their minimum.
    ``math.inf`` entries mean the relevant combinations are entire apart
    from poles, so the pole is recovered exactly and contributes rate 0.
    """

    xi: complex
    tau: int = 1
    rho_list: tuple = (math.inf,)

    def __post_init__(self):
        object.__setattr__(self, "xi", complex(self.xi))
        object.__setattr__(self, "rho_list", tuple(float(r) for r in self.rho_list))
        if self.tau < 1 or len(self.rho_list) != self.tau:
            raise ParameterError("need one meromorphy radius per pole order 1..tau")
        if any(r <= 1.0 for r in self.rho_list):
            raise ParameterError("meromorphy radii must exceed 1")

    @property
    def rho(self) -> float:
        return min(self.rho_list)

    def contribution(self, cmap: ConformalMap) -> float:
        if math.isinf(self.rho):
            return 0.0
        return float(np.asarray(cmap.abs_phi(self.xi))) / self.rho


@dataclasses.dataclass(frozen=True)
class GroundTruth:
    """Reference answers for a benchmark system.

    ``q_exact`` holds the limit denominator's monomial coefficients (low
    degree first, monic) when the zeros converge; ``rho_star`` maps
    ``(i, k)`` to the radius governing how fast the rational approximant of
    ``z^k F_i`` converges on compact sets; ``unique`` states whether the
    defining linear system is expected to have a one-dimensional nullspace
    for large orders.
    """

    poles: tuple = ()
    q_exact: tuple | None = None
    unique: bool = True
    exact_from: int | None = None
    rho_star: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "poles", tuple(self.poles))
        if self.q_exact is not None:
            object.__setattr__(self, "q_exact", tuple(complex(c) for c in self.q_exact))
        object.__setattr__(self, "rho_star", tuple(self.rho_star))

    @property
    def total_order(self) -> int:
        return sum(p.tau for p in self.poles)

    def pole_locations(self):
        return [p.xi for p in self.poles for _ in range(p.tau)]

    def component_radius(self, i: int, k: int) -> float:
        for ii, kk, value in self.rho_star:
            if (ii, kk) == (i, k):
                return float(value)
        raise ParameterError(f"no stored convergence radius for component ({i}, {k})")


def predicted_theta(gt: GroundTruth, cmap: ConformalMap, require_total: int | None = None) -> float:
    """Largest ``|phi(xi)| / rho_xi`` over the system poles (0 when all inf).

    When ``require_total`` is given, the pole orders must add up to it
    (complete ground truth); the result is checked to be below 1.
    """
    if require_total is not None and gt.total_order != require_total:
        raise ParameterError("ground truth does not resolve the full pole budget")
    theta = 0.0
    for p in gt.poles:
        theta = max(theta, p.contribution(cmap))
    if theta >= 1.0:
        raise ParameterError("ground-truth pole metadata implies a non-contracting rate")
    return theta


@dataclasses.dataclass(frozen=True)
class RateFit:
    """Observed geometric rate ``theta = exp(slope of log-error vs order)``.

    ``mode`` is ``"fit"`` for a least-squares slope and ``"exact"`` when the
    trailing errors sit at arithmetic noise, reported as rate 0.
    """

    theta: float
    mode: str
    n_used: int
    slope: float = float("nan")
    intercept: float = float("nan")


def measured_theta(
    ns,
    errors,
    floor: float = ERROR_FLOOR,
    cap: float = ERROR_CAP,
    min_points: int = 8,
) -> RateFit:
    """Fit the geometric decay rate of an error sequence.

    Orders with error above ``cap`` (pre-asymptotic) or below ``floor``
    (arithmetic noise) are excluded from the fit.  If the last three errors
    all sit at/below the floor and at least half of all orders do, the
    sequence is classified exact (rate 0) instead of fitted.

    The window ends at the sequence's minimum: the target quantity is
    strictly decreasing, so once the recorded error rebounds it is dominated
    by arithmetic noise (which grows relative to the shrinking coefficients)
    and carries no rate information.
    """
    ns = np.asarray(list(ns), dtype=float)
    errors = np.asarray(list(errors), dtype=float)
    if ns.shape != errors.shape or ns.size == 0:
        raise ParameterError("orders and errors must be matching nonempty sequences")
    below = errors <= floor
    if errors.size >= 3 and bool(np.all(below[-3:])) and int(np.sum(below)) * 2 >= errors.size:
        return RateFit(theta=0.0, mode="exact", n_used=int(np.sum(below)))
    decaying = np.zeros(errors.shape, dtype=bool)
    decaying[: int(np.argmin(errors)) + 1] = True
    usable = decaying & (errors > floor) & (errors < cap) & np.isfinite(errors)
    if int(np.sum(usable)) < min_points:
        raise InsufficientDataError(
            f"fewer than {min_points} orders inside the trustworthy error band"
        )
    slope, intercept = np.polyfit(ns[usable], np.log(errors[usable]), 1)
    return RateFit(
        theta=float(np.exp(slope)),
        mode="fit",
        n_used=int(np.sum(usable)),
        slope=float(slope),
        intercept=float(intercept),
    )


def stable_zero_groups(zero_lists, radius: float = 1e-3, min_fraction: float = 0.9):
    """Zeros that persist across the trailing half of an order sweep.

    ``zero_lists`` holds one list of denominator zeros per order (ascending
    orders).  A location counts as detected when some zero falls within
    ``radius`` of its running centroid in at least ``min_fraction`` of the
    trailing half.  Returns (centroid, hit_fraction) pairs sorted by
    (re, im).
    """
    tail = list(zero_lists)[len(zero_lists) // 2 :]
    if not tail:
        return []
    groups: list[list[complex]] = []
    for zeros in tail:
        for z in zeros:
            for members in groups:
                centroid = sum(members) / len(members)
                if abs(z - centroid) <= radius:
                    members.append(z)
                    break
            else:
                groups.append([z])
    out = []
    for members in groups:
        fraction = len(members) / len(tail)
        if fraction >= min_fraction:
            out.append((sum(members) / len(members), min(fraction, 1.0)))
    out.sort(key=lambda pair: (pair[0].real, pair[0].imag))
    return out


@dataclasses.dataclass(frozen=True)
class IndependenceResult:
    independent: bool
    rank: int
    required: int

    def __bool__(self) -> bool:
        return self.independent


def _exact(value) -> sympy.Expr:
    z = complex(value)
    re = sympy.nsimplify(z.real, rational=True)
    im = sympy.nsimplify(z.imag, rational=True)
    return re + im * sympy.I


def poly_independence_check(sys) -> IndependenceResult:
    """Exact-arithmetic test of polynomial independence (rational systems).

    The system is polynomially independent when the only polynomial weights
    ``v_i`` (``deg v_i < m_i``) making ``sum_i v_i F_i`` a polynomial are
    all zero.  Since a rational combination is a polynomial exactly when all
    its principal parts vanish, the weights-to-principal-parts map is
    linear, and independence holds precisely when its exact rank equals
    ``sum_i m_i``.  Floating-point data is promoted to rationals first, so
    the rank decision is not a threshold call.
    """
    multi = sys.multi_index
    columns = [(i, j) for i, mi in enumerate(multi) for j in range(mi)]
    site_parts: dict[complex, dict[int, dict[int, complex]]] = {}
    for i, fn in enumerate(sys.functions):
        if not fn.is_rational():
            raise UnsupportedInputError(
                "polynomial independence test requires rational components"
            )
        _, principal = fn.rational_parts()
        for a, orders in principal.items():
            site = site_parts.setdefault(complex(a), {})
            merged = site.setdefault(i, {})
            for t, coeff in orders.items():
                merged[t] = merged.get(t, 0j) + complex(coeff)

    required = multi.total
    rows = []
    for a, site in site_parts.items():
        a_exact = _exact(a)
        max_order = max(order for orders in site.values() for order in orders)
        for u in range(1, max_order + 1):
            row = []
            for i, j in columns:
                entry = sympy.Integer(0)
                for t, coeff in site.get(i, {}).items():
                    s = t - u
                    if 0 <= s <= j:
                        entry += _exact(coeff) * sympy.binomial(j, s) * a_exact ** (j - s)
                row.append(sympy.expand(entry))
            rows.append(row)
    if not rows:
        # No poles anywhere: every weighted combination is already a
        # polynomial, so any nontrivial weight vector defeats independence.
        return IndependenceResult(independent=False, rank=0, required=required)
    rank = sympy.Matrix(rows).rank()
    return IndependenceResult(independent=rank == required, rank=int(rank), required=required)


def rate_check_errors(basis, sys, i: int, points, ns, tables=None):
    """Sup errors of the component-``i`` approximant over ``points`` per order."""
    from .solver import coefficient_tables, solve_hp

    pts = np.asarray([complex(p) for p in points])
    fn = sys.functions[i]
    for s in fn.singularities():
        if np.min(np.abs(pts - s.location)) < 1e-2:
            raise ParameterError("evaluation points must stay clear of the singularities")
    if tables is None:
        tables = coefficient_tables(basis, sys)
    f_vals = fn(pts)
    errs = []
    for n in ns:
        _, approx = solve_hp(basis, sys, int(n), tables=tables)
        r_vals = approx.evaluate(basis, i, pts)
        errs.append(float(np.max(np.abs(f_vals - r_vals))))
    return np.asarray(errs)


@dataclasses.dataclass(frozen=True)
class RateCheck:
    fit: RateFit
    bound: float
    passed: bool
    errors: tuple


def approximation_rate_check(
    basis,
    sys,
    gt: GroundTruth,
    i: int,
    points,
    ns,
    slack: float = 0.05,
    floor: float = 1e-13,
    tables=None,
) -> RateCheck:
    """Compare the observed sup-norm decay on a point cloud with its bound.

    The bound is ``max(1, sup |phi|) / rho*`` with ``rho*`` the stored
    convergence radius of component ``(i, 0)``.  The observed rate comes from
    ``measured_theta`` with a floor at the sup-norm noise level: sequences
    saturating the floor early classify as exact (rate 0), anything else is
    fitted over its decaying prefix.  The check passes when the rate does not
    exceed bound + ``slack``.
    """
    errors = rate_check_errors(basis, sys, i, points, ns, tables=tables)
    rho = gt.component_radius(i, 0)
    bound = 0.0 if math.isinf(rho) else sup_phi(basis.cmap, points) / rho
    fit = measured_theta(ns, errors, floor=floor)
    return RateCheck(
        fit=fit,
        bound=float(bound),
        passed=fit.theta <= bound + slack,
        errors=tuple(float(e) for e in errors),
    )
