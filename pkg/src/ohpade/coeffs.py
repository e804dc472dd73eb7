"""Fourier coefficients of analytic functions relative to an orthonormal basis.

``[G]_n`` denotes the inner product of ``G`` with ``p_n`` against the
measure.  Two independent routes are implemented: direct quadrature on the
measure's support (the production path, certified by node doubling), and the
contour formula ``[G]_n = (1/2 pi i) oint G(w) s_n(w) dw`` over a level curve
lying inside the region where ``G`` is analytic.  Their agreement is a
standing cross-check of bases, quadratures and second-type functions at once.

``radius_from_coeffs`` inverts the root asymptotics of a coefficient
sequence: the largest canonical domain to which ``G`` continues analytically
has index ``(limsup |[G]_n|^(1/n))^(-1)``, estimated here by a least-squares
fit of ``log |[G]_n|`` against ``n``.
"""

from __future__ import annotations

import dataclasses
import math

import numpy as np

from . import _kernels
from .basis import OrthoBasis
from .errors import InsufficientDataError, NumericError, ParameterError
from .functions import AnalyticFunction

_MAX_TABLE_NODES = 1 << 17
_MAX_CONTOUR_NODES = 1 << 17

# Extended-precision quadrature accumulation.  Coefficients decay
# geometrically while quadrature sums run over O(1) integrands, so plain
# double accumulation leaves an absolute noise floor near 1e-15 that
# eventually dominates the shrinking coefficients.  For the two weights
# whose nodes and basis values have closed trigonometric forms the same
# certified rule is evaluated in ``long double``, pushing that floor to
# ~1e-19.  On platforms whose long double equals double this silently
# reduces to the standard path.
_LONG_PI = np.longdouble("3.141592653589793238462643383279502884197")
_HAS_EXTENDED = np.finfo(np.longdouble).eps < np.finfo(float).eps
_EXTENDED_WEIGHTS = ("circle_lebesgue", "chebyshev")


class CoeffTable:
    """Cached table of shifted coefficients ``[z^k G]_n``.

    The table is computed by quadrature at a node count certified by
    doubling: counts are increased until two successive evaluations of the
    entire requested block agree within the measure's ``quad_tol``.  Growth
    requests re-certify at the enlarged block.
    """

    def __init__(self, basis: OrthoBasis, fn: AnalyticFunction):
        fn.check_analytic_on(basis.domain)
        self.basis = basis
        self.fn = fn
        self.max_shift = -1
        self.max_index = -1
        self.data = np.zeros((0, 0), dtype=complex)
        self.certified_delta = 0.0
        self.node_count = 0

    def ensure(self, max_shift: int, max_index: int) -> "CoeffTable":
        if max_shift < 0 or max_index < 0:
            raise ParameterError("shifts and indices must be nonnegative")
        if max_shift <= self.max_shift and max_index <= self.max_index:
            return self
        max_shift = max(max_shift, self.max_shift)
        max_index = max(max_index, self.max_index)
        degree = max_index + max_shift + max(self.fn.polynomial_degree(), 0) + 1
        # Restart the doubling ladder one level below the last certified
        # count: re-certification then normally succeeds at the same count
        # instead of doubling it on every growth request.
        count = max(64, self.basis.measure.oversample * degree, self.node_count // 2)
        tol = self.basis.measure.quad_tol
        previous = None
        while count <= _MAX_TABLE_NODES:
            block = self._compute_block(max_shift, max_index, count)
            if previous is not None:
                delta = float(np.max(np.abs(block - previous)))
                if delta <= tol:
                    self.data = block
                    self.max_shift = max_shift
                    self.max_index = max_index
                    self.certified_delta = delta
                    self.node_count = count
                    return self
            previous = block
            count *= 2
        raise NumericError(
            "coefficient table did not certify before the node cap",
            achieved=float(np.max(np.abs(block - previous))) if previous is not None else None,
        )

    def _compute_block(self, max_shift: int, max_index: int, count: int) -> np.ndarray:
        from .basis import quadrature_rule

        if _HAS_EXTENDED and self.basis.measure.weight in _EXTENDED_WEIGHTS:
            return self._compute_block_extended(max_shift, max_index, count)
        nodes, weights = quadrature_rule(self.basis.measure, count)
        values = self.fn(nodes)
        if self.basis.measure.weight == "circle_lebesgue":
            conj_p = _kernels.power_table(np.conj(nodes), max_index)
        else:
            conj_p = np.conj(
                _kernels.recurrence_table(
                    self.basis.alpha[:max_index],
                    self.basis.sqrt_beta[: max_index + 1],
                    nodes,
                )
            )
        powers = _kernels.power_table(nodes, max_shift)
        # block[k, n] = sum_i w_i z_i^k G(z_i) conj(p_n(z_i))
        return (powers * (weights * values)[None, :]) @ conj_p.T

    def _compute_block_extended(self, max_shift: int, max_index: int, count: int) -> np.ndarray:
        """The same trapezoidal/Gauss rule accumulated in long double."""
        measure = self.basis.measure
        idx = np.arange(max_index + 1)
        if measure.weight == "circle_lebesgue":
            theta = 2 * _LONG_PI * np.arange(count, dtype=np.longdouble) / count
            nodes = np.cos(theta) + 1j * np.sin(theta)
            ang = np.outer(idx, theta)
            conj_p = np.cos(ang) - 1j * np.sin(ang)
        else:  # chebyshev: x = c + h cos(theta), p_n(x) = sqrt(2) cos(n theta)
            c = np.longdouble(measure.domain.center)
            h = np.longdouble(measure.domain.halfwidth)
            theta = (
                (2 * np.arange(count, 0, -1, dtype=np.longdouble) - 1)
                * _LONG_PI
                / (2 * count)
            )
            nodes = (c + h * np.cos(theta)).astype(np.clongdouble)
            conj_p = np.sqrt(np.longdouble(2)) * np.cos(np.outer(idx, theta))
            conj_p[0, :] = 1
        values = self.fn(nodes) / count  # circle and chebyshev weights are 1/count
        powers = np.empty((max_shift + 1, count), dtype=np.clongdouble)
        powers[0] = 1
        for k in range(1, max_shift + 1):
            powers[k] = powers[k - 1] * nodes
        block = (powers * values[None, :]) @ conj_p.T
        return block.astype(complex)

    def value(self, shift: int, index: int) -> complex:
        self.ensure(shift, index)
        return complex(self.data[shift, index])

    def block(self, max_shift: int, max_index: int) -> np.ndarray:
        self.ensure(max_shift, max_index)
        return self.data[: max_shift + 1, : max_index + 1]

    def series(self, max_index: int) -> np.ndarray:
        """Unshifted coefficients ``[G]_0 .. [G]_max_index``."""
        self.ensure(max(self.max_shift, 0), max_index)
        return self.data[0, : max_index + 1].copy()


def coeff_quadrature(basis: OrthoBasis, fn: AnalyticFunction, n: int, shift: int = 0) -> complex:
    """Single coefficient ``[z^shift G]_n`` by certified quadrature."""
    return CoeffTable(basis, fn).value(shift, n)


def coeff_contour(
    basis: OrthoBasis,
    fn: AnalyticFunction,
    n: int,
    rho: float,
    tol: float = 1e-12,
    shift: int = 0,
) -> complex:
    """Single coefficient ``[z^shift G]_n`` via the contour formula on ``|phi| = rho``."""
    return contour_series(basis, fn, n, rho, tol=tol, shift=shift)[n]


def contour_series(
    basis: OrthoBasis,
    fn: AnalyticFunction,
    upto: int,
    rho: float,
    tol: float = 1e-12,
    shift: int = 0,
) -> np.ndarray:
    """Coefficients ``[z^shift G]_0 .. [z^shift G]_upto`` via the contour formula.

    The trapezoidal count starts at ``8 upto + 64`` and doubles until two
    successive levels agree within ``tol`` componentwise.  The curve must
    separate the support from every declared singularity; curves passing
    within the support cutoff of a singularity are rejected.
    """
    if rho <= 1.0:
        raise ParameterError("contour level must satisfy rho > 1")
    rho0 = fn.rho0(basis.cmap)
    if rho >= rho0:
        raise ParameterError(
            f"contour level {rho} does not separate the singularities (largest usable "
            f"index {rho0})"
        )
    count = 8 * max(upto, 1) + 64
    previous = None
    while count <= _MAX_CONTOUR_NODES:
        z, w = basis.cmap.level_curve_rule(rho, count)
        _reject_near_singularities(basis, fn, z)
        s_table = basis.second_type_table(z, upto=upto)
        vals = w * fn(z)
        if shift:
            vals = vals * z**shift
        block = s_table @ vals
        if previous is not None:
            delta = float(np.max(np.abs(block - previous)))
            if delta <= tol:
                return block
        previous = block
        count *= 2
    raise NumericError(
        "contour coefficients did not converge before the node cap",
        achieved=float(np.max(np.abs(block - previous))),
    )


def _reject_near_singularities(basis: OrthoBasis, fn: AnalyticFunction, curve: np.ndarray):
    cutoff = basis.support_cutoff
    for s in fn.singularities():
        if float(np.min(np.abs(curve - s.location))) < cutoff:
            raise ParameterError(
                f"declared singularity at {s.location} lies within {cutoff:.1e} of the contour"
            )


@dataclasses.dataclass(frozen=True)
class RadiusEstimate:
    """Result of a coefficient-decay fit.

    ``value`` is ``exp(-slope)`` of the least-squares line through
    ``(n, log |c_n|)`` over the usable window, or ``inf`` when the tail is
    identically negligible (polynomial / terminating input).
    """

    value: float
    slope: float
    n_used: tuple
    entire: bool


def radius_from_coeffs(
    coeffs,
    window: tuple[int, int] | None = None,
    transient: int = 5,
    floor: float = 1e-13,
    cap: float = 1e-1,
    min_points: int = 8,
) -> RadiusEstimate:
    """Estimate the analyticity index from a coefficient sequence.

    Coefficients with index below ``transient`` or magnitude outside
    ``[floor, cap]`` are excluded.  If the requested window contains nothing
    above ``floor``, the sequence is reported as terminating
    (``value = inf``); otherwise at least ``min_points`` usable entries are
    required.
    """
    c = np.asarray(coeffs)
    if c.ndim != 1:
        raise ParameterError("coefficients must form a one-dimensional sequence")
    n_all = np.arange(len(c))
    lo, hi = (0, len(c) - 1) if window is None else window
    if not 0 <= lo <= hi < len(c):
        raise ParameterError(f"window {window!r} outside the computed range 0..{len(c) - 1}")
    mask = (n_all >= max(lo, transient)) & (n_all <= hi)
    mags = np.abs(c)
    if not np.any(mask & (mags > floor)):
        return RadiusEstimate(value=math.inf, slope=-math.inf, n_used=(), entire=True)
    usable = mask & (mags >= floor) & (mags <= cap)
    ns = n_all[usable]
    if len(ns) < min_points:
        raise InsufficientDataError(
            f"only {len(ns)} usable coefficients in [{floor:.0e}, {cap:.0e}]; "
            f"need at least {min_points}"
        )
    slope, _ = np.polyfit(ns, np.log(mags[usable]), 1)
    return RadiusEstimate(
        value=float(math.exp(-slope)), slope=float(slope), n_used=(int(ns[0]), int(ns[-1])), entire=False
    )
