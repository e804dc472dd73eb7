"""Orthonormal polynomial bases and second-type functions for shipped measures.

A ``MeasureSpec`` names a finite positive measure ``mu`` on a domain's
support: normalized arc length on the unit circle, or one of the classical
weights (Chebyshev, Legendre, Jacobi) on an interval.  ``build_basis``
certifies a quadrature rule for the measure and packages the orthonormal
polynomials ``p_n = kappa_n z^n + ...`` with ``kappa_n > 0``, their values at
the quadrature nodes, and the leading-coefficient sequence ``kappa_n``.

Second-type functions ``s_n(z) = integral conj(p_n(t)) / (z - t) dmu(t)``
decay like ``|phi(z)|^{-n}`` away from the support.  On the circle they are
computed by quadrature (and equal ``z^{-n-1}`` analytically); on intervals the
quadrature sum loses all relative accuracy once ``s_n`` falls below roundoff
of the integrand, so the Chebyshev weight uses its closed form and the other
interval weights use backward recurrence, for which ``s_n`` is the minimal
solution.  The raw quadrature path remains available for cross-checks.
"""

from __future__ import annotations

import dataclasses
import functools
import math

import numpy as np
from scipy import special as _special

from . import _kernels
from .domain import ConformalMap, Domain
from .errors import DomainError, NumericError, ParameterError

WEIGHTS = ("circle_lebesgue", "chebyshev", "legendre", "jacobi")
_INTERVAL_WEIGHTS = ("chebyshev", "legendre", "jacobi")

_MAX_NODES = 1 << 17


@dataclasses.dataclass(frozen=True)
class MeasureSpec:
    """A shipped orthogonality measure together with quadrature policy.

    ``oversample`` scales the initial node count relative to the largest
    polynomial degree in play; ``quad_tol`` is the node-doubling stopping
    tolerance used wherever integrands are not exactly integrated by the rule.
    """

    domain: Domain = Domain()
    weight: str = "circle_lebesgue"
    alpha: float = 0.0
    beta: float = 0.0
    oversample: int = 4
    quad_tol: float = 1e-13

    def __post_init__(self):
        if self.weight not in WEIGHTS:
            raise ParameterError(f"unknown weight {self.weight!r}; expected one of {WEIGHTS}")
        if self.weight == "circle_lebesgue" and self.domain.kind != "unit_disk":
            raise ParameterError("circle_lebesgue requires the unit_disk domain")
        if self.weight in _INTERVAL_WEIGHTS and self.domain.kind != "interval":
            raise ParameterError(f"{self.weight} requires an interval domain")
        if self.weight == "jacobi" and (self.alpha <= -1.0 or self.beta <= -1.0):
            raise ParameterError("jacobi exponents must exceed -1")
        if self.oversample < 1:
            raise ParameterError("oversample must be at least 1")
        if not 0.0 < self.quad_tol < 1e-2:
            raise ParameterError("quad_tol must lie in (0, 1e-2)")

    def to_config(self) -> dict:
        cfg = {"weight": self.weight, "domain": self.domain.to_config(), "quad_tol": self.quad_tol}
        if self.weight == "jacobi":
            cfg["alpha"] = self.alpha
            cfg["beta"] = self.beta
        if self.oversample != 4:
            cfg["oversample"] = self.oversample
        return cfg

    @classmethod
    def from_config(cls, cfg: dict) -> "MeasureSpec":
        if not isinstance(cfg, dict) or "weight" not in cfg:
            raise ParameterError(f"measure config must be a dict with a 'weight' key, got {cfg!r}")
        weight = cfg["weight"]
        if weight == "circle_lebesgue":
            default_domain = {"kind": "unit_disk"}
        else:
            default_domain = {"kind": "interval", "a": -1.0, "b": 1.0}
        domain = Domain.from_config(cfg.get("domain", default_domain))
        return cls(
            domain=domain,
            weight=weight,
            alpha=float(cfg.get("alpha", 0.0)),
            beta=float(cfg.get("beta", 0.0)),
            oversample=int(cfg.get("oversample", 4)),
            quad_tol=float(cfg.get("quad_tol", 1e-13)),
        )


def circle_measure(**kw) -> MeasureSpec:
    return MeasureSpec(domain=Domain(kind="unit_disk"), weight="circle_lebesgue", **kw)


def interval_measure(weight: str = "chebyshev", a: float = -1.0, b: float = 1.0, **kw) -> MeasureSpec:
    return MeasureSpec(domain=Domain(kind="interval", a=a, b=b), weight=weight, **kw)


# ---------------------------------------------------------------------------
# quadrature rules and recurrence coefficients
# ---------------------------------------------------------------------------


def quadrature_rule(measure: MeasureSpec, count: int):
    """Nodes and weights integrating against ``mu`` with ``count`` nodes.

    Circle: trapezoidal rule on the unit circle (normalized arc length).
    Intervals: the Gauss rule of the weight, affinely mapped onto ``[a, b]``.
    Interval weights are normalized to unit mass except Jacobi, which keeps
    the standard mass ``2^(alpha+beta+1) B(alpha+1, beta+1)``.
    """
    if count < 1:
        raise ParameterError("node count must be positive")
    c, h = measure.domain.center, measure.domain.halfwidth
    if measure.weight == "circle_lebesgue":
        nodes = np.exp(2j * np.pi * np.arange(count) / count)
        weights = np.full(count, 1.0 / count)
    elif measure.weight == "chebyshev":
        t = np.cos((2.0 * np.arange(count, 0, -1) - 1.0) * np.pi / (2.0 * count))
        nodes = (c + h * t).astype(complex)
        weights = np.full(count, 1.0 / count)
    elif measure.weight == "legendre":
        t, w = _special.roots_legendre(count)
        nodes = (c + h * t).astype(complex)
        weights = 0.5 * w
    else:  # jacobi
        t, w = _special.roots_jacobi(count, measure.alpha, measure.beta)
        nodes = (c + h * t).astype(complex)
        weights = w
    return nodes, weights


def recurrence_coefficients(measure: MeasureSpec, n: int):
    """Three-term recurrence data ``(alpha[0..n-1], beta[0..n])`` on ``[a, b]``.

    ``beta[0]`` is the measure's total mass; for ``k >= 1`` the monic
    orthogonal polynomials satisfy
    ``pi_{k+1} = (x - alpha[k]) pi_k - beta[k] pi_{k-1}`` and the orthonormal
    ``kappa_n`` equal ``(beta[0] ... beta[n])^(-1/2)``.  Closed forms from the
    classical weights; the affine map to ``[a, b]`` shifts ``alpha`` and
    scales ``beta[k >= 1]`` by the squared halfwidth.
    """
    if measure.weight == "circle_lebesgue":
        raise ParameterError("the circle basis has no interval recurrence; p_n(z) = z^n")
    c, h = measure.domain.center, measure.domain.halfwidth
    k = np.arange(1, n + 1, dtype=float)
    if measure.weight == "chebyshev":
        alpha = np.full(n, c)
        beta = np.empty(n + 1)
        beta[0] = 1.0
        if n >= 1:
            beta[1] = 0.5 * h * h
        if n >= 2:
            beta[2:] = 0.25 * h * h
    elif measure.weight == "legendre":
        alpha = np.full(n, c)
        beta = np.empty(n + 1)
        beta[0] = 1.0
        beta[1:] = h * h * k * k / (4.0 * k * k - 1.0)
    else:  # jacobi
        a, b = measure.alpha, measure.beta
        s = a + b
        alpha_std = np.empty(n)
        if n >= 1:
            alpha_std[0] = (b - a) / (s + 2.0)
        if n >= 2:
            kk = k[:-1]  # 1 .. n-1
            alpha_std[1:] = (b * b - a * a) / ((2.0 * kk + s) * (2.0 * kk + s + 2.0))
        beta_std = np.empty(n + 1)
        beta_std[0] = math.exp(
            (s + 1.0) * math.log(2.0)
            + math.lgamma(a + 1.0)
            + math.lgamma(b + 1.0)
            - math.lgamma(s + 2.0)
        )
        if n >= 1:
            beta_std[1] = 4.0 * (a + 1.0) * (b + 1.0) / ((s + 2.0) ** 2 * (s + 3.0))
        if n >= 2:
            kk = k[1:]  # 2 .. n
            num = 4.0 * kk * (kk + a) * (kk + b) * (kk + s)
            den = (2.0 * kk + s) ** 2 * ((2.0 * kk + s) ** 2 - 1.0)
            beta_std[2:] = num / den
        alpha = c + h * alpha_std
        beta = beta_std.copy()
        beta[1:] *= h * h
    return alpha, beta


# ---------------------------------------------------------------------------
# the basis object
# ---------------------------------------------------------------------------


class OrthoBasis:
    """Orthonormal basis ``p_0 .. p_N`` of a measure, with certified nodes.

    Arrays held by the basis are shared, not copied; treat them as read-only.
    """

    def __init__(self, measure: MeasureSpec, n_max: int, nodes, weights, residual: float):
        self.measure = measure
        self.domain = measure.domain
        self.cmap = ConformalMap(measure.domain)
        self.n_max = n_max
        self.nodes = nodes
        self.weights = weights
        self.node_count = len(nodes)
        self.orthonormality_residual = residual
        if measure.weight == "circle_lebesgue":
            self.alpha = None
            self.sqrt_beta = None
            self.kappa = np.ones(n_max + 1)
        else:
            alpha, beta = recurrence_coefficients(measure, n_max)
            self.alpha = alpha
            self.sqrt_beta = np.sqrt(beta)
            # log-space product guards against over/underflow at large degree
            self.kappa = np.exp(-0.5 * np.cumsum(np.log(beta)))
        self.p_nodes = _p_table_at(self, self.nodes, n_max)
        self.conj_p_nodes = (
            _kernels.power_table(np.conj(self.nodes), n_max)
            if measure.weight == "circle_lebesgue"
            else np.conj(self.p_nodes)
        )

    # -- evaluation ---------------------------------------------------------

    def p_table(self, z, upto: int | None = None) -> np.ndarray:
        """Rows ``p_0(z) .. p_upto(z)`` at arbitrary complex points."""
        upto = self.n_max if upto is None else upto
        if not 0 <= upto <= self.n_max:
            raise ParameterError(f"degree {upto} outside basis range 0..{self.n_max}")
        arr = np.atleast_1d(np.asarray(z)).astype(complex)
        return _p_table_at(self, arr, upto)

    def eval_p(self, n: int, z):
        """Value of the orthonormal polynomial ``p_n`` at ``z``."""
        if not 0 <= n <= self.n_max:
            raise ParameterError(f"degree {n} outside basis range 0..{self.n_max}")
        arr = np.atleast_1d(np.asarray(z)).astype(complex)
        vals = _p_table_at(self, arr, n)[n]
        return vals[0] if np.ndim(z) == 0 else vals

    def inner(self, values_at_nodes) -> np.ndarray:
        """Coefficients ``<G, p_n>`` for ``n <= n_max`` from node values of ``G``."""
        vals = np.asarray(values_at_nodes)
        if vals.shape != (self.node_count,):
            raise ParameterError("values must be given at the basis quadrature nodes")
        return (self.conj_p_nodes * self.weights[None, :]) @ vals

    # -- second-type functions ---------------------------------------------

    @property
    def support_cutoff(self) -> float:
        return 1e-3 * self.domain.diameter

    def _check_off_support(self, z: np.ndarray):
        dist = np.asarray(self.domain.distance_to_support(z))
        if np.any(dist < self.support_cutoff):
            raise DomainError(
                f"second-type functions are not evaluated within {self.support_cutoff:.1e} "
                "of the measure's support"
            )

    def second_type_table(self, z, upto: int | None = None) -> np.ndarray:
        """Rows ``s_0(z) .. s_upto(z)``; see module docstring for the method."""
        upto = self.n_max if upto is None else upto
        if upto < 0:
            raise ParameterError("degree must be nonnegative")
        arr = np.atleast_1d(np.asarray(z)).astype(complex)
        self._check_off_support(arr)
        w = self.measure.weight
        if w == "circle_lebesgue":
            # s_n(z) = z^(-n-1) outside the closed unit disk, 0 inside: expand
            # 1/(z - zeta) in powers of zeta on |zeta| = 1 and project.
            inv = np.where(np.abs(arr) > 1.0, 1.0 / arr, 0.0)
            return _kernels.power_table(inv, upto) * inv[None, :]
        if w == "chebyshev":
            return _chebyshev_second_type(self.measure, arr, upto)
        return _miller_second_type(self.measure, arr, upto)

    def second_type(self, n: int, z):
        """``s_n(z)`` for scalar or array ``z``."""
        vals = self.second_type_table(z, upto=n)[n]
        return vals[0] if np.ndim(z) == 0 else vals

    def second_type_quadrature(self, n: int, z):
        """``s_n(z)`` by direct quadrature against the measure.

        On intervals this loses relative accuracy once ``s_n`` decays below
        the roundoff of the oscillatory sum; it is retained as the
        cross-check path and for moderate ``n``.
        """
        if not 0 <= n <= self.n_max:
            raise ParameterError(f"degree {n} outside basis range 0..{self.n_max}")
        arr = np.atleast_1d(np.asarray(z)).astype(complex)
        self._check_off_support(arr)
        coeffs = (self.weights * self.conj_p_nodes[n]).astype(complex)
        vals = _kernels.cauchy_sum(coeffs, self.nodes, arr)
        return vals[0] if np.ndim(z) == 0 else vals

    # -- leading coefficients ----------------------------------------------

    def kappa_ratio(self, n: int, m: int) -> float:
        """``kappa_{n-m} / kappa_n``; bounded above by ``sup_norm(E)^m``."""
        if not 0 <= m <= n <= self.n_max:
            raise ParameterError("kappa_ratio requires 0 <= m <= n <= n_max")
        return float(self.kappa[n - m] / self.kappa[n])


def _p_table_at(basis: OrthoBasis, z: np.ndarray, upto: int) -> np.ndarray:
    if basis.measure.weight == "circle_lebesgue":
        return _kernels.power_table(z, upto)
    return _kernels.recurrence_table(basis.alpha[:upto], basis.sqrt_beta[: upto + 1], z)


def _gram_residual(basis: OrthoBasis) -> float:
    gram = (basis.p_nodes * basis.weights[None, :]) @ basis.conj_p_nodes.T
    return float(np.max(np.abs(gram - np.eye(basis.n_max + 1))))


@functools.lru_cache(maxsize=64)
def build_basis(measure: MeasureSpec, n_max: int) -> OrthoBasis:
    """Construct the basis with a node count certified by the Gram residual.

    Starts from ``max(64, oversample * (n_max + 1))`` nodes and doubles until
    ``max |<p_j, p_k> - delta_jk|`` over ``j, k <= n_max`` is below
    ``quad_tol`` (for the shipped Gauss and trapezoidal rules the first count
    already integrates the Gram integrands exactly; the loop guards the
    policy).  Residuals stuck above ``quad_tol`` that no longer improve under
    doubling are roundoff, not truncation -- Gauss nodes, weights and the
    recurrence each carry O(eps) errors amplified by the degree -- so the
    best level is accepted if it is below a degree-scaled allowance of
    ``25 (n_max + 1)^2 eps``.  Beyond that, ``NumericError``.
    """
    if n_max < 0:
        raise ParameterError("n_max must be nonnegative")
    count = max(64, measure.oversample * (n_max + 1))
    allowance = max(measure.quad_tol, 25.0 * (n_max + 1) ** 2 * np.finfo(float).eps)
    best = None
    previous = math.inf
    while count <= _MAX_NODES:
        nodes, weights = quadrature_rule(measure, count)
        basis = OrthoBasis(measure, n_max, nodes, weights, 0.0)
        residual = _gram_residual(basis)
        basis.orthonormality_residual = residual
        if residual <= measure.quad_tol:
            return basis
        if best is None or residual < best.orthonormality_residual:
            best = basis
        if residual > 0.5 * previous:
            break
        previous = residual
        count *= 2
    if best is not None and best.orthonormality_residual <= allowance:
        return best
    achieved = math.inf if best is None else best.orthonormality_residual
    raise NumericError(
        f"orthonormality residual {achieved:.3e} above tolerance {measure.quad_tol:.1e} "
        f"and the roundoff allowance {allowance:.1e}",
        achieved=achieved,
    )


# ---------------------------------------------------------------------------
# interval second-type functions
# ---------------------------------------------------------------------------


def _phi_parts(measure: MeasureSpec, z: np.ndarray):
    """Pullback ``t``, root ``sqrt(t-1)sqrt(t+1)`` and ``phi = t + root``."""
    c, h = measure.domain.center, measure.domain.halfwidth
    t = (z - c) / h
    root = np.sqrt(t - 1.0) * np.sqrt(t + 1.0)
    return t, root, t + root


def _chebyshev_second_type(measure: MeasureSpec, z: np.ndarray, upto: int) -> np.ndarray:
    # s_0 = 1 / (h root), s_n = sqrt(2) / (h root phi^n): the classical
    # Cauchy transforms of the Chebyshev polynomials, scaled to [a, b].
    _, root, phi = _phi_parts(measure, z)
    h = measure.domain.halfwidth
    out = np.empty((upto + 1, z.shape[0]), dtype=complex)
    base = 1.0 / (h * root)
    out[0] = base
    if upto >= 1:
        inv = 1.0 / phi
        acc = np.full(z.shape[0], math.sqrt(2.0), dtype=complex) * base
        for n in range(1, upto + 1):
            acc = acc * inv
            out[n] = acc
    return out


def _miller_buffer(abs_phi: float) -> int:
    # Trial-solution contamination shrinks like |phi|^(-2B); aim below 1e-17.
    abs_phi = max(abs_phi, 1.0 + 1e-12)
    b = math.ceil(17.0 / (2.0 * math.log10(abs_phi)))
    return min(max(b + 8, 16), 2400)


def _miller_second_type(measure: MeasureSpec, z: np.ndarray, upto: int) -> np.ndarray:
    """Backward recurrence for ``s_n`` (minimal solution), all interval weights.

    A trial solution is recursed downward from degree ``upto + B`` and scaled
    to satisfy the inhomogeneous degree-0 relation
    ``sqrt(beta_1) s_1 = (z - alpha_0) s_0 - sqrt(beta_0)``, which pins the
    normalization without a closed form for ``s_0``.  Per-point rescaling
    offsets guard against overflow of the growing trial values.
    """
    cmap = ConformalMap(measure.domain)
    abs_phi = np.asarray(cmap.abs_phi(z), dtype=float)
    out = np.empty((upto + 1, z.shape[0]), dtype=complex)
    buffers = np.array([_miller_buffer(a) for a in abs_phi])
    # group points by buffer size (rounded up) so each group runs one recursion
    buckets: dict[int, list[int]] = {}
    for idx, b in enumerate(buffers):
        key = int(32 * math.ceil(b / 32))
        buckets.setdefault(key, []).append(idx)
    for b, idxs in buckets.items():
        sel = np.array(idxs)
        out[:, sel] = _miller_group(measure, z[sel], upto, b)
    return out


def _miller_group(measure: MeasureSpec, z: np.ndarray, upto: int, buffer: int) -> np.ndarray:
    n_top = upto + buffer
    alpha, beta = recurrence_coefficients(measure, n_top + 2)
    sb = np.sqrt(beta)
    g = z.shape[0]
    trial = np.zeros((n_top + 2, g), dtype=complex)
    offsets = np.zeros((n_top + 2, g))
    off = np.zeros(g)
    t_hi = np.zeros(g, dtype=complex)
    t_cur = np.ones(g, dtype=complex)
    trial[n_top + 1] = t_hi
    trial[n_top] = t_cur
    for k in range(n_top, 0, -1):
        t_new = ((z - alpha[k]) * t_cur - sb[k + 1] * t_hi) / sb[k]
        big = np.abs(t_new) > 1e250
        if np.any(big):
            scale = np.where(big, 1.0 / np.abs(t_new), 1.0)
            t_new = t_new * scale
            t_cur = t_cur * scale
            off = off + np.log(scale)
        t_hi, t_cur = t_cur, t_new
        trial[k - 1] = t_cur
        trial[k] = t_hi
        offsets[k - 1] = off
        offsets[k] = off
    # rescale every level to the final (degree-0) scale; factors are <= 1
    rel = trial[: upto + 1] * np.exp(offsets[0][None, :] - offsets[: upto + 1])
    denom = (z - alpha[0]) * rel[0] - sb[1] * trial[1] * np.exp(offsets[0] - offsets[1])
    return rel * (sb[0] / denom)[None, :]


# ---------------------------------------------------------------------------
# diagnostics
# ---------------------------------------------------------------------------


def kappa_lower_envelope(basis: OrthoBasis, m_max: int) -> dict:
    """Measured lower envelope of the ratios ``kappa_{n-m} / kappa_n``.

    Returns the per-``m`` minima over ``n`` and their per-step normalization
    ``min_m (min_n ratio)^(1/m)``.  The raw minima scale like
    ``cap(E)^m`` (for ``[-1, 1]``: ``2^-m``), so the per-step value is the
    scale-free witness that the sequence stays bounded away from zero.
    """
    if not 1 <= m_max <= basis.n_max:
        raise ParameterError("m_max must lie in 1..n_max")
    per_m = {}
    for m in range(1, m_max + 1):
        ratios = [basis.kappa_ratio(n, m) for n in range(m, basis.n_max + 1)]
        per_m[m] = min(ratios)
    per_step = min(per_m[m] ** (1.0 / m) for m in per_m)
    return {"per_m": per_m, "per_step": per_step}


def reg_diagnostics(basis: OrthoBasis, probes, degrees=None) -> list[dict]:
    """Root-asymptotics table for ``p_n`` and ``s_n`` at exterior probe points.

    Each row compares ``|p_n(z)|^(1/n)`` with ``|phi(z)|`` and
    ``|s_n(z)|^(1/n)`` with ``1/|phi(z)|``; agreement as ``n`` grows is the
    empirical signature of the regularity hypotheses under which the
    library's rate predictions are exact.
    """
    if degrees is None:
        degrees = [n for n in (10, 20, 40, 60) if n <= basis.n_max]
    probes = np.atleast_1d(np.asarray(probes)).astype(complex)
    rows = []
    pt = basis.p_table(probes)
    st = basis.second_type_table(probes, upto=max(degrees))
    for n in degrees:
        if n <= 0:
            raise ParameterError("diagnostic degrees must be positive")
        for j, z in enumerate(probes):
            absphi = float(np.asarray(basis.cmap.abs_phi(z)))
            rows.append(
                {
                    "z": complex(z),
                    "n": int(n),
                    "p_root": float(np.abs(pt[n, j]) ** (1.0 / n)),
                    "abs_phi": absphi,
                    "s_root": float(np.abs(st[n, j]) ** (1.0 / n)),
                    "inv_abs_phi": 1.0 / absphi,
                }
            )
    return rows
