"""Underdetermined denominators: fewer vanishing conditions than degree.

For a single function ``F``, a degree bound ``m`` and a condition count
``m_star <= m``, the denominator ``Q`` (degree at most ``m``, nontrivial)
must satisfy only

    [z^k Q F]_n = 0    for  k = 0..m_star - 1,

an ``m_star x (m + 1)`` homogeneous system whose nullspace has dimension at
least ``m + 1 - m_star``.  Despite the slack, ``m_star`` zeros of any
solution track the ``m_star`` singularities of ``F`` closest to the support
(counting multiplicity) whenever those are poles; the remaining zeros are
unconstrained.  ``pole_capture_trace`` measures that attraction along a
range of orders and fits its geometric rate.
"""

from __future__ import annotations

import dataclasses

import numpy as np
import scipy.optimize

from .basis import OrthoBasis
from .coeffs import CoeffTable
from .errors import InsufficientDataError, ParameterError
from .functions import AnalyticFunction
from .poles import roots
from .solver import DenominatorResult, solve_denominator

CAPTURE_FLOOR = 1e-9


def incomplete_matrix(table: CoeffTable, n: int, m: int, m_star: int) -> np.ndarray:
    """Matrix ``M[k][j] = [z^(j+k) F]_n`` for ``k < m_star``, ``j <= m``."""
    block = table.block(m + m_star - 1, n)
    return np.array([block[k : k + m + 1, n] for k in range(m_star)])


def solve_incomplete(
    basis: OrthoBasis,
    fn: AnalyticFunction,
    m: int,
    m_star: int,
    n: int,
    table: CoeffTable | None = None,
) -> DenominatorResult:
    """One representative denominator of the underdetermined problem."""
    if not 1 <= m_star <= m:
        raise ParameterError("need 1 <= m_star <= m")
    if n < 0:
        raise ParameterError("order n must be nonnegative")
    if table is None:
        table = CoeffTable(basis, fn)
    matrix = incomplete_matrix(table, n, m, m_star)
    return solve_denominator(matrix, n)


@dataclasses.dataclass
class CaptureTrace:
    """Distance from denominator zeros to target poles along an order range.

    ``zeros_per_n[idx]`` lists all clustered zeros of the representative
    denominator at order ``ns[idx]``; ``distances[idx]`` is the worst
    matched distance from the targets to distinct zeros.
    """

    m: int
    m_star: int
    targets: tuple
    ns: np.ndarray
    distances: np.ndarray
    nullspace_dims: np.ndarray
    zeros_per_n: tuple
    rate: float
    rate_n_used: int

    def zero_rows(self):
        """One row per zero per order: (n, zero, nearest-target distance, dim)."""
        for n, zeros, dim in zip(self.ns, self.zeros_per_n, self.nullspace_dims):
            for z in zeros:
                dist = min(abs(z - t) for t in self.targets) if self.targets else float("nan")
                yield int(n), complex(z), float(dist), int(dim)


def matched_distance(zeros, targets) -> float:
    """Largest pairwise distance under the optimal zero-to-target assignment.

    Every target must be covered by a distinct zero; surplus zeros are free.
    """
    targets = list(targets)
    zeros = list(zeros)
    if len(zeros) < len(targets):
        return float("inf")
    if not targets:
        return 0.0
    cost = np.array([[abs(z - t) for t in targets] for z in zeros])
    rows, cols = scipy.optimize.linear_sum_assignment(cost)
    return float(np.max(cost[rows, cols]))


def pole_capture_trace(
    basis: OrthoBasis,
    fn: AnalyticFunction,
    m: int,
    m_star: int,
    ns,
    targets,
    floor: float = CAPTURE_FLOOR,
) -> CaptureTrace:
    """Track how fast ``m_star`` zeros approach the ``targets``.

    ``targets`` lists the attracting poles with multiplicity (so its length
    is ``m_star``).  The fitted rate is the slope of ``log(distance)``
    against ``n`` over the orders where the distance sits above ``floor``
    (below it, arithmetic noise dominates); at least four such orders are
    required.
    """
    targets = [complex(t) for t in targets]
    if len(targets) != m_star:
        raise ParameterError("expected exactly m_star target poles (with multiplicity)")
    table = CoeffTable(basis, fn)
    ns = np.asarray(list(ns), dtype=int)
    distances = np.empty(len(ns))
    dims = np.empty(len(ns), dtype=int)
    zeros_per_n = []
    for idx, n in enumerate(ns):
        den = solve_incomplete(basis, fn, m, m_star, int(n), table=table)
        zeros = [z for z, mult in roots(den.q) for _ in range(mult)]
        zeros_per_n.append(tuple(zeros))
        distances[idx] = matched_distance(zeros, targets)
        dims[idx] = den.nullspace_dim
    usable = np.isfinite(distances) & (distances > floor)
    if int(np.sum(usable)) >= 4:
        slope = np.polyfit(ns[usable], np.log(distances[usable]), 1)[0]
        rate = float(np.exp(slope))
    elif bool(np.all(distances[np.isfinite(distances)] <= floor)) and len(ns) >= 4:
        # Exact capture: every order already sits at the noise floor.
        rate = 0.0
    else:
        raise InsufficientDataError(
            "fewer than 4 orders with capture distance above the noise floor"
        )
    return CaptureTrace(
        m=m,
        m_star=m_star,
        targets=tuple(targets),
        ns=ns,
        distances=distances,
        nullspace_dims=dims,
        zeros_per_n=tuple(zeros_per_n),
        rate=rate,
        rate_n_used=int(np.sum(usable)),
    )
