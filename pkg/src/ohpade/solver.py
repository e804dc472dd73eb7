"""Simultaneous rational approximants driven by orthogonal expansions.

For a system ``(F_1, ..., F_d)`` with multi-index ``(m_1, ..., m_d)`` the
common denominator ``Q`` of the order-``n`` approximant is a nontrivial
polynomial of degree at most ``|m| = m_1 + ... + m_d`` satisfying

    [Q z^k F_i]_n = 0     for  i = 1..d,  k = 0..m_i - 1,

where ``[G]_n`` is the ``n``-th coefficient relative to the orthonormal
basis.  This is a homogeneous ``|m| x (|m| + 1)`` linear system whose
unknowns are the monomial coefficients of ``Q``; the representative returned
is the right singular vector of the smallest singular value, normalized to
leading coefficient 1 when the degree is full.  Numerators collect the
truncated expansions of ``z^k Q F_i``.

On the circle with normalized arc length, coefficients relative to ``z^n``
coincide with Maclaurin coefficients, so the classical interpolation-based
construction (a Toeplitz system in the Taylor coefficients) must produce the
same denominators; ``classical_denominator`` implements it and serves as an
independent oracle.
"""

from __future__ import annotations

import dataclasses

import numpy as np

from .basis import OrthoBasis
from .coeffs import CoeffTable
from .errors import DegenerateSystemError, ParameterError
from .functions import AnalyticFunction

RANK_TOL = 1e-8
DEFICIENCY_TOL = 1e-10


@dataclasses.dataclass(frozen=True)
class MultiIndex:
    """Orders ``(m_1, ..., m_d)``, one positive integer per component."""

    m: tuple

    def __post_init__(self):
        object.__setattr__(self, "m", tuple(int(v) for v in self.m))
        if len(self.m) == 0 or any(v < 1 for v in self.m):
            raise ParameterError("multi-index entries must be positive integers")

    @property
    def total(self) -> int:
        return sum(self.m)

    def __iter__(self):
        return iter(self.m)

    def __len__(self):
        return len(self.m)


@dataclasses.dataclass(frozen=True)
class FunctionSystem:
    """Functions paired with the multi-index of the approximation problem."""

    functions: tuple
    multi_index: MultiIndex

    def __post_init__(self):
        object.__setattr__(self, "functions", tuple(self.functions))
        if len(self.functions) != len(self.multi_index):
            raise ParameterError("one multi-index entry per function is required")

    @property
    def size(self) -> int:
        return len(self.functions)


def system(functions, m) -> FunctionSystem:
    return FunctionSystem(functions=tuple(functions), multi_index=MultiIndex(tuple(m)))


@dataclasses.dataclass
class DenominatorResult:
    """Denominator of one approximant.

    ``q`` holds monomial coefficients, low degree first, trimmed at the last
    significant coefficient and normalized so the trimmed leading coefficient
    is 1.  ``unique`` reports whether the kernel of the defining system is
    one-dimensional at the rank tolerance; ``degree_deficient`` whether the
    representative's degree fell below the maximal degree.
    """

    n: int
    q: np.ndarray
    singular_values: np.ndarray
    unique: bool
    degree_deficient: bool
    nullspace_dim: int

    @property
    def degree(self) -> int:
        return len(self.q) - 1

    def __call__(self, z):
        arr = np.asarray(z, dtype=complex)
        out = np.zeros_like(arr)
        for c in reversed(self.q):
            out = out * arr + c
        return out


def coefficient_tables(basis: OrthoBasis, sys: FunctionSystem) -> list[CoeffTable]:
    """One shifted-coefficient table per component, ready for reuse."""
    return [CoeffTable(basis, fn) for fn in sys.functions]


def assemble_system(tables, n: int, multi_index: MultiIndex) -> np.ndarray:
    """Matrix ``M[(i, k)][j] = [z^(j+k) F_i]_n`` with rows ordered by (i, k)."""
    if len(tables) != len(multi_index):
        raise ParameterError("one coefficient table per component is required")
    total = multi_index.total
    rows = []
    for table, mi in zip(tables, multi_index):
        block = table.block(total + mi - 1, n)
        for k in range(mi):
            rows.append(block[k : k + total + 1, n])
    return np.array(rows)


def solve_denominator(
    matrix: np.ndarray,
    n: int,
    rank_tol: float = RANK_TOL,
    deficiency_tol: float = DEFICIENCY_TOL,
) -> DenominatorResult:
    """Extract the denominator from the homogeneous system matrix."""
    matrix = np.asarray(matrix, dtype=complex)
    if matrix.ndim != 2 or matrix.shape[1] < matrix.shape[0] + 1:
        raise ParameterError(
            "expected a coefficient matrix with at least one more column than rows"
        )
    scale = np.max(np.abs(matrix))
    if scale == 0.0:
        raise DegenerateSystemError("coefficient matrix is identically zero")
    _, sv, vh = np.linalg.svd(matrix / scale)
    vector = np.conj(vh[-1])
    rank = int(np.sum(sv > rank_tol * sv[0]))
    nullspace_dim = matrix.shape[1] - rank
    unique = nullspace_dim == 1
    q, deficient = _normalize_monic(vector, deficiency_tol)
    return DenominatorResult(
        n=n,
        q=q,
        singular_values=sv * scale,
        unique=unique,
        degree_deficient=deficient,
        nullspace_dim=nullspace_dim,
    )


def _normalize_monic(vector: np.ndarray, deficiency_tol: float):
    norm = float(np.linalg.norm(vector))
    significant = np.abs(vector) >= deficiency_tol * norm
    if not np.any(significant):
        raise DegenerateSystemError("nullspace vector has no significant coefficients")
    top = int(np.max(np.nonzero(significant)[0]))
    deficient = top < len(vector) - 1
    q = vector[: top + 1] / vector[top]
    return q, deficient


@dataclasses.dataclass
class ApproximantSet:
    """Denominator plus numerators ``P_(k,i)`` in the orthonormal basis.

    ``numerators[(i, k)]`` lists coefficients of ``P`` relative to
    ``p_0 .. p_(n-1)``; the rational approximant to ``F_i`` is
    ``P_(0,i) / Q``.
    """

    n: int
    multi_index: MultiIndex
    denominator: DenominatorResult
    numerators: dict

    def evaluate(self, basis: OrthoBasis, i: int, z, k: int = 0):
        coeffs = self.numerators[(i, k)]
        arr = np.atleast_1d(np.asarray(z)).astype(complex)
        if len(coeffs) == 0:
            p_vals = np.zeros(arr.shape[0], dtype=complex)
        else:
            table = basis.p_table(arr, upto=len(coeffs) - 1)
            p_vals = coeffs @ table
        vals = p_vals / self.denominator(arr)
        return vals[0] if np.ndim(z) == 0 else vals


def numerators(tables, denominator: DenominatorResult, n: int, multi_index: MultiIndex) -> ApproximantSet:
    """Truncated expansions ``P_(k,i) = sum_{b < n} [z^k Q F_i]_b p_b``."""
    q = denominator.q
    out = {}
    for i, (table, mi) in enumerate(zip(tables, multi_index)):
        block = table.block(multi_index.total + mi - 1, max(n - 1, 0))
        for k in range(mi):
            if n == 0:
                out[(i, k)] = np.zeros(0, dtype=complex)
                continue
            acc = np.zeros(n, dtype=complex)
            for j, qj in enumerate(q):
                acc += qj * block[j + k, :n]
            out[(i, k)] = acc
    return ApproximantSet(n=n, multi_index=multi_index, denominator=denominator, numerators=out)


def solve_hp(basis: OrthoBasis, sys: FunctionSystem, n: int, tables=None):
    """Denominator and numerators of the order-``n`` approximant."""
    if n < 0:
        raise ParameterError("order n must be nonnegative")
    if tables is None:
        tables = coefficient_tables(basis, sys)
    matrix = assemble_system(tables, n, sys.multi_index)
    den = solve_denominator(matrix, n)
    approx = numerators(tables, den, n, sys.multi_index)
    return den, approx


def definition_residual(basis: OrthoBasis, sys: FunctionSystem, approx: ApproximantSet) -> float:
    """Re-integrated residual ``max |<Q z^k F_i - P_(k,i), p_j>|`` for ``j <= n``.

    Recomputed by quadrature from point values, independently of the tables
    that produced the approximant.
    """
    n = approx.n
    if n > basis.n_max:
        raise ParameterError("basis degree range too small for the residual check")
    den = approx.denominator
    worst = 0.0
    q_vals = den(basis.nodes)
    for i, (fn, mi) in enumerate(zip(sys.functions, sys.multi_index)):
        f_vals = fn(basis.nodes)
        for k in range(mi):
            p_coeffs = approx.numerators[(i, k)]
            p_vals = (
                p_coeffs @ basis.p_nodes[: len(p_coeffs)]
                if len(p_coeffs)
                else np.zeros_like(q_vals)
            )
            resid_vals = q_vals * basis.nodes**k * f_vals - p_vals
            coeffs = basis.inner(resid_vals)[: n + 1]
            worst = max(worst, float(np.max(np.abs(coeffs))))
    return worst


def classical_denominator(taylor_rows, n: int, multi_index: MultiIndex) -> DenominatorResult:
    """Oracle denominator from Maclaurin data (interpolation construction).

    ``taylor_rows[i]`` must hold the Maclaurin coefficients of ``F_i`` at
    least up to index ``n``.  Row ``(i, k)`` of the system demands that the
    coefficient of ``z^n`` in ``z^k Q F_i`` vanish, i.e.
    ``sum_j q_j f_i[n - k - j] = 0``; on the circle this is the same linear
    system as the orthogonal construction.
    """
    rows = []
    for coeffs, mi in zip(taylor_rows, multi_index):
        c = np.asarray(coeffs, dtype=complex)
        if len(c) < n + 1:
            raise ParameterError("Maclaurin data must reach index n")
        for k in range(mi):
            row = [c[n - k - j] if n - k - j >= 0 else 0.0 for j in range(multi_index.total + 1)]
            rows.append(row)
    return solve_denominator(np.array(rows, dtype=complex), n)
