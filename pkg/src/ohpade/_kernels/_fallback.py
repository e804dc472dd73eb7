"""Pure NumPy reference implementations of the numerical kernels.

These are the import-time fallback when the compiled extension is absent and
the ground truth the extension is tested against.  They are deliberately
dtype-agnostic: object arrays holding extended-precision scalars (for example
``mpmath.mpc``) run through unchanged, which is how high-precision oracle runs
are produced.
"""

from __future__ import annotations

import numpy as np

BACKEND = "fallback"


def recurrence_table(alpha, sqrt_beta, z):
    """Orthonormal-polynomial table from a three-term recurrence.

    Parameters
    ----------
    alpha : (n,) array
        Diagonal recurrence coefficients of the orthogonality measure.
    sqrt_beta : (n + 1,) array
        Square roots of the off-diagonal coefficients; ``sqrt_beta[0]`` is the
        square root of the total mass, so ``p_0 = 1 / sqrt_beta[0]``.
    z : (m,) array
        Evaluation points.

    Returns
    -------
    (n + 1, m) array with rows ``p_0(z), ..., p_n(z)`` satisfying
    ``sqrt_beta[k+1] p_{k+1} = (z - alpha[k]) p_k - sqrt_beta[k] p_{k-1}``.
    """
    alpha = np.asarray(alpha)
    sqrt_beta = np.asarray(sqrt_beta)
    z = np.asarray(z)
    n = alpha.shape[0]
    out = np.empty((n + 1, z.shape[0]), dtype=np.result_type(z, sqrt_beta))
    out[0] = 1.0 / sqrt_beta[0]
    if n == 0:
        return out
    out[1] = (z - alpha[0]) * out[0] / sqrt_beta[1]
    for k in range(1, n):
        out[k + 1] = ((z - alpha[k]) * out[k] - sqrt_beta[k] * out[k - 1]) / sqrt_beta[k + 1]
    return out


def power_table(z, nmax):
    """Table ``z**k`` for ``k = 0 .. nmax`` (rows) over the points ``z``."""
    z = np.asarray(z)
    out = np.empty((nmax + 1, z.shape[0]), dtype=np.result_type(z, float))
    out[0] = np.ones_like(z)
    for k in range(1, nmax + 1):
        out[k] = out[k - 1] * z
    return out


def cauchy_sum(coeffs, nodes, z):
    """Weighted Cauchy-kernel sums ``sum_i coeffs[i] / (z_t - nodes[i])``.

    Accumulates over nodes to keep memory linear in the larger of the two
    point sets.
    """
    coeffs = np.asarray(coeffs)
    nodes = np.asarray(nodes)
    z = np.asarray(z)
    out = np.zeros(z.shape[0], dtype=np.result_type(coeffs, nodes, z))
    for i in range(nodes.shape[0]):
        out += coeffs[i] / (z - nodes[i])
    return out


def cauchy_table(weights, table, nodes, z):
    """Simultaneous Cauchy sums for every row of a node table.

    Computes ``out[k, t] = sum_i weights[i] * table[k, i] / (z_t - nodes[i])``,
    the workhorse behind second-type function tables on contours.
    """
    weights = np.asarray(weights)
    table = np.asarray(table)
    nodes = np.asarray(nodes)
    z = np.asarray(z)
    kernel = 1.0 / (z[None, :] - nodes[:, None])
    return (table * weights[None, :]) @ kernel
