# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels: C translations of ``ohpade._kernels._fallback``.

Same signatures and semantics.  Real double and complex double inputs get
specialised C loops; anything else (object arrays of extended-precision
scalars, long doubles) is delegated to the dtype-agnostic fallback so both
backends agree on every input.  The fallback module remains the reference
implementation; equality of the two backends is asserted by the test suite.
"""

import numpy as np

from . import _fallback as _fb

BACKEND = "compiled"

ctypedef fused scalar:
    double
    double complex


cdef bint _needs_fallback(arrays) except -1:
    """True when the common dtype is outside plain double precision."""
    rt = np.result_type(*arrays, np.float64)
    return rt != np.float64 and rt != np.complex128


cdef void _recurrence_fill(
    const double[::1] a, const double[::1] sb, const scalar[::1] z, scalar[:, ::1] out
) noexcept nogil:
    cdef Py_ssize_t n = a.shape[0]
    cdef Py_ssize_t m = z.shape[0]
    cdef Py_ssize_t j, k
    cdef double inv0 = 1.0 / sb[0]
    for j in range(m):
        out[0, j] = inv0
    if n == 0:
        return
    for j in range(m):
        out[1, j] = (z[j] - a[0]) * out[0, j] / sb[1]
    for k in range(1, n):
        for j in range(m):
            out[k + 1, j] = ((z[j] - a[k]) * out[k, j] - sb[k] * out[k - 1, j]) / sb[k + 1]


def recurrence_table(alpha, sqrt_beta, z):
    zarr = np.asarray(z)
    if _needs_fallback((alpha, sqrt_beta, zarr)):
        return _fb.recurrence_table(alpha, sqrt_beta, z)
    cdef double[::1] a = np.ascontiguousarray(alpha, dtype=np.float64)
    cdef double[::1] sb = np.ascontiguousarray(sqrt_beta, dtype=np.float64)
    cdef double[::1] zd
    cdef double complex[::1] zc
    cdef double[:, ::1] outd
    cdef double complex[:, ::1] outc
    if np.iscomplexobj(zarr):
        zz = np.ascontiguousarray(zarr, dtype=np.complex128)
        out = np.empty((a.shape[0] + 1, zz.shape[0]), dtype=np.complex128)
        zc, outc = zz, out
        with nogil:
            _recurrence_fill(a, sb, zc, outc)
    else:
        zz = np.ascontiguousarray(zarr, dtype=np.float64)
        out = np.empty((a.shape[0] + 1, zz.shape[0]), dtype=np.float64)
        zd, outd = zz, out
        with nogil:
            _recurrence_fill(a, sb, zd, outd)
    return out


cdef void _power_fill(const scalar[::1] z, scalar[:, ::1] out) noexcept nogil:
    cdef Py_ssize_t m = z.shape[0]
    cdef Py_ssize_t nmax = out.shape[0] - 1
    cdef Py_ssize_t j, k
    for j in range(m):
        out[0, j] = 1.0
    for k in range(1, nmax + 1):
        for j in range(m):
            out[k, j] = out[k - 1, j] * z[j]


def power_table(z, Py_ssize_t nmax):
    zarr = np.asarray(z)
    if _needs_fallback((zarr,)):
        return _fb.power_table(z, nmax)
    cdef double[::1] zd
    cdef double complex[::1] zc
    cdef double[:, ::1] outd
    cdef double complex[:, ::1] outc
    if np.iscomplexobj(zarr):
        zz = np.ascontiguousarray(zarr, dtype=np.complex128)
        out = np.empty((nmax + 1, zz.shape[0]), dtype=np.complex128)
        zc, outc = zz, out
        with nogil:
            _power_fill(zc, outc)
    else:
        zz = np.ascontiguousarray(zarr, dtype=np.float64)
        out = np.empty((nmax + 1, zz.shape[0]), dtype=np.float64)
        zd, outd = zz, out
        with nogil:
            _power_fill(zd, outd)
    return out


cdef void _cauchy_sum_fill(
    const scalar[::1] c, const scalar[::1] nd, const scalar[::1] z, scalar[::1] out
) noexcept nogil:
    cdef Py_ssize_t m = nd.shape[0]
    cdef Py_ssize_t t = z.shape[0]
    cdef Py_ssize_t i, j
    cdef scalar acc, zt
    for j in range(t):
        zt = z[j]
        acc = 0
        for i in range(m):
            acc = acc + c[i] / (zt - nd[i])
        out[j] = acc


def cauchy_sum(coeffs, nodes, z):
    arrs = (np.asarray(coeffs), np.asarray(nodes), np.asarray(z))
    if _needs_fallback(arrs):
        return _fb.cauchy_sum(coeffs, nodes, z)
    cdef double[::1] cd, ndd, zd, outd
    cdef double complex[::1] cc, ndc, zc, outc
    if any(np.iscomplexobj(a) for a in arrs):
        c = np.ascontiguousarray(arrs[0], dtype=np.complex128)
        nd = np.ascontiguousarray(arrs[1], dtype=np.complex128)
        zz = np.ascontiguousarray(arrs[2], dtype=np.complex128)
        out = np.empty(zz.shape[0], dtype=np.complex128)
        cc, ndc, zc, outc = c, nd, zz, out
        with nogil:
            _cauchy_sum_fill(cc, ndc, zc, outc)
    else:
        c = np.ascontiguousarray(arrs[0], dtype=np.float64)
        nd = np.ascontiguousarray(arrs[1], dtype=np.float64)
        zz = np.ascontiguousarray(arrs[2], dtype=np.float64)
        out = np.empty(zz.shape[0], dtype=np.float64)
        cd, ndd, zd, outd = c, nd, zz, out
        with nogil:
            _cauchy_sum_fill(cd, ndd, zd, outd)
    return out


cdef void _cauchy_kernel_fill(
    const scalar[::1] w, const scalar[::1] nd, const scalar[::1] z, scalar[:, ::1] kern
) noexcept nogil:
    cdef Py_ssize_t m = nd.shape[0]
    cdef Py_ssize_t t = z.shape[0]
    cdef Py_ssize_t i, j
    cdef scalar wi, ndi
    for i in range(m):
        wi = w[i]
        ndi = nd[i]
        for j in range(t):
            kern[i, j] = wi / (z[j] - ndi)


def cauchy_table(weights, table, nodes, z):
    arrs = (np.asarray(weights), np.asarray(table), np.asarray(nodes), np.asarray(z))
    if _needs_fallback(arrs):
        return _fb.cauchy_table(weights, table, nodes, z)
    cdef double[::1] wd, ndd, zd
    cdef double complex[::1] wc, ndc, zc
    cdef double[:, ::1] kd
    cdef double complex[:, ::1] kc
    if any(np.iscomplexobj(a) for a in arrs):
        w = np.ascontiguousarray(arrs[0], dtype=np.complex128)
        tb = np.ascontiguousarray(arrs[1], dtype=np.complex128)
        nd = np.ascontiguousarray(arrs[2], dtype=np.complex128)
        zz = np.ascontiguousarray(arrs[3], dtype=np.complex128)
        kern = np.empty((nd.shape[0], zz.shape[0]), dtype=np.complex128)
        wc, ndc, zc, kc = w, nd, zz, kern
        with nogil:
            _cauchy_kernel_fill(wc, ndc, zc, kc)
    else:
        w = np.ascontiguousarray(arrs[0], dtype=np.float64)
        tb = np.ascontiguousarray(arrs[1], dtype=np.float64)
        nd = np.ascontiguousarray(arrs[2], dtype=np.float64)
        zz = np.ascontiguousarray(arrs[3], dtype=np.float64)
        kern = np.empty((nd.shape[0], zz.shape[0]), dtype=np.float64)
        wd, ndd, zd, kd = w, nd, zz, kern
        with nogil:
            _cauchy_kernel_fill(wd, ndd, zd, kd)
    return tb @ kern
