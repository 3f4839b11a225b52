# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled lattice-sum kernels; see _lattice_np for the reference semantics."""

from libc.math cimport cos, sin, sqrt, pow

import numpy as np
cimport numpy as cnp

cnp.import_array()


def cos_sum(double[:, ::1] qpts, double[:, ::1] sites, double power):
    cdef Py_ssize_t nq = qpts.shape[0], ns = sites.shape[0]
    cdef cnp.ndarray[double, ndim=1] out = np.empty(nq)
    cdef double[::1] ov = out
    cdef double[::1] w = np.empty(ns)
    cdef Py_ssize_t i, j
    cdef double acc, qx, qy
    for j in range(ns):
        w[j] = pow(sqrt(sites[j, 0] * sites[j, 0] + sites[j, 1] * sites[j, 1]), -power)
    for i in range(nq):
        qx = qpts[i, 0]
        qy = qpts[i, 1]
        acc = 0.0
        for j in range(ns):
            acc += cos(qx * sites[j, 0] + qy * sites[j, 1]) * w[j]
        ov[i] = acc
    return out


def dyn_mat(double[:, ::1] qpts, double[:, ::1] sites):
    cdef Py_ssize_t nq = qpts.shape[0], ns = sites.shape[0]
    cdef cnp.ndarray[double, ndim=2] out = np.empty((nq, 3))
    cdef double[:, ::1] ov = out
    cdef double[::1] wxx = np.empty(ns)
    cdef double[::1] wyy = np.empty(ns)
    cdef double[::1] wxy = np.empty(ns)
    cdef Py_ssize_t i, j
    cdef double r2, inv_r5, c, axx, ayy, axy, qx, qy
    for j in range(ns):
        r2 = sites[j, 0] * sites[j, 0] + sites[j, 1] * sites[j, 1]
        inv_r5 = pow(r2, -2.5)
        wxx[j] = 3.0 * (5.0 * sites[j, 0] * sites[j, 0] / r2 - 1.0) * inv_r5
        wyy[j] = 3.0 * (5.0 * sites[j, 1] * sites[j, 1] / r2 - 1.0) * inv_r5
        wxy[j] = 15.0 * sites[j, 0] * sites[j, 1] / r2 * inv_r5
    for i in range(nq):
        qx = qpts[i, 0]
        qy = qpts[i, 1]
        axx = 0.0
        ayy = 0.0
        axy = 0.0
        for j in range(ns):
            c = 1.0 - cos(qx * sites[j, 0] + qy * sites[j, 1])
            axx += c * wxx[j]
            ayy += c * wyy[j]
            axy += c * wxy[j]
        ov[i, 0] = axx
        ov[i, 1] = ayy
        ov[i, 2] = axy
    return out


def sin_vec(double[:, ::1] qpts, double[:, ::1] sites):
    cdef Py_ssize_t nq = qpts.shape[0], ns = sites.shape[0]
    cdef cnp.ndarray[double, ndim=2] out = np.empty((nq, 2))
    cdef double[:, ::1] ov = out
    cdef double[::1] wx = np.empty(ns)
    cdef double[::1] wy = np.empty(ns)
    cdef Py_ssize_t i, j
    cdef double r2, inv_r5, s, ax, ay, qx, qy
    for j in range(ns):
        r2 = sites[j, 0] * sites[j, 0] + sites[j, 1] * sites[j, 1]
        inv_r5 = pow(r2, -2.5)
        wx[j] = sites[j, 0] * inv_r5
        wy[j] = sites[j, 1] * inv_r5
    for i in range(nq):
        qx = qpts[i, 0]
        qy = qpts[i, 1]
        ax = 0.0
        ay = 0.0
        for j in range(ns):
            s = sin(qx * sites[j, 0] + qy * sites[j, 1])
            ax += s * wx[j]
            ay += s * wy[j]
        ov[i, 0] = ax
        ov[i, 1] = ay
    return out
