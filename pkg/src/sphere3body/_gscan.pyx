# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled scan kernel: the reduced scalar equation g evaluated over
arrays of shape angles. Mirrors _gscan_py.py exactly."""

import numpy as np

from libc.math cimport sin

BACKEND = "cython"


cdef inline double _g(double x, double a, double nu1, double nu2) nogil:
    cdef double sx = sin(x)
    cdef double sxa = sin(x - a)
    cdef double al = 1.0 if sx >= 0.0 else -1.0
    cdef double be = 1.0 if sxa >= 0.0 else -1.0
    cdef double s2x = sx * sx
    cdef double s2xa = sxa * sxa
    cdef double sa = sin(a)
    cdef double sa2 = sa * sa
    cdef double sin2x = sin(2.0 * x)
    cdef double sin2xa = sin(2.0 * (x - a))
    return (al * be * s2x * s2xa * (nu1 * sin2x + nu2 * sin2xa)
            - sa2 * (al * s2x * sin2x - be * s2xa * sin2xa)
            - sa2 * sin(2.0 * a) * (nu2 * al * s2x + nu1 * be * s2xa))


def g_array(x, double a, double nu1, double nu2):
    cdef double[::1] xv = np.ascontiguousarray(x, dtype=np.float64)
    out = np.empty(xv.shape[0], dtype=np.float64)
    cdef double[::1] ov = out
    cdef Py_ssize_t i, n = xv.shape[0]
    with nogil:
        for i in range(n):
            ov[i] = _g(xv[i], a, nu1, nu2)
    return out


def g_scalar(double x, double a, double nu1, double nu2):
    return _g(x, a, nu1, nu2)
