# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the escape-time and Aberth loops."""

import numpy as np
cimport numpy as cnp
from libc.math cimport fabs, sqrt

cnp.import_array()


def escape_rows(double alpha, double[::1] re, double[::1] im, int max_iter,
                double bailout, int[:, ::1] out):
    cdef Py_ssize_t i, j, w = re.shape[0], h = im.shape[0]
    cdef int n, count
    cdef double zr, zi, cr, ci, t, b2 = bailout * bailout
    with nogil:
        for j in range(h):
            ci = im[j]
            for i in range(w):
                cr = re[i]
                zr = alpha
                zi = 0.0
                count = max_iter + 1
                for n in range(1, max_iter + 1):
                    t = zr * zr - zi * zi + cr
                    zi = 2.0 * zr * zi + ci
                    zr = t
                    if zr * zr + zi * zi > b2:
                        count = n
                        break
                out[j, i] = count


cdef inline double cabs(double complex z) nogil:
    return sqrt(z.real * z.real + z.imag * z.imag)


def aberth_orbit(double alpha, int m, int n, double complex[::1] g,
                 double complex[::1] z, int max_iter, double tol):
    cdef Py_ssize_t d = z.shape[0], ng = g.shape[0], k, j, it
    cdef double complex[::1] w = np.zeros(d, dtype=complex)
    cdef char[::1] done = np.zeros(d, dtype=np.int8)
    cdef double complex x, dx, xm, dxm, F, dF, gv, dg, sigma, ratio, c, zk
    cdef int step, all_done = 0
    cdef Py_ssize_t used = max_iter
    cdef double scale
    with nogil:
        for it in range(1, max_iter + 1):
            for k in range(d):
                if done[k]:
                    w[k] = 0
                    continue
                c = z[k]
                x = alpha
                dx = 0
                xm = x
                dxm = dx
                for step in range(1, n + 1):
                    dx = 2 * x * dx + 1
                    x = x * x + c
                    if step == m:
                        xm = x
                        dxm = dx
                F = x - xm
                dF = dx - dxm
                if F.real == 0 and F.imag == 0:
                    w[k] = 0
                    continue
                gv = 0
                dg = 0
                for j in range(ng - 1, -1, -1):
                    dg = dg * c + gv
                    gv = gv * c + g[j]
                ratio = dF / F - dg / gv
                sigma = 0
                for j in range(d):
                    if j != k:
                        sigma = sigma + 1.0 / (c - z[j])
                w[k] = 1.0 / (ratio - sigma)
            all_done = 1
            for k in range(d):
                if w[k].real != w[k].real or w[k].imag != w[k].imag:
                    w[k] = 0
                z[k] = z[k] - w[k]
                scale = cabs(z[k])
                if scale < 1.0:
                    scale = 1.0
                if cabs(w[k]) <= tol * scale:
                    done[k] = 1
                if not done[k]:
                    all_done = 0
            if all_done:
                used = it
                break
    return int(used), bool(all_done)
