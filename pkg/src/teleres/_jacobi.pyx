# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled cyclic Jacobi sweeps for complex Hermitian matrices.

Same contract as ``_jacobi_py.sweep_eigh``; selected at import time by
``teleres.linalg`` when the extension is available.
"""

from libc.math cimport sqrt


def sweep_eigh(double complex[:, ::1] a, double complex[:, ::1] q,
               double tol, int max_sweeps):
    """Diagonalize Hermitian ``a`` in place, accumulating eigenvectors in ``q``.

    ``a`` must be Hermitian, C-contiguous complex128; ``q`` starts as the
    identity. Returns the number of sweeps used, or -1 if the off-diagonal
    Frobenius mass is still above ``tol`` after ``max_sweeps`` sweeps.
    """
    cdef Py_ssize_t n = a.shape[0]
    cdef Py_ssize_t p, r, i, j
    cdef int sweep
    cdef double off, mag, tau, t, c, s, app, aqq, alpha, gamma
    cdef double complex apq, phase, phase_c, tp, tq

    for sweep in range(max_sweeps):
        off = 0.0
        for i in range(n):
            for j in range(n):
                if i != j:
                    off += a[i, j].real * a[i, j].real + a[i, j].imag * a[i, j].imag
        if sqrt(off) <= tol:
            return sweep

        for p in range(n - 1):
            for r in range(p + 1, n):
                apq = a[p, r]
                mag = sqrt(apq.real * apq.real + apq.imag * apq.imag)
                if mag == 0.0:
                    continue
                phase = apq / mag
                phase_c = phase.conjugate()
                app = a[p, p].real
                aqq = a[r, r].real
                tau = (aqq - app) / (2.0 * mag)
                if tau >= 0.0:
                    t = 1.0 / (tau + sqrt(1.0 + tau * tau))
                else:
                    t = -1.0 / (-tau + sqrt(1.0 + tau * tau))
                c = 1.0 / sqrt(1.0 + t * t)
                s = t * c
                alpha = app - t * mag
                gamma = aqq + t * mag

                for j in range(n):
                    tp = a[p, j]
                    tq = a[r, j]
                    a[p, j] = c * tp - s * phase * tq
                    a[r, j] = s * phase_c * tp + c * tq
                for i in range(n):
                    tp = a[i, p]
                    tq = a[i, r]
                    a[i, p] = c * tp - s * phase_c * tq
                    a[i, r] = s * phase * tp + c * tq
                # the rotation annihilates (p, r) analytically; pin the
                # rotated entries so roundoff cannot accumulate there
                a[p, r] = 0.0
                a[r, p] = 0.0
                a[p, p] = alpha
                a[r, r] = gamma
                for i in range(n):
                    tp = q[i, p]
                    tq = q[i, r]
                    q[i, p] = c * tp - s * phase_c * tq
                    q[i, r] = s * phase * tp + c * tq

    off = 0.0
    for i in range(n):
        for j in range(n):
            if i != j:
                off += a[i, j].real * a[i, j].real + a[i, j].imag * a[i, j].imag
    if sqrt(off) <= tol:
        return max_sweeps
    return -1
