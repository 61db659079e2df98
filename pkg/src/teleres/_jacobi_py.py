"""Pure-Python fallback for the cyclic Jacobi kernel.

Implements the identical rotation schedule as the compiled extension
``teleres._jacobi`` (same pair ordering, same rotation parameters), using
numpy slice updates instead of C loops. Used when the extension is not
built, or when forced via the ``TELERES_KERNEL`` environment variable.
"""

from __future__ import annotations

import math

import numpy as np


def _offdiag_mass(a: np.ndarray) -> float:
    off = a.copy()
    np.fill_diagonal(off, 0.0)
    return float(np.linalg.norm(off))


def sweep_eigh(a: np.ndarray, q: np.ndarray, tol: float, max_sweeps: int) -> int:
    """Diagonalize Hermitian ``a`` in place, accumulating eigenvectors in ``q``.

    Returns the number of sweeps used, or -1 if the off-diagonal Frobenius
    mass is still above ``tol`` after ``max_sweeps`` sweeps.
    """
    n = a.shape[0]
    for sweep in range(max_sweeps):
        if _offdiag_mass(a) <= tol:
            return sweep
        for p in range(n - 1):
            for r in range(p + 1, n):
                apq = a[p, r]
                mag = abs(apq)
                if mag == 0.0:
                    continue
                phase = apq / mag
                tau = (a[r, r].real - a[p, p].real) / (2.0 * mag)
                if tau >= 0.0:
                    t = 1.0 / (tau + math.sqrt(1.0 + tau * tau))
                else:
                    t = -1.0 / (-tau + math.sqrt(1.0 + tau * tau))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c
                alpha = a[p, p].real - t * mag
                gamma = a[r, r].real + t * mag

                rp = a[p, :].copy()
                rq = a[r, :].copy()
                a[p, :] = c * rp - s * phase * rq
                a[r, :] = s * np.conj(phase) * rp + c * rq
                cp = a[:, p].copy()
                cq = a[:, r].copy()
                a[:, p] = c * cp - s * np.conj(phase) * cq
                a[:, r] = s * phase * cp + c * cq
                # the rotation annihilates (p, r) analytically; pin the
                # rotated entries so roundoff cannot accumulate there
                a[p, r] = 0.0
                a[r, p] = 0.0
                a[p, p] = alpha
                a[r, r] = gamma
                qp = q[:, p].copy()
                qq = q[:, r].copy()
                q[:, p] = c * qp - s * np.conj(phase) * qq
                q[:, r] = s * phase * qp + c * qq

    if _offdiag_mass(a) <= tol:
        return max_sweeps
    return -1
