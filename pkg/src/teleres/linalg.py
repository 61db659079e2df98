"""Dense complex Hermitian linear-algebra kernel for small matrices (dim <= 16).

The eigensolver is a cyclic Jacobi iteration: deterministic, robust, and
fast enough at these sizes. A compiled Cython kernel is preferred at import
time; a pure-Python kernel with the identical rotation schedule is the
fallback. Set ``TELERES_KERNEL=python`` or ``TELERES_KERNEL=compiled`` to
force one.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

import numpy as np

__all__ = [
    "EigenDecomposition",
    "NotHermitian",
    "NoConvergence",
    "DimensionMismatch",
    "KERNEL_BACKEND",
    "hermitian_eigen",
    "tensor",
    "trace_product",
    "hermiticity_defect",
]

HERMITIAN_TOL = 1e-10
# convergence when the off-diagonal Frobenius mass drops below this
# fraction of ||M||_F; an absolute 1e-14 is unreachable in double
# precision for matrices of non-unit scale
OFFDIAG_RTOL = 1e-14
MAX_SWEEPS = 100


class NotHermitian(ValueError):
    """Input matrix is not Hermitian within tolerance."""


class NoConvergence(RuntimeError):
    """Jacobi iteration did not converge within the sweep cap."""


class DimensionMismatch(ValueError):
    """Operands have incompatible shapes."""


def _load_kernel():
    choice = os.environ.get("TELERES_KERNEL", "").strip().lower()
    if choice in {"py", "python"}:
        from . import _jacobi_py

        return _jacobi_py, "python"
    try:
        from . import _jacobi

        return _jacobi, "compiled"
    except ImportError:
        from . import _jacobi_py

        return _jacobi_py, "python"


_KERNEL, KERNEL_BACKEND = _load_kernel()


@dataclass(frozen=True)
class EigenDecomposition:
    """Full spectrum of a Hermitian matrix.

    ``eigenvalues`` are real and ascending; ``eigenvectors[:, i]`` is the
    unit eigenvector for ``eigenvalues[i]``. Ties keep the order of the
    original diagonal index.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def as_complex_matrix(mat: np.ndarray) -> np.ndarray:
    m = np.ascontiguousarray(mat, dtype=np.complex128)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise DimensionMismatch(f"expected a square matrix, got shape {m.shape}")
    return m


def hermiticity_defect(mat: np.ndarray) -> float:
    """max |M_ij - conj(M_ji)| over all entries."""
    m = as_complex_matrix(mat)
    return float(np.abs(m - m.conj().T).max(initial=0.0))


def hermitian_eigen(
    mat: np.ndarray,
    *,
    max_sweeps: int = MAX_SWEEPS,
    backend: str | None = None,
) -> EigenDecomposition:
    """Eigendecompose a Hermitian matrix with cyclic Jacobi rotations.

    Deterministic for identical input. Raises :class:`NotHermitian` when
    the Hermiticity defect exceeds 1e-10 and :class:`NoConvergence` when
    the sweep cap is exhausted.
    """
    m = as_complex_matrix(mat)
    defect = float(np.abs(m - m.conj().T).max(initial=0.0))
    if defect > HERMITIAN_TOL:
        raise NotHermitian(f"Hermiticity defect {defect:.3e} exceeds {HERMITIAN_TOL:.0e}")

    if backend is None:
        kernel = _KERNEL
    elif backend == "python":
        from . import _jacobi_py as kernel
    elif backend == "compiled":
        from . import _jacobi as kernel
    else:
        raise ValueError(f"unknown backend {backend!r}")

    n = m.shape[0]
    work = np.ascontiguousarray(0.5 * (m + m.conj().T))
    vecs = np.eye(n, dtype=np.complex128)
    scale = float(np.linalg.norm(work))
    if scale > 0.0:
        sweeps = kernel.sweep_eigh(work, vecs, OFFDIAG_RTOL * scale, max_sweeps)
        if sweeps < 0:
            raise NoConvergence(f"no convergence after {max_sweeps} sweeps (n={n})")

    vals = np.diagonal(np.asarray(work)).real.copy()
    order = np.argsort(vals, kind="stable")
    return EigenDecomposition(vals[order], np.asarray(vecs)[:, order])


def tensor(amat: np.ndarray, bmat: np.ndarray) -> np.ndarray:
    """Kronecker product, subsystem-A-major: |i_A i_B> -> i_A * d_B + i_B."""
    return np.kron(
        np.asarray(amat, dtype=np.complex128), np.asarray(bmat, dtype=np.complex128)
    )


def trace_product(amat: np.ndarray, bmat: np.ndarray) -> complex:
    """Tr(A B) as sum_ij A_ij B_ji, without forming the matrix product."""
    a = as_complex_matrix(amat)
    b = as_complex_matrix(bmat)
    if a.shape != b.shape:
        raise DimensionMismatch(f"trace_product needs equal dims, got {a.shape} and {b.shape}")
    return complex(np.einsum("ij,ji->", a, b))
