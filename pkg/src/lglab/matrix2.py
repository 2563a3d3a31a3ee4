"""Exact 2x2 complex matrix helpers.

Everything in this package lives on a single qubit, so matrices are plain
(2, 2) complex numpy arrays and the handful of operations we need (product,
adjoint, trace, principal PSD square root) are written out directly instead
of going through general n x n routines.
"""

from __future__ import annotations

import numpy as np

from .errors import NotPsd

HERMITIAN_TOL = 1e-12
PSD_EIG_TOL = 1e-10

IDENTITY = np.eye(2, dtype=complex)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
PAULI = (SIGMA_X, SIGMA_Y, SIGMA_Z)


def as_mat2(a) -> np.ndarray:
    """Coerce to a (2, 2) complex array, validating the shape."""
    m = np.asarray(a, dtype=complex)
    if m.shape != (2, 2):
        raise ValueError(f"expected a 2x2 matrix, got shape {m.shape}")
    return m


def mat_mul(a, b) -> np.ndarray:
    return as_mat2(a) @ as_mat2(b)


def adjoint(a) -> np.ndarray:
    return as_mat2(a).conj().T


def trace(a) -> complex:
    m = as_mat2(a)
    return m[0, 0] + m[1, 1]


def is_hermitian(a, tol: float = HERMITIAN_TOL) -> bool:
    m = as_mat2(a)
    return bool(np.max(np.abs(m - m.conj().T)) <= tol)


def is_density(a, tol: float = HERMITIAN_TOL) -> bool:
    """Hermitian, unit trace, eigenvalues >= -tol."""
    m = as_mat2(a)
    if not is_hermitian(m, tol):
        return False
    if abs(trace(m) - 1.0) > tol:
        return False
    return min_eigenvalue(m) >= -1e-10


def min_eigenvalue(a) -> float:
    """Smaller eigenvalue of a hermitian 2x2 matrix, in closed form."""
    m = as_mat2(a)
    tr = (m[0, 0] + m[1, 1]).real
    det = (m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]).real
    disc = max(tr * tr - 4.0 * det, 0.0)
    return 0.5 * (tr - np.sqrt(disc))


def psd_sqrt(a) -> np.ndarray:
    """Principal square root of a hermitian PSD 2x2 matrix.

    Uses the closed form sqrt(A) = (A + sqrt(det A) I) / sqrt(tr A + 2 sqrt(det A)),
    falling back to an eigendecomposition when the denominator vanishes
    (A = 0 up to rounding). Raises NotPsd if an eigenvalue is below -1e-10;
    smaller negative rounding residue is clamped to zero.
    """
    m = as_mat2(a)
    if not is_hermitian(m, 1e-10):
        raise NotPsd("matrix is not hermitian")
    if min_eigenvalue(m) < -PSD_EIG_TOL:
        raise NotPsd(f"negative eigenvalue {min_eigenvalue(m):.3e}")
    tr = (m[0, 0] + m[1, 1]).real
    det = max((m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]).real, 0.0)
    s = np.sqrt(det)
    denom_sq = tr + 2.0 * s
    if denom_sq < 1e-12:
        return _eig_sqrt(m)
    root = (m + s * IDENTITY) / np.sqrt(denom_sq)
    return 0.5 * (root + root.conj().T)


def _eig_sqrt(m: np.ndarray) -> np.ndarray:
    vals, vecs = np.linalg.eigh(m)
    vals = np.clip(vals, 0.0, None)
    return (vecs * np.sqrt(vals)) @ vecs.conj().T
