"""Dense complex matrix kernel.

Tolerance handling, Hermitian eigendecomposition, Takagi factorization,
numerical rank and Sylvester inertia.  Matrices are plain ``numpy`` arrays
of dtype ``complex128``.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Optional, Tuple

import numpy as np
import scipy.linalg as sla

__all__ = [
    "MatrixError",
    "NotHermitian",
    "NotSymmetric",
    "Singular",
    "SizeMismatch",
    "ToleranceBreakdown",
    "Unsupported",
    "Tolerances",
    "InertiaTriple",
    "as_complex_matrix",
    "hermitian_eigendecomposition",
    "takagi_factorization",
    "numerical_rank",
    "sylvester_inertia",
    "direct_sum",
    "backward_identity",
    "is_hermitian",
    "is_symmetric",
]


class MatrixError(ValueError):
    """Base class for errors raised by this package."""


class NotHermitian(MatrixError):
    pass


class NotSymmetric(MatrixError):
    pass


class Singular(MatrixError):
    pass


class SizeMismatch(MatrixError):
    pass


class ToleranceBreakdown(MatrixError):
    """Numerical decisions came out inconsistent at the given tolerances."""


class Unsupported(MatrixError):
    pass


@dataclass(frozen=True)
class Tolerances:
    """Thresholds used for every numerical decision.

    Parameters
    ----------
    rank_tol : float, optional
        Relative singular value cutoff.  ``None`` means ``n * eps * 64``
        where ``n`` is the size of the matrix at hand.
    eig_cluster_tol : float
        Absolute gap below which eigenvalues are grouped, and the
        threshold used for snapping small parameters to zero.
    residual_tol : float
        Acceptance threshold for certificate residuals.
    """

    rank_tol: Optional[float] = None
    eig_cluster_tol: float = 1e-6
    residual_tol: float = 1e-8

    def __post_init__(self):
        if self.rank_tol is not None and not 0 < self.rank_tol < 1:
            raise ValueError("rank_tol must lie in (0, 1)")
        if self.eig_cluster_tol <= 0 or self.residual_tol <= 0:
            raise ValueError("tolerances must be strictly positive")

    def rank_cutoff(self, n: int) -> float:
        if self.rank_tol is not None:
            return self.rank_tol
        return max(n, 1) * np.finfo(float).eps * 64

    def with_(self, **kw) -> "Tolerances":
        return replace(self, **kw)


DEFAULT_TOL = Tolerances()


@dataclass(frozen=True)
class InertiaTriple:
    """Sylvester inertia ``(p, r, z)`` with a transform ``Q``.

    ``Q* A Q = -I_p (+) I_r (+) 0_z``.
    """

    n_neg: int
    n_pos: int
    n_zero: int
    transform: np.ndarray

    @property
    def matrix(self) -> np.ndarray:
        d = [-1.0] * self.n_neg + [1.0] * self.n_pos + [0.0] * self.n_zero
        return np.diag(np.array(d, dtype=complex))

    @property
    def signature(self) -> Tuple[int, int, int]:
        return self.n_neg, self.n_pos, self.n_zero


def as_complex_matrix(M, name: str = "matrix") -> np.ndarray:
    """Return ``M`` as a square complex128 array, checking finiteness."""
    arr = np.array(M, dtype=complex)
    if arr.ndim == 0:
        arr = arr.reshape(1, 1)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise SizeMismatch(f"{name} must be square, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise MatrixError(f"{name} has non-finite entries")
    return arr


def _scale(M: np.ndarray) -> float:
    return max(1.0, float(np.linalg.norm(M)))


def is_hermitian(A, tol: Tolerances = DEFAULT_TOL) -> bool:
    A = np.asarray(A)
    return bool(np.linalg.norm(A - A.conj().T) <= tol.residual_tol * _scale(A))


def is_symmetric(B, tol: Tolerances = DEFAULT_TOL) -> bool:
    B = np.asarray(B)
    return bool(np.linalg.norm(B - B.T) <= tol.residual_tol * _scale(B))


def direct_sum(*blocks) -> np.ndarray:
    """Block diagonal complex matrix; empty blocks are allowed."""
    mats = [np.atleast_2d(np.asarray(b, dtype=complex)) for b in blocks]
    mats = [m for m in mats if m.size]
    if not mats:
        return np.zeros((0, 0), dtype=complex)
    return sla.block_diag(*mats).astype(complex)


def backward_identity(m: int) -> np.ndarray:
    """The ``m x m`` backward identity ``E_m``."""
    return np.fliplr(np.eye(m)).astype(complex)


def hermitian_eigendecomposition(A, tol: Tolerances = DEFAULT_TOL):
    """Eigenvalues (ascending) and a unitary eigenbasis of a Hermitian matrix.

    Raises
    ------
    NotHermitian
        If ``A`` is not Hermitian within ``tol.residual_tol``.
    """
    A = as_complex_matrix(A, "A")
    if not is_hermitian(A, tol):
        raise NotHermitian("A differs from its conjugate transpose")
    Ah = (A + A.conj().T) / 2
    w, Q = np.linalg.eigh(Ah)
    return w, Q


def numerical_rank(M, tol: Tolerances = DEFAULT_TOL) -> int:
    """Count singular values above ``rank_tol`` times the largest one."""
    M = np.atleast_2d(np.asarray(M, dtype=complex))
    if M.size == 0:
        return 0
    s = np.linalg.svd(M, compute_uv=False)
    if s[0] == 0:
        return 0
    return int(np.sum(s > tol.rank_cutoff(max(M.shape)) * s[0]))


def takagi_factorization(B, tol: Tolerances = DEFAULT_TOL):
    """Takagi factorization ``U^T B U = diag(s_1, ..., s_m, 0, ..., 0)``.

    With ``B = B1 + i B2`` the real symmetric ``M = [[B1, B2], [B2, -B1]]``
    has eigenvalues ``+-s_j``.  An eigenvector ``[x; y]`` for ``s > 0`` gives
    ``z = x + i y`` with ``B conj(z) = s z``, and the vectors from an
    orthonormal basis of the positive eigenspace are orthonormal in
    ``C^n``.  So ``U = conj(Z)`` on the range, whatever the gaps between the
    ``s_j``; the kernel part completes ``U`` to a unitary matrix.

    Returns
    -------
    U : ndarray
        Unitary matrix.
    s : ndarray
        The ``m`` nonzero Takagi values, descending.
    m : int
        Numerical rank of ``B``.
    """
    B = as_complex_matrix(B, "B")
    if not is_symmetric(B, tol):
        raise NotSymmetric("B differs from its transpose")
    n = B.shape[0]
    B = (B + B.T) / 2
    m = numerical_rank(B, tol)
    if not np.any(B - np.diag(np.diag(B))):
        # diagonal input: stable sort by modulus and fix phases, exactly
        d = np.diag(B)
        order = np.argsort(-np.abs(d), kind="stable")
        ph = np.exp(-0.5j * np.angle(d[order]))
        ph[m:] = 1.0
        U = np.eye(n, dtype=complex)[:, order] * ph
        return U, np.abs(d[order[:m]]).astype(float), m
    M = np.block([[B.real, B.imag], [B.imag, -B.real]])
    w, V = np.linalg.eigh(M)
    top = np.argsort(w)[::-1][:m]
    Z = V[:n, top] + 1j * V[n:, top]
    U = np.empty((n, n), dtype=complex)
    U[:, :m] = Z.conj()
    if m < n:
        # orthonormal complement of the range columns
        Qf, _ = np.linalg.qr(np.hstack([U[:, :m], np.eye(n)]))
        U[:, m:] = Qf[:, m:n]
    return U, w[top].copy(), m


def sylvester_inertia(A, tol: Tolerances = DEFAULT_TOL) -> InertiaTriple:
    """Inertia of a Hermitian matrix with a congruence transform.

    Eigenvectors of negative eigenvalues come first (ascending), then the
    positive ones (ascending), then the kernel.  Columns are scaled by
    ``1/sqrt|lambda|``; kernel columns keep unit norm.
    """
    w, Q = hermitian_eigendecomposition(A, tol)
    scale = max(1.0, float(np.max(np.abs(w))) if w.size else 1.0)
    zero = np.abs(w) <= tol.eig_cluster_tol * scale
    neg = np.where((w < 0) & ~zero)[0]
    pos = np.where((w > 0) & ~zero)[0]
    ker = np.where(zero)[0]
    order = np.concatenate([neg, pos, ker]).astype(int)
    d = np.ones(len(w))
    nz = np.concatenate([neg, pos]).astype(int)
    d[nz] = 1.0 / np.sqrt(np.abs(w[nz]))
    T = Q[:, order] * d[order]
    return InertiaTriple(len(neg), len(pos), len(ker), T)
