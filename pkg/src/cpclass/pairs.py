"""Hermitian-symmetric pairs and congruence certificates."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Tuple

import numpy as np

from .matlin import (
    DEFAULT_TOL,
    NotHermitian,
    NotSymmetric,
    SizeMismatch,
    Tolerances,
    as_complex_matrix,
    is_hermitian,
    is_symmetric,
)

__all__ = ["MatrixPair", "CongruenceCertificate", "apply_certificate", "verify_certificate"]


@dataclass(frozen=True)
class MatrixPair:
    """A pair ``(A, B)`` with ``A`` Hermitian and ``B`` symmetric.

    The stored matrices are symmetrized copies of the input.
    """

    A: np.ndarray
    B: np.ndarray

    def __init__(self, A, B, tol: Tolerances = DEFAULT_TOL):
        A = as_complex_matrix(A, "A")
        B = as_complex_matrix(B, "B")
        if A.shape != B.shape:
            raise SizeMismatch(f"A is {A.shape[0]}x{A.shape[0]} but B is {B.shape[0]}x{B.shape[0]}")
        if not is_hermitian(A, tol):
            raise NotHermitian("A is not Hermitian")
        if not is_symmetric(B, tol):
            raise NotSymmetric("B is not symmetric")
        object.__setattr__(self, "A", (A + A.conj().T) / 2)
        object.__setattr__(self, "B", (B + B.T) / 2)

    @property
    def n(self) -> int:
        return self.A.shape[0]


@dataclass(frozen=True)
class CongruenceCertificate:
    """``(P, c)`` witnessing ``(A, B) ~ (c P* A P, conj(c) P^T B P)``."""

    P: np.ndarray
    c: complex = 1.0

    def __post_init__(self):
        object.__setattr__(self, "P", np.asarray(self.P, dtype=complex))
        object.__setattr__(self, "c", complex(self.c))

    def inverse(self) -> "CongruenceCertificate":
        return CongruenceCertificate(np.linalg.inv(self.P), np.conj(self.c))

    def then(self, other: "CongruenceCertificate") -> "CongruenceCertificate":
        """Apply ``self`` first, then ``other``."""
        return CongruenceCertificate(self.P @ other.P, self.c * other.c)


def apply_certificate(A, B, cert: CongruenceCertificate) -> Tuple[np.ndarray, np.ndarray]:
    P, c = cert.P, cert.c
    return c * P.conj().T @ A @ P, np.conj(c) * P.T @ B @ P


def verify_certificate(p1, p2, cert: CongruenceCertificate, tol: Tolerances = DEFAULT_TOL):
    """Relative residuals of a claimed congruence ``p1 -> p2``.

    ``residual_A = ||c P* A1 P - A2|| / (1 + ||A2||)`` in the Frobenius norm,
    and likewise for ``B``.  The pair passes when both are at most
    ``tol.residual_tol``.
    """
    A1, B1 = _arrays(p1)
    A2, B2 = _arrays(p2)
    if A1.shape != A2.shape or cert.P.shape != A1.shape:
        raise SizeMismatch("sizes of pairs and certificate differ")
    A, B = apply_certificate(A1, B1, cert)
    rA = np.linalg.norm(A - A2) / (1 + np.linalg.norm(A2))
    rB = np.linalg.norm(B - B2) / (1 + np.linalg.norm(B2))
    return float(rA), float(rB)


def _arrays(p):
    if isinstance(p, MatrixPair):
        return p.A, p.B
    A, B = p
    return np.asarray(A, dtype=complex), np.asarray(B, dtype=complex)
