"""Builders for the elementary blocks H_m(z), K_m(z), L_m(z) and Jordan blocks."""

from __future__ import annotations

import numpy as np

__all__ = ["block_H", "block_K", "block_L", "jordan_block", "quasi_jordan_P"]


def block_H(m: int, z: complex) -> np.ndarray:
    """The ``m x m`` block ``H_m(z)``.

    ``2z`` on the anti-diagonal, ``1`` on the two neighbouring
    anti-diagonals, ``+i`` on the super-diagonal and ``-i`` on the
    sub-diagonal, all halved.  Hermitian exactly when ``z`` is real.

    Examples
    --------
    >>> block_H(2, 0.0)
    array([[0.5+0.j , 0. +0.5j],
           [0. -0.5j, 0.5+0.j ]])
    """
    if m < 1:
        raise ValueError("block size must be positive")
    H = np.zeros((m, m), dtype=complex)
    for i in range(m):
        for j in range(m):
            s = i + j
            if s == m - 1:
                H[i, j] += 2 * z
            if s == m - 2 or s == m:
                H[i, j] += 1
            if j == i + 1:
                H[i, j] += 1j
            elif j == i - 1:
                H[i, j] -= 1j
    return H / 2


def block_K(m: int, z: complex) -> np.ndarray:
    """``K_m(z) = [[0, -i H_m(z)], [i H_m(z), 0]]``."""
    H = block_H(m, z)
    Z = np.zeros((m, m), dtype=complex)
    return np.block([[Z, -1j * H], [1j * H, Z]])


def block_L(m: int, z: complex) -> np.ndarray:
    """``L_m(z) = [[0, H_m(z)], [H_m(z)*, 0]]``."""
    H = block_H(m, z)
    Z = np.zeros((m, m), dtype=complex)
    return np.block([[Z, H], [H.conj().T, Z]])


def jordan_block(m: int, lam: complex) -> np.ndarray:
    """Upper Jordan block ``J_m(lam, 1)``."""
    return (np.eye(m) * lam + np.eye(m, k=1)).astype(complex)


def quasi_jordan_P(m: int) -> np.ndarray:
    """``P_m = e^{-i pi/4} (I + i E_m) / sqrt(2)``."""
    E = np.fliplr(np.eye(m))
    return np.exp(-1j * np.pi / 4) / np.sqrt(2) * (np.eye(m) + 1j * E)
