"""Dense complex linear algebra primitives for 2x2 and 4x4 matrices.

Eigendecomposition and SVD use cyclic Jacobi sweeps with a deterministic
pivot order (see _jacobi), chosen over LAPACK for bit-reproducible output
at this matrix size. Composite two-qubit indices follow the convention
(i, i') -> 2*i + i', first subsystem major.
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

from ._jacobi import eigh_kernel, svd_kernel

SWEEP_TOL = 1e-14
SVD_PAIR_TOL = 1e-15
MAX_SWEEPS = 60

PAULI_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=np.complex128)


class HermEigResult(NamedTuple):
    """Eigenvalues in ascending order; eigenvector i sits in column i."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product, first factor major in the composite index."""
    return np.kron(np.asarray(a, dtype=np.complex128), np.asarray(b, dtype=np.complex128))


def partial_transpose(rho: np.ndarray) -> np.ndarray:
    """Transpose the second-subsystem indices of a 4x4 bipartite matrix.

    Implements (i i'),(j j') -> (i j'),(j i'): trace and hermiticity are
    preserved, and applying it twice gives back the input.
    """
    rho = np.asarray(rho, dtype=np.complex128)
    if rho.shape != (4, 4):
        raise ValueError(f"partial transpose needs a 4x4 matrix, got {rho.shape}")
    return rho.reshape(2, 2, 2, 2).transpose(0, 3, 2, 1).reshape(4, 4)


def herm_eig(H: np.ndarray) -> HermEigResult:
    """Eigendecomposition of a Hermitian matrix via cyclic Jacobi sweeps.

    Raises ValueError if the input deviates from Hermiticity by more than
    1e-12 in Frobenius norm.
    """
    H = np.asarray(H, dtype=np.complex128)
    if H.ndim != 2 or H.shape[0] != H.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {H.shape}")
    dev = np.linalg.norm(H - H.conj().T)
    if dev > 1e-12:
        raise ValueError(f"matrix is not Hermitian (deviation {dev:.3e})")
    w, V = eigh_kernel(np.ascontiguousarray((H + H.conj().T) / 2), SWEEP_TOL, MAX_SWEEPS)
    return HermEigResult(w, V)


def svd(M: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """One-sided Jacobi SVD: M = U @ diag(s) @ V.conj().T, s descending."""
    M = np.asarray(M, dtype=np.complex128)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {M.shape}")
    U, s, V = svd_kernel(np.ascontiguousarray(M), SVD_PAIR_TOL, MAX_SWEEPS)
    return U, s, V


def psd_sqrt(rho: np.ndarray) -> np.ndarray:
    """Hermitian PSD square root M with M @ M.conj().T == rho.

    Eigenvalues in [-1e-12, 1e-12] are treated as exact zeros before the
    square root. The negative side is round-off tolerance (anything below
    -1e-12 raises); flooring the positive side as well keeps numerically
    rank-deficient inputs exactly rank-deficient, which is what keeps the
    singular values of downstream products at their true zero instead of
    a sqrt(eps) noise floor.
    """
    w, V = herm_eig(rho)
    if w[0] < -1e-12:
        raise ValueError(f"matrix is not positive semidefinite (min eigenvalue {w[0]:.3e})")
    w = np.where(np.abs(w) <= 1e-12, 0.0, w)
    M = (V * np.sqrt(w)) @ V.conj().T
    return (M + M.conj().T) / 2


def swap_operator() -> np.ndarray:
    """The 4x4 operator exchanging the two subsystems.

    Built as sum_ij e_ij (x) e_ji; satisfies P @ P = I and
    P @ kron(A, B) @ P = kron(B, A) for all 2x2 A, B.
    """
    P = np.zeros((4, 4), dtype=np.complex128)
    for i in range(2):
        for j in range(2):
            P[2 * i + j, 2 * j + i] = 1.0
    return P
