"""Compiled Jacobi kernels for small dense complex matrices.

Both kernels run cyclic sweeps with a fixed (row-major) pivot order, so
repeated calls on the same input are bit-identical. They are written for
the 2x2 / 4x4 matrices this package works with; nothing here is tuned for
large n.
"""

from __future__ import annotations

import numpy as np
from numba import njit


@njit(cache=True)
def eigh_kernel(H, tol, max_sweeps):
    """Cyclic two-sided Jacobi for a Hermitian matrix.

    Returns (w, V) with eigenvalues w ascending and unitary V whose
    column i pairs with w[i]. Sweeps stop once the off-diagonal
    Frobenius norm drops below tol * max(1, ||H||_F).
    """
    n = H.shape[0]
    A = H.copy()
    V = np.eye(n, dtype=np.complex128)
    fro = 0.0
    for i in range(n):
        for j in range(n):
            fro += abs(A[i, j]) ** 2
    thr = tol * max(1.0, np.sqrt(fro))
    for _ in range(max_sweeps):
        off = 0.0
        for p in range(n - 1):
            for q in range(p + 1, n):
                off += 2.0 * abs(A[p, q]) ** 2
        if np.sqrt(off) <= thr:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = A[p, q]
                aab = abs(apq)
                if aab <= 1e-300:
                    continue
                app = A[p, p].real
                aqq = A[q, q].real
                phase = apq / aab
                theta = 0.5 * np.arctan2(2.0 * aab, app - aqq)
                c = np.cos(theta)
                s = np.sin(theta)
                sp = s * np.conj(phase)
                sq = s * phase
                # A <- J^H A J with J = [[c, -sq], [sp, c]] on (p, q)
                for k in range(n):
                    akp = A[k, p]
                    akq = A[k, q]
                    A[k, p] = c * akp + sp * akq
                    A[k, q] = -sq * akp + c * akq
                for k in range(n):
                    apk = A[p, k]
                    aqk = A[q, k]
                    A[p, k] = c * apk + sq * aqk
                    A[q, k] = -sp * apk + c * aqk
                A[p, q] = 0.0
                A[q, p] = 0.0
                for k in range(n):
                    vkp = V[k, p]
                    vkq = V[k, q]
                    V[k, p] = c * vkp + sp * vkq
                    V[k, q] = -sq * vkp + c * vkq
    w = np.empty(n)
    for i in range(n):
        w[i] = A[i, i].real
    order = np.argsort(w, kind="mergesort")
    return w[order], V[:, order]


@njit(cache=True)
def svd_kernel(M, tol, max_sweeps):
    """One-sided Jacobi SVD of a square complex matrix.

    Rotations orthogonalise column pairs in place; singular values are
    the final column norms, so tiny values keep full absolute accuracy
    instead of the sqrt-of-eigenvalue noise floor. Returns (U, s, V)
    with s descending and M = U diag(s) V^H. Columns of U belonging to
    (numerically) zero singular values are completed by Gram-Schmidt
    against the canonical basis.
    """
    m, n = M.shape
    A = M.copy()
    V = np.eye(n, dtype=np.complex128)
    for _ in range(max_sweeps):
        rotated = False
        for p in range(n - 1):
            for q in range(p + 1, n):
                app = 0.0
                aqq = 0.0
                apq = 0.0 + 0.0j
                for k in range(m):
                    app += abs(A[k, p]) ** 2
                    aqq += abs(A[k, q]) ** 2
                    apq += np.conj(A[k, p]) * A[k, q]
                aab = abs(apq)
                if aab <= tol * np.sqrt(app * aqq) or aab < 1e-300:
                    continue
                rotated = True
                phase = apq / aab
                theta = 0.5 * np.arctan2(2.0 * aab, app - aqq)
                c = np.cos(theta)
                s = np.sin(theta)
                sp = s * np.conj(phase)
                sq = s * phase
                for k in range(m):
                    akp = A[k, p]
                    akq = A[k, q]
                    A[k, p] = c * akp + sp * akq
                    A[k, q] = -sq * akp + c * akq
                for k in range(n):
                    vkp = V[k, p]
                    vkq = V[k, q]
                    V[k, p] = c * vkp + sp * vkq
                    V[k, q] = -sq * vkp + c * vkq
        if not rotated:
            break
    sig = np.empty(n)
    for j in range(n):
        acc = 0.0
        for k in range(m):
            acc += abs(A[k, j]) ** 2
        sig[j] = np.sqrt(acc)
    order = np.argsort(-sig, kind="mergesort")
    sig = sig[order]
    A = A[:, order]
    V = V[:, order]
    U = np.zeros((m, m), dtype=np.complex128)
    rank_tol = 1e-13 * max(1.0, sig[0])
    filled = 0
    for j in range(min(m, n)):
        if sig[j] > rank_tol:
            for k in range(m):
                U[k, j] = A[k, j] / sig[j]
            filled = j + 1
    j = filled
    basis = 0
    while j < m and basis < 2 * m:
        cand = np.zeros(m, dtype=np.complex128)
        cand[basis % m] = 1.0
        for i in range(j):
            ip = 0.0 + 0.0j
            for k in range(m):
                ip += np.conj(U[k, i]) * cand[k]
            for k in range(m):
                cand[k] -= ip * U[k, i]
        nrm = 0.0
        for k in range(m):
            nrm += abs(cand[k]) ** 2
        nrm = np.sqrt(nrm)
        if nrm > 1e-6:
            for k in range(m):
                U[k, j] = cand[k] / nrm
            j += 1
        basis += 1
    return U, sig, V
