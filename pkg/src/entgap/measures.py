"""Scalar entanglement quantities of a two-qubit state.

concurrence(rho)         max(0, s1 - s2 - s3 - s4), s_i the descending
                         singular values of sqrt(rho)^T (sy (x) sy) sqrt(rho)
negativity(rho)          max(0, -2 * smallest eigenvalue of the partial
                         transpose)
eof_from_concurrence(C)  binary entropy of (1 + sqrt(1 - C^2)) / 2, in bits
participation_ratio(rho) 1 / tr(rho^2)

Concurrence bounds negativity from above for every state; equality holds
exactly on pure states and on the class produced by
states.equality_class_state.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import PAULI_Y, kron, partial_transpose, psd_sqrt, svd, herm_eig
from .states import DensityMatrix

_SYSY = kron(PAULI_Y, PAULI_Y).real

# Round-off outside a measure's exact range clamps silently up to this
# much; anything larger means an internal inconsistency and raises.
_RANGE_TOL = 1e-12


def _rho_matrix(rho: "DensityMatrix | np.ndarray") -> np.ndarray:
    if isinstance(rho, DensityMatrix):
        return rho.matrix
    return DensityMatrix(rho).matrix


def _clamp(value: float, lo: float, hi: float, what: str) -> float:
    if value < lo - _RANGE_TOL or value > hi + _RANGE_TOL:
        raise RuntimeError(f"internal consistency error: {what} = {value!r} outside [{lo}, {hi}]")
    return min(max(value, lo), hi)


@dataclass(frozen=True)
class EntanglementReport:
    """The four measures of one state."""

    concurrence: float
    negativity: float
    eof: float
    participation_ratio: float

    def __post_init__(self):
        if self.negativity > self.concurrence + 1e-10:
            raise RuntimeError("internal consistency error: negativity exceeds concurrence")


def q_matrix(rho: "DensityMatrix | np.ndarray", factor: np.ndarray | None = None) -> np.ndarray:
    """factor^T (sy (x) sy) factor, for any factor with factor factor^H = rho.

    Defaults to the Hermitian PSD root, giving a 4x4 Q. A 4xk factor (for
    instance the bare state vector of a pure state, as a single column)
    gives the k-sized Q. The nonzero singular values do not depend on
    which factor is chosen: the gauge freedom is a right unitary.
    """
    m = _rho_matrix(rho)
    if factor is None:
        factor = psd_sqrt(m)
    else:
        factor = np.asarray(factor, dtype=np.complex128)
        if factor.ndim != 2 or factor.shape[0] != 4 or factor.shape[1] < 1:
            raise ValueError(f"factor must be 4xk, got {factor.shape}")
        if np.linalg.norm(factor @ factor.conj().T - m) > 1e-10:
            raise ValueError("factor does not reproduce the state: factor @ factor^H != rho")
    return factor.T @ _SYSY @ factor


def _concurrence_raw(rho: "DensityMatrix | np.ndarray") -> float:
    """s1 - s2 - s3 - s4 before thresholding at zero."""
    _, s, _ = svd(q_matrix(rho))
    return float(s[0] - s[1] - s[2] - s[3])


def concurrence(rho: "DensityMatrix | np.ndarray") -> float:
    return _clamp(max(0.0, _concurrence_raw(rho)), 0.0, 1.0, "concurrence")


def _negativity_raw(rho: "DensityMatrix | np.ndarray") -> float:
    """-2 * smallest partial-transpose eigenvalue, before thresholding."""
    w, _ = herm_eig(partial_transpose(_rho_matrix(rho)))
    return float(-2.0 * w[0])


def negativity(rho: "DensityMatrix | np.ndarray") -> float:
    return _clamp(max(0.0, _negativity_raw(rho)), 0.0, 1.0, "negativity")


def eof_from_concurrence(C: float) -> float:
    """Entanglement of formation in bits, as a function of concurrence."""
    if C < -1e-12 or C > 1.0 + 1e-12:
        raise ValueError(f"concurrence must lie in [0, 1], got {C!r}")
    C = min(max(C, 0.0), 1.0)
    root = np.sqrt(max(0.0, 1.0 - C * C))
    ent = 0.0
    for mu in ((1.0 + root) / 2.0, (1.0 - root) / 2.0):
        if mu > 0.0:
            ent -= mu * np.log2(mu)
    return _clamp(float(ent), 0.0, 1.0, "entanglement of formation")


def participation_ratio(rho: "DensityMatrix | np.ndarray") -> float:
    """1 / tr(rho^2): 1 on pure states, 4 on the maximally mixed state."""
    m = _rho_matrix(rho)
    purity = float(np.sum(np.abs(m) ** 2))  # tr(rho^2) for Hermitian rho
    return _clamp(1.0 / purity, 1.0, 4.0, "participation ratio")


def pure_negativity_spectrum(sigma1: float, sigma2: float) -> np.ndarray:
    """Partial-transpose spectrum of a pure state with Schmidt pair (s1, s2).

    Returns (s1^2, s1 s2, -s1 s2, s2^2); these are the eigenvalues of the
    partial transpose of any pure state with those Schmidt coefficients.
    """
    if not (sigma1 >= sigma2 >= 0.0):
        raise ValueError(f"need sigma1 >= sigma2 >= 0, got ({sigma1!r}, {sigma2!r})")
    if abs(sigma1 * sigma1 + sigma2 * sigma2 - 1.0) > 1e-12:
        raise ValueError("Schmidt coefficients must satisfy sigma1^2 + sigma2^2 = 1")
    return np.array([sigma1**2, sigma1 * sigma2, -sigma1 * sigma2, sigma2**2])


def report(rho: "DensityMatrix | np.ndarray") -> EntanglementReport:
    """All four measures, computed from the same state."""
    C = concurrence(rho)
    return EntanglementReport(
        concurrence=C,
        negativity=negativity(rho),
        eof=eof_from_concurrence(C),
        participation_ratio=participation_ratio(rho),
    )
