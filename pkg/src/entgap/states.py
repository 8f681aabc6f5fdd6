"""Two-qubit state containers, reproducible sampling, and the C = E_N generator.

Basis ordering is fixed as |00>, |01>, |10>, |11>; a state vector psi
reshapes to the 2x2 matrix tilde with tilde[i, j] = psi[2*i + j].

All randomness flows through Seed, a thin wrapper over the Philox
counter-based generator. Substreams are derived from the master seed by
hashing a fixed text label (SHA-256, first 8 bytes) into the second
Philox key word, so every operation owns an independent, platform-stable
stream.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass

import numpy as np

from .linalg import herm_eig, kron, svd

_SINGLET = np.array([0.0, 1.0, -1.0, 0.0], dtype=np.complex128) / np.sqrt(2.0)


class StateFormatError(ValueError):
    """Raised when a state file cannot be parsed into a 4x4 complex matrix."""


class InvalidStateError(ValueError):
    """Raised when numeric data violates a density-matrix invariant."""


def _label_hash(label: str) -> int:
    return int.from_bytes(hashlib.sha256(label.encode()).digest()[:8], "little")


@dataclass(frozen=True)
class Seed:
    """64-bit master seed; equal seeds give identical sample streams."""

    value: int = 0

    def __post_init__(self):
        if not 0 <= int(self.value) < 2**64:
            raise ValueError("seed must fit in 64 unsigned bits")

    def generator(self, label: str) -> np.random.Generator:
        """Philox stream keyed by (master seed, hash of label)."""
        key = np.array([self.value, _label_hash(label)], dtype=np.uint64)
        return np.random.Generator(np.random.Philox(key=key))

    def child(self, index: int) -> "Seed":
        """Derived seed for sample index `index`; stable across platforms."""
        payload = int(self.value).to_bytes(8, "little") + int(index).to_bytes(8, "little", signed=True)
        return Seed(int.from_bytes(hashlib.sha256(b"child" + payload).digest()[:8], "little"))


def _as_seed(seed: "Seed | int") -> Seed:
    return seed if isinstance(seed, Seed) else Seed(seed)


class DensityMatrix:
    """A valid two-qubit density matrix: Hermitian, unit trace, PSD.

    Construction validates all three invariants (tolerance 1e-12 each;
    eigenvalues may round off to -1e-12) and raises InvalidStateError
    naming the violated one.
    """

    __slots__ = ("matrix",)

    def __init__(self, matrix: np.ndarray):
        m = np.array(matrix, dtype=np.complex128, copy=True)
        if m.shape != (4, 4):
            raise InvalidStateError(f"shape violated: expected 4x4, got {m.shape}")
        if not (np.all(np.isfinite(m.real)) and np.all(np.isfinite(m.imag))):
            raise InvalidStateError("finiteness violated: non-finite entries")
        if np.linalg.norm(m - m.conj().T) > 1e-12:
            raise InvalidStateError("hermiticity violated")
        if abs(np.trace(m).real - 1.0) > 1e-12 or abs(np.trace(m).imag) > 1e-12:
            raise InvalidStateError("unit trace violated")
        w, _ = herm_eig((m + m.conj().T) / 2)
        if w[0] < -1e-12:
            raise InvalidStateError(f"positivity violated: eigenvalue {w[0]:.3e}")
        m = (m + m.conj().T) / 2
        m.flags.writeable = False
        object.__setattr__(self, "matrix", m)

    def __setattr__(self, name, value):
        raise AttributeError("DensityMatrix is immutable")

    def eigenvalues(self) -> np.ndarray:
        """Spectrum in ascending order."""
        return herm_eig(self.matrix).eigenvalues

    def __repr__(self):
        return f"DensityMatrix({np.array2string(self.matrix, precision=4)})"


@dataclass(frozen=True)
class PureState:
    """Unit-norm 4-vector plus its 2x2 reshape."""

    psi: np.ndarray

    def __post_init__(self):
        psi = np.array(self.psi, dtype=np.complex128, copy=True).reshape(-1)
        if psi.shape != (4,):
            raise ValueError(f"pure state needs 4 amplitudes, got {psi.shape}")
        if abs(np.linalg.norm(psi) - 1.0) > 1e-12:
            raise ValueError("pure state is not normalised")
        psi.flags.writeable = False
        object.__setattr__(self, "psi", psi)

    @property
    def tilde(self) -> np.ndarray:
        return self.psi.reshape(2, 2)

    def density(self) -> DensityMatrix:
        return DensityMatrix(np.outer(self.psi, self.psi.conj()))


@dataclass(frozen=True)
class Ensemble:
    """Convex mixture {p_i, |phi_i>} realising a density matrix."""

    weights: np.ndarray
    members: tuple[PureState, ...]

    def __post_init__(self):
        w = np.array(self.weights, dtype=np.float64, copy=True).reshape(-1)
        members = tuple(self.members)
        if w.shape[0] != len(members) or w.shape[0] == 0:
            raise ValueError("weights and members must be equal-length and non-empty")
        if np.any(w <= 0):
            raise ValueError("ensemble weights must be positive")
        if abs(w.sum() - 1.0) > 1e-12:
            raise ValueError("ensemble weights must sum to 1")
        w.flags.writeable = False
        object.__setattr__(self, "weights", w)
        object.__setattr__(self, "members", members)

    def state(self) -> DensityMatrix:
        rho = np.zeros((4, 4), dtype=np.complex128)
        for p, member in zip(self.weights, self.members):
            rho += p * np.outer(member.psi, member.psi.conj())
        return DensityMatrix(rho)


def reshape_to_matrix(psi: np.ndarray) -> np.ndarray:
    """Reshape a 4-vector to 2x2, first index of the pair as the row."""
    psi = np.asarray(psi, dtype=np.complex128).reshape(-1)
    if psi.shape != (4,):
        raise ValueError(f"expected 4 amplitudes, got {psi.shape}")
    return psi.reshape(2, 2)


def schmidt(state: "PureState | np.ndarray") -> tuple[float, float]:
    """Schmidt coefficients (s1 >= s2, s1^2 + s2^2 = 1) of a pure state."""
    psi = state.psi if isinstance(state, PureState) else np.asarray(state)
    _, s, _ = svd(reshape_to_matrix(psi))
    return float(s[0]), float(s[1])


def random_pure(seed: "Seed | int") -> PureState:
    """Haar-random pure state: 4 standard complex Gaussians, normalised."""
    gen = _as_seed(seed).generator("random-pure")
    v = gen.standard_normal(4) + 1j * gen.standard_normal(4)
    return PureState(v / np.linalg.norm(v))


def random_mixed(seed: "Seed | int", rank: int) -> DensityMatrix:
    """Random mixed state G G^H / tr(G G^H) with G a 4 x rank Gaussian."""
    if rank not in (1, 2, 3, 4):
        raise ValueError(f"rank must be 1..4, got {rank}")
    gen = _as_seed(seed).generator("random-mixed")
    G = gen.standard_normal((4, rank)) + 1j * gen.standard_normal((4, rank))
    rho = G @ G.conj().T
    return DensityMatrix(rho / np.trace(rho).real)


def _haar_unitary(gen: np.random.Generator, n: int) -> np.ndarray:
    """QR of a Ginibre matrix with the standard phase correction."""
    G = gen.standard_normal((n, n)) + 1j * gen.standard_normal((n, n))
    Q, R = np.linalg.qr(G)
    d = np.diagonal(R)
    return Q * (d / np.abs(d))


def _random_su2(gen: np.random.Generator) -> np.ndarray:
    U = _haar_unitary(gen, 2)
    det = U[0, 0] * U[1, 1] - U[0, 1] * U[1, 0]
    return U / np.sqrt(det)


def random_fixed_spectrum(seed: "Seed | int", lam) -> DensityMatrix:
    """Haar-random state with the prescribed spectrum: U diag(lam) U^H."""
    from .analytic import Spectrum

    lam = lam if isinstance(lam, Spectrum) else Spectrum(lam)
    gen = _as_seed(seed).generator("random-fixed-spectrum")
    U = _haar_unitary(gen, 4)
    rho = (U * np.asarray(lam.values)) @ U.conj().T
    return DensityMatrix((rho + rho.conj().T) / 2)


def _random_psdh_tilde(gen: np.random.Generator) -> np.ndarray:
    """Random 2x2 PSD Hermitian matrix of unit Frobenius norm.

    Hermitian part of a Ginibre draw, shifted just onto the PSD cone when
    indefinite; the shift lands a positive fraction of samples exactly on
    the cone boundary (rank one).
    """
    G = gen.standard_normal((2, 2)) + 1j * gen.standard_normal((2, 2))
    H = (G + G.conj().T) / 2
    w, _ = herm_eig(H)
    if w[0] < 0:
        H = H + (-w[0]) * np.eye(2)
    nrm = np.linalg.norm(H)
    if nrm < 1e-12:  # measure-zero draw; any fixed PSDH element will do
        return np.eye(2, dtype=np.complex128) / np.sqrt(2.0)
    return H / nrm


def equality_class_state(seed: "Seed | int", k: int = 1) -> DensityMatrix:
    """Random state with concurrence equal to negativity, by construction.

    Mixes k pure states whose 2x2 reshapes are PSD Hermitian (weights
    uniform on the simplex) and conjugates by a random local SU(2) pair.
    Such mixtures exhaust the equality class, so the two measures of the
    result agree to within numerical round-off (<= 1e-8 guaranteed).
    """
    if k < 1:
        raise ValueError("need at least one mixture term")
    gen = _as_seed(seed).generator("equality-class")
    weights = gen.exponential(size=k)
    weights /= weights.sum()
    rho = np.zeros((4, 4), dtype=np.complex128)
    for p in weights:
        psi = _random_psdh_tilde(gen).reshape(4)
        rho += p * np.outer(psi, psi.conj())
    U = _random_su2(gen)
    V = _random_su2(gen)
    local = kron(U, V)
    rho = local @ rho @ local.conj().T
    return DensityMatrix((rho + rho.conj().T) / 2)


def apply_local_unitary(rho: DensityMatrix, U: np.ndarray, V: np.ndarray) -> DensityMatrix:
    """Conjugate by U (x) V; all entanglement measures are invariant."""
    U = np.asarray(U, dtype=np.complex128)
    V = np.asarray(V, dtype=np.complex128)
    for name, M in (("U", U), ("V", V)):
        if M.shape != (2, 2) or np.linalg.norm(M.conj().T @ M - np.eye(2)) > 1e-12:
            raise ValueError(f"{name} is not a 2x2 unitary")
    local = kron(U, V)
    out = local @ rho.matrix @ local.conj().T
    return DensityMatrix((out + out.conj().T) / 2)


def ensemble_eigvec_condition(ens: Ensemble) -> bool:
    """Whether all members share the extremal partial-transpose eigenvector.

    For each member, the eigenvector of the partial transpose at the
    negative eigenvalue is (U_i (x) V_i) applied to the singlet, with
    (U_i, V_i) the reshape's SVD frame. The condition holds iff these
    vectors agree up to a global phase (overlap modulus above 1 - 1e-8);
    it characterises mixtures with concurrence equal to negativity.

    Members with a vanishing Schmidt coefficient have no negative
    eigenvalue, so the condition is undefined and rejected.
    """
    vectors = []
    for member in ens.members:
        U, s, V = svd(member.tilde)
        if s[1] <= 1e-10:
            raise ValueError("condition undefined for a member with vanishing Schmidt coefficient")
        vectors.append(kron(U, V) @ _SINGLET)
    ref = vectors[0]
    return all(abs(np.vdot(ref, v)) >= 1.0 - 1e-8 for v in vectors[1:])


def write_state_file(path, rho: "DensityMatrix | np.ndarray") -> None:
    """Write a state as JSON: {"rho": 4x4 array of [re, im] pairs}."""
    m = rho.matrix if isinstance(rho, DensityMatrix) else np.asarray(rho, dtype=np.complex128)
    payload = {"rho": [[[z.real, z.imag] for z in row] for row in m]}
    with open(path, "w") as fh:
        json.dump(payload, fh)


def read_state_file(path) -> DensityMatrix:
    """Read and validate a JSON state file.

    Raises StateFormatError on malformed content and InvalidStateError
    (from DensityMatrix) on invariant violations.
    """
    with open(path) as fh:
        try:
            payload = json.load(fh)
        except json.JSONDecodeError as exc:
            raise StateFormatError(f"not valid JSON: {exc}") from exc
    if not isinstance(payload, dict) or "rho" not in payload:
        raise StateFormatError('missing "rho" key')
    raw = payload["rho"]
    try:
        m = np.array([[complex(re, im) for re, im in row] for row in raw], dtype=np.complex128)
    except (TypeError, ValueError) as exc:
        raise StateFormatError(f"entries must be [re, im] pairs: {exc}") from exc
    if m.shape != (4, 4):
        raise StateFormatError(f"expected a 4x4 matrix, got shape {m.shape}")
    return DensityMatrix(m)
