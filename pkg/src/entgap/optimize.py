"""Downhill-simplex search for extremal concurrence-negativity gaps.

Three searches are provided on top of a self-contained Nelder-Mead
minimiser: the largest gap at fixed participation ratio, the largest gap
at fixed concurrence (both via quadratic penalties with an increasing
stiffness schedule, warm-starting each stage), and maximisation of a
single measure over the unitary orbit of a fixed spectrum.

States are searched through an unconstrained chart: 16 reals map to a
complex lower-triangular factor G (real diagonal) and then to
G G^H / tr(G G^H), which covers every density matrix without PSD or
trace constraints. Orbits are charted by 16 reals forming a Hermitian H
with U = exp(iH).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Literal

import numpy as np

from .analytic import Spectrum
from .linalg import herm_eig
from .measures import _concurrence_raw, _negativity_raw, concurrence, negativity, participation_ratio
from .states import DensityMatrix, Seed, _as_seed


@dataclass(frozen=True)
class SimplexOptions:
    """Simplex coefficients, stopping rules, and the multistart budget."""

    max_iterations: int = 2000
    reflection: float = 1.0
    expansion: float = 2.0
    contraction: float = 0.5
    shrink: float = 0.5
    diameter_tol: float = 1e-9
    spread_tol: float = 1e-12
    restarts: int = 50
    seed: "Seed | int" = 0
    initial_step: float = 0.25
    penalty_schedule: tuple[float, ...] = (1e2, 1e3, 1e4, 1e6, 1e8)
    feasibility_tol: float = 1e-6

    def __post_init__(self):
        for name in ("reflection", "expansion", "contraction", "shrink",
                     "diameter_tol", "spread_tol", "initial_step", "feasibility_tol"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")
        if self.max_iterations < 1 or self.restarts < 1:
            raise ValueError("max_iterations and restarts must be at least 1")


@dataclass(frozen=True)
class OptimizationResult:
    """Best state over all restarts plus bookkeeping."""

    best_state: DensityMatrix
    objective: float
    constraint_residual: float
    restarts_used: int
    iterations_total: int
    per_restart_bests: np.ndarray
    feasible: bool


def _minimize(f: Callable[[np.ndarray], float], x0: np.ndarray,
              opts: SimplexOptions, step: float) -> tuple[np.ndarray, float, int]:
    """Nelder-Mead core; returns (best x, best f, iterations used)."""
    n = x0.size
    simplex = np.empty((n + 1, n))
    simplex[0] = x0
    for i in range(n):
        simplex[i + 1] = x0
        simplex[i + 1, i] += step
    fvals = np.array([f(v) for v in simplex])
    if not np.isfinite(fvals[0]):
        raise ValueError("objective is not finite at the starting point")

    alpha, chi, gamma, sigma = opts.reflection, opts.expansion, opts.contraction, opts.shrink
    iters = 0
    while iters < opts.max_iterations:
        order = np.argsort(fvals, kind="stable")
        simplex = simplex[order]
        fvals = fvals[order]
        diameter = np.max(np.abs(simplex[1:] - simplex[0]))
        if diameter <= opts.diameter_tol or fvals[-1] - fvals[0] <= opts.spread_tol:
            break
        iters += 1
        centroid = simplex[:-1].mean(axis=0)
        worst = simplex[-1]
        xr = centroid + alpha * (centroid - worst)
        fr = f(xr)
        if fr < fvals[0]:
            xe = centroid + chi * (xr - centroid)
            fe = f(xe)
            if fe < fr:
                simplex[-1], fvals[-1] = xe, fe
            else:
                simplex[-1], fvals[-1] = xr, fr
        elif fr < fvals[-2]:
            simplex[-1], fvals[-1] = xr, fr
        elif fr < fvals[-1]:
            xc = centroid + gamma * (xr - centroid)
            fc = f(xc)
            if fc <= fr:
                simplex[-1], fvals[-1] = xc, fc
            else:
                simplex[1:] = simplex[0] + sigma * (simplex[1:] - simplex[0])
                fvals[1:] = [f(v) for v in simplex[1:]]
        else:
            xc = centroid - gamma * (centroid - worst)
            fc = f(xc)
            if fc < fvals[-1]:
                simplex[-1], fvals[-1] = xc, fc
            else:
                simplex[1:] = simplex[0] + sigma * (simplex[1:] - simplex[0])
                fvals[1:] = [f(v) for v in simplex[1:]]
    best = int(np.argmin(fvals))
    return simplex[best].copy(), float(fvals[best]), iters


def nelder_mead(objective: Callable[[np.ndarray], float], x0: np.ndarray,
                opts: SimplexOptions | None = None) -> tuple[np.ndarray, float]:
    """Minimise a real function of a real vector; returns (x*, f*)."""
    opts = opts or SimplexOptions()
    x0 = np.asarray(x0, dtype=np.float64).reshape(-1)
    x, fval, _ = _minimize(objective, x0, opts, opts.initial_step)
    return x, fval


def state_from_params(x: np.ndarray) -> DensityMatrix:
    """Map 16 reals to a state via a lower-triangular factor.

    x[:4] fill the (real) diagonal of G, the rest fill the strictly lower
    triangle row-major as (re, im) pairs; the state is G G^H normalised
    to unit trace. The map is onto: every density matrix has a Cholesky-
    style factor of this shape. The all-zero vector (the one point with
    no meaningful direction) maps to the maximally mixed state.
    """
    x = np.asarray(x, dtype=np.float64).reshape(-1)
    if x.shape != (16,):
        raise ValueError(f"expected 16 parameters, got {x.shape}")
    peak = np.max(np.abs(x))
    if peak > 1e100:  # the map is scale-invariant; renormalise to avoid overflow
        x = x / peak
    G = np.zeros((4, 4), dtype=np.complex128)
    G[np.diag_indices(4)] = x[:4]
    idx = 4
    for i in range(1, 4):
        for j in range(i):
            G[i, j] = complex(x[idx], x[idx + 1])
            idx += 2
    rho = G @ G.conj().T
    trace = np.trace(rho).real
    if trace == 0.0:
        return DensityMatrix(np.eye(4) / 4.0)
    rho = rho / trace
    return DensityMatrix((rho + rho.conj().T) / 2)


def unitary_from_params(x: np.ndarray) -> np.ndarray:
    """Map 16 reals to U = exp(iH), H Hermitian from the parameter vector."""
    x = np.asarray(x, dtype=np.float64).reshape(-1)
    if x.shape != (16,):
        raise ValueError(f"expected 16 parameters, got {x.shape}")
    H = np.zeros((4, 4), dtype=np.complex128)
    H[np.diag_indices(4)] = x[:4]
    idx = 4
    for i in range(4):
        for j in range(i + 1, 4):
            H[i, j] = complex(x[idx], x[idx + 1])
            H[j, i] = complex(x[idx], -x[idx + 1])
            idx += 2
    w, V = herm_eig(H)
    return (V * np.exp(1j * w)) @ V.conj().T


def _penalized_gap_search(constraint: Callable[[DensityMatrix], float], target: float,
                          opts: SimplexOptions, label: str) -> OptimizationResult:
    """Maximise the gap subject to constraint(rho) == target.

    Stiffness rises through opts.penalty_schedule, each stage warm-started
    from the last and run with a smaller initial simplex. The best restart
    is chosen among feasible ones by objective, ties to the lowest index.
    """
    seed = _as_seed(opts.seed)
    iterations_total = 0
    per_restart = np.full(opts.restarts, -np.inf)
    best_gap = -np.inf
    best_state = None
    best_resid = np.inf
    for r in range(opts.restarts):
        gen = seed.child(r).generator(label)
        x = gen.standard_normal(16)
        step = opts.initial_step
        for kappa in opts.penalty_schedule:
            def f(params, _kappa=kappa):
                rho = state_from_params(params)
                gap = concurrence(rho) - negativity(rho)
                return -gap + _kappa * (constraint(rho) - target) ** 2
            x, _, iters = _minimize(f, x, opts, step)
            iterations_total += iters
            step = max(step / 5.0, 1e-3)
        rho = state_from_params(x)
        gap = concurrence(rho) - negativity(rho)
        resid = abs(constraint(rho) - target)
        per_restart[r] = gap
        if resid <= opts.feasibility_tol and gap > best_gap:
            best_gap = gap
            best_state = rho
            best_resid = resid
    if best_state is None:
        raise RuntimeError(f"no restart reached feasibility |{label} - target| <= {opts.feasibility_tol}")
    return OptimizationResult(
        best_state=best_state,
        objective=best_gap,
        constraint_residual=best_resid,
        restarts_used=opts.restarts,
        iterations_total=iterations_total,
        per_restart_bests=per_restart,
        feasible=True,
    )


def max_gap_fixed_R(R_target: float, opts: SimplexOptions | None = None) -> OptimizationResult:
    """Largest concurrence-negativity gap among states with given
    participation ratio."""
    if not 1.0 <= R_target <= 4.0:
        raise ValueError(f"participation ratio must lie in [1, 4], got {R_target!r}")
    opts = opts or SimplexOptions()
    return _penalized_gap_search(participation_ratio, R_target, opts, "fixed-R")


def max_gap_fixed_C(C_target: float, opts: SimplexOptions | None = None) -> OptimizationResult:
    """Largest concurrence-negativity gap among states with given
    concurrence."""
    if not 0.0 <= C_target <= 1.0:
        raise ValueError(f"concurrence must lie in [0, 1], got {C_target!r}")
    opts = opts or SimplexOptions()
    return _penalized_gap_search(concurrence, C_target, opts, "fixed-C")


def orbit_maximize(lam: "Spectrum | tuple", measure: Literal["concurrence", "negativity"],
                   opts: SimplexOptions | None = None) -> OptimizationResult:
    """Maximise one measure over states unitarily equivalent to diag(lam).

    The search runs on the unclipped quantity (the signed expression the
    measure thresholds at zero), which keeps a gradient signal on the
    plateau where the measure itself vanishes; the reported objective is
    the measure of the best state found.
    """
    lam = lam if isinstance(lam, Spectrum) else Spectrum(lam)
    if measure not in ("concurrence", "negativity"):
        raise ValueError(f"measure must be 'concurrence' or 'negativity', got {measure!r}")
    opts = opts or SimplexOptions()
    raw = _concurrence_raw if measure == "concurrence" else _negativity_raw
    final = concurrence if measure == "concurrence" else negativity
    D = np.diag(np.asarray(lam.values, dtype=np.complex128))

    def build(params: np.ndarray) -> DensityMatrix:
        U = unitary_from_params(params)
        rho = U @ D @ U.conj().T
        return DensityMatrix((rho + rho.conj().T) / 2)

    seed = _as_seed(opts.seed)
    iterations_total = 0
    per_restart = np.full(opts.restarts, -np.inf)
    best_raw = -np.inf
    best_state = None
    for r in range(opts.restarts):
        gen = seed.child(r).generator("orbit-max")
        x = gen.standard_normal(16)

        def f(params):
            return -raw(build(params))

        x, fval, iters = _minimize(f, x, opts, opts.initial_step)
        iterations_total += iters
        per_restart[r] = -fval
        if -fval > best_raw:
            best_raw = -fval
            best_state = build(x)
    spectrum_resid = float(np.max(np.abs(
        np.sort(best_state.eigenvalues())[::-1] - np.asarray(lam.values))))
    return OptimizationResult(
        best_state=best_state,
        objective=final(best_state),
        constraint_residual=spectrum_resid,
        restarts_used=opts.restarts,
        iterations_total=iterations_total,
        per_restart_bests=per_restart,
        feasible=spectrum_resid <= 1e-8,
    )
