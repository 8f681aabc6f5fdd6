"""Command-line interface.

Subcommands: measures (report for a state file), verify (Monte-Carlo
suites), curve (plot data as CSV), optimize (constrained gap search),
orbit-max (fixed-spectrum maximisation). Exit codes: 0 success or suite
pass, 1 suite failure, 2 usage or parse error, 3 invalid state data.
Every command is deterministic for a given --seed (default 0).
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

import numpy as np

from . import measures as meas
from .analytic import Spectrum, max_gap_vs_C, me_concurrence, me_gap_envelope, me_negativity
from .optimize import SimplexOptions, max_gap_fixed_C, max_gap_fixed_R, orbit_maximize
from .states import (
    DensityMatrix,
    InvalidStateError,
    PureState,
    Seed,
    StateFormatError,
    equality_class_state,
    read_state_file,
)


@dataclass(frozen=True)
class SuiteResult:
    suite: str
    samples: int
    max_violation: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return self.max_violation <= self.tolerance


def _suite_inequality(samples: int, seed: Seed) -> SuiteResult:
    """Concurrence must dominate negativity on random states of all ranks."""
    gen = seed.generator("verify-inequality")
    worst = -np.inf
    for i in range(samples):
        rank = 1 + i % 4
        G = gen.standard_normal((4, rank)) + 1j * gen.standard_normal((4, rank))
        rho = G @ G.conj().T
        rho = DensityMatrix(rho / np.trace(rho).real)
        worst = max(worst, meas.negativity(rho) - meas.concurrence(rho))
    return SuiteResult("inequality", samples, worst, 1e-10)


def _suite_pure(samples: int, seed: Seed) -> SuiteResult:
    """Concurrence equals negativity on pure states."""
    gen = seed.generator("verify-pure")
    worst = 0.0
    for _ in range(samples):
        v = gen.standard_normal(4) + 1j * gen.standard_normal(4)
        rho = PureState(v / np.linalg.norm(v)).density()
        worst = max(worst, abs(meas.concurrence(rho) - meas.negativity(rho)))
    return SuiteResult("pure", samples, worst, 1e-10)


def _suite_equality_class(samples: int, seed: Seed) -> SuiteResult:
    """The generated equality-class states keep both measures equal."""
    sizes = (1, 2, 3, 4, 8)
    worst = 0.0
    for i in range(samples):
        rho = equality_class_state(seed.child(i), k=sizes[i % len(sizes)])
        worst = max(worst, abs(meas.concurrence(rho) - meas.negativity(rho)))
    return SuiteResult("equality-class", samples, worst, 1e-8)


def _suite_separable_r3(samples: int, seed: Seed) -> SuiteResult:
    """Random states conditioned on participation ratio above 3 are separable."""
    gen = seed.generator("verify-separable-r3")
    kept: list[np.ndarray] = []
    chunk = 100_000
    while len(kept) < samples:
        G = gen.standard_normal((chunk, 4, 4)) + 1j * gen.standard_normal((chunk, 4, 4))
        rhos = G @ np.conj(np.transpose(G, (0, 2, 1)))
        traces = np.einsum("bii->b", rhos).real
        rhos /= traces[:, None, None]
        purity = np.sum(np.abs(rhos) ** 2, axis=(1, 2))
        for rho in rhos[purity < 1.0 / 3.0]:
            kept.append(rho)
            if len(kept) == samples:
                break
    worst = 0.0
    for rho in kept:
        dm = DensityMatrix(rho)
        worst = max(worst, meas.concurrence(dm), meas.negativity(dm))
    return SuiteResult("separable-r3", samples, worst, 1e-10)


_SUITES = {
    "inequality": _suite_inequality,
    "pure": _suite_pure,
    "equality-class": _suite_equality_class,
    "separable-r3": _suite_separable_r3,
}


def run_suite(suite: str, samples: int, seed: int) -> SuiteResult:
    if suite not in _SUITES:
        raise ValueError(f"unknown suite {suite!r}")
    if samples < 1:
        raise ValueError("samples must be at least 1")
    return _SUITES[suite](samples, Seed(seed))


def _fmt(x: float) -> str:
    return repr(float(x))


def _grid(lo: float, hi: float, step: float) -> list[float]:
    count = int(np.floor((hi - lo) / step + 1e-9))
    points = [lo + i * step for i in range(count + 1)]
    if points[-1] < hi - 1e-9 * step:
        points.append(hi)
    return points


def _cmd_measures(args) -> int:
    rho = read_state_file(args.file)
    rep = meas.report(rho)
    payload = {
        "concurrence": rep.concurrence,
        "negativity": rep.negativity,
        "eof": rep.eof,
        "participation_ratio": rep.participation_ratio,
    }
    print(json.dumps(payload))
    return 0


def _cmd_verify(args) -> int:
    result = run_suite(args.suite, args.samples, args.seed)
    status = "PASS" if result.passed else "FAIL"
    print(f"suite={result.suite} samples={result.samples} "
          f"max_violation={_fmt(result.max_violation)} tolerance={_fmt(result.tolerance)} {status}")
    return 0 if result.passed else 1


def _options(args) -> SimplexOptions:
    if args.restarts is not None:
        return SimplexOptions(restarts=args.restarts, seed=args.seed)
    return SimplexOptions(seed=args.seed)


def _cmd_curve(args) -> int:
    if args.step <= 0:
        raise ValueError("--step must be positive")
    out = sys.stdout
    if args.figure == 2:
        out.write("C,gap\n")
        for c in _grid(0.0, 1.0, args.step):
            gap, _ = max_gap_vs_C(c)
            out.write(f"{_fmt(c)},{_fmt(gap)}\n")
        return 0
    if args.numeric:
        out.write("R,analytic,numeric,residual\n")
    else:
        out.write("R,analytic\n")
    opts = _options(args)
    for r in _grid(1.0, 4.0, args.step):
        analytic = me_gap_envelope(r)
        if args.numeric:
            res = max_gap_fixed_R(r, opts)
            out.write(f"{_fmt(r)},{_fmt(analytic)},{_fmt(res.objective)},{_fmt(res.constraint_residual)}\n")
        else:
            out.write(f"{_fmt(r)},{_fmt(analytic)}\n")
    return 0


def _state_payload(dm: DensityMatrix) -> list:
    return [[[z.real, z.imag] for z in row] for row in dm.matrix]


def _cmd_optimize(args) -> int:
    opts = _options(args)
    if args.fix_r is not None:
        result = max_gap_fixed_R(args.fix_r, opts)
        target = {"participation_ratio": args.fix_r}
    else:
        result = max_gap_fixed_C(args.fix_c, opts)
        target = {"concurrence": args.fix_c}
    payload = {
        "target": target,
        "objective": result.objective,
        "constraint_residual": result.constraint_residual,
        "restarts_used": result.restarts_used,
        "iterations_total": result.iterations_total,
        "feasible": result.feasible,
        "best_state": _state_payload(result.best_state),
    }
    print(json.dumps(payload))
    return 0


def _cmd_orbit_max(args) -> int:
    try:
        values = [float(tok) for tok in args.spectrum.split(",")]
        lam = Spectrum(values)
    except ValueError as exc:
        raise _UsageError(f"bad --spectrum: {exc}") from exc
    measure = "concurrence" if args.measure == "C" else "negativity"
    result = orbit_maximize(lam, measure, _options(args))
    reference = me_concurrence(lam) if measure == "concurrence" else me_negativity(lam)
    payload = {
        "spectrum": list(lam.values),
        "measure": measure,
        "value": result.objective,
        "reference_formula": reference,
        "spectrum_residual": result.constraint_residual,
        "restarts_used": result.restarts_used,
    }
    print(json.dumps(payload))
    return 0


class _UsageError(ValueError):
    pass


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="entgap",
        description="Two-qubit entanglement measures and extremal-gap searches.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("measures", help="print the four measures of a state file as JSON")
    p.add_argument("file", help='JSON file {"rho": 4x4 array of [re, im] pairs}')
    p.set_defaults(fn=_cmd_measures)

    p = sub.add_parser("verify", help="run a Monte-Carlo verification suite")
    p.add_argument("suite", choices=sorted(_SUITES))
    p.add_argument("--samples", type=int, default=10_000)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(fn=_cmd_verify)

    p = sub.add_parser("curve", help="emit gap-curve data as CSV on stdout")
    p.add_argument("--figure", type=int, choices=(1, 2), required=True,
                   help="1: gap vs participation ratio; 2: gap vs concurrence")
    p.add_argument("--step", type=float, required=True)
    p.add_argument("--numeric", action="store_true",
                   help="add a numeric column from the simplex search (figure 1)")
    p.add_argument("--restarts", type=int, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(fn=_cmd_curve)

    p = sub.add_parser("optimize", help="search for the largest gap at a fixed constraint")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--fix-r", type=float, default=None, help="fix the participation ratio")
    group.add_argument("--fix-c", type=float, default=None, help="fix the concurrence")
    p.add_argument("--restarts", type=int, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(fn=_cmd_optimize)

    p = sub.add_parser("orbit-max", help="maximise a measure over a fixed-spectrum orbit")
    p.add_argument("--spectrum", required=True, help="four comma-separated eigenvalues, descending")
    p.add_argument("--measure", choices=("C", "EN"), required=True)
    p.add_argument("--restarts", type=int, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(fn=_cmd_orbit_max)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except InvalidStateError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (_UsageError, StateFormatError, FileNotFoundError, IsADirectoryError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
