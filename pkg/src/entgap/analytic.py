"""Closed forms for spectrum-extremal states and the gap curves.

Among all states sharing a fixed eigenvalue spectrum, the orbit-maximal
("maximally entangled") states attain both the largest concurrence and
the largest negativity; me_concurrence / me_negativity evaluate those
maxima directly from the spectrum. The max_gap_* functions evaluate the
analytic concurrence-negativity gap curves built on them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

_EDGE = 1e-12


@dataclass(frozen=True)
class Spectrum:
    """Four eigenvalues, descending, non-negative, summing to one."""

    values: tuple[float, float, float, float]

    def __init__(self, values):
        vals = tuple(float(v) for v in values)
        if len(vals) != 4:
            raise ValueError(f"a spectrum has 4 eigenvalues, got {len(vals)}")
        if any(v < -_EDGE for v in vals):
            raise ValueError(f"eigenvalues must be non-negative, got {vals}")
        if any(vals[i] < vals[i + 1] - _EDGE for i in range(3)):
            raise ValueError(f"eigenvalues must be in descending order, got {vals}")
        if abs(sum(vals) - 1.0) > _EDGE:
            raise ValueError(f"eigenvalues must sum to 1, got sum {sum(vals)!r}")
        object.__setattr__(self, "values", tuple(max(v, 0.0) for v in vals))

    @classmethod
    def from_unsorted(cls, values) -> "Spectrum":
        return cls(sorted((float(v) for v in values), reverse=True))


def _vals(lam: "Spectrum | tuple") -> tuple[float, float, float, float]:
    return lam.values if isinstance(lam, Spectrum) else Spectrum(lam).values


def me_concurrence(lam: "Spectrum | tuple") -> float:
    """Largest concurrence on the unitary orbit of the spectrum."""
    l1, l2, l3, l4 = _vals(lam)
    return max(0.0, l1 - l3 - 2.0 * math.sqrt(max(l2 * l4, 0.0)))


def me_negativity(lam: "Spectrum | tuple") -> float:
    """Largest negativity on the unitary orbit of the spectrum."""
    l1, l2, l3, l4 = _vals(lam)
    return max(0.0, math.sqrt((l1 - l3) ** 2 + (l2 - l4) ** 2) - l2 - l4)


def max_gap_rank2(R: float) -> float:
    """Gap curve over rank-2 orbit-maximal states: 1 - 1/sqrt(R), R in [1, 2]."""
    if not 1.0 - _EDGE <= R <= 2.0 + _EDGE:
        raise ValueError(f"rank-2 branch needs R in [1, 2], got {R!r}")
    return 1.0 - 1.0 / math.sqrt(min(max(R, 1.0), 2.0))


def max_gap_rank3(R: float) -> float:
    """Gap curve over the equal-top-pair rank-3 branch, R in [2, 3].

    (1 + 2a - sqrt(a - 4 + 15/R)) / 3 with a = sqrt(-2 + 6/R); meets the
    rank-2 branch at R = 2 and reaches zero at R = 3.
    """
    if not 2.0 - _EDGE <= R <= 3.0 + _EDGE:
        raise ValueError(f"rank-3 branch needs R in [2, 3], got {R!r}")
    R = min(max(R, 2.0), 3.0)
    alpha = math.sqrt(max(-2.0 + 6.0 / R, 0.0))
    return (1.0 + 2.0 * alpha - math.sqrt(alpha - 4.0 + 15.0 / R)) / 3.0


def me_gap_envelope(R: float) -> float:
    """Piecewise analytic gap bound: rank-2 on [1, 2], rank-3 on [2, 3],
    zero on [3, 4] where every state is separable."""
    if not 1.0 - _EDGE <= R <= 4.0 + _EDGE:
        raise ValueError(f"participation ratio must lie in [1, 4], got {R!r}")
    if R <= 2.0:
        return max_gap_rank2(R)
    if R <= 3.0:
        return max_gap_rank3(R)
    return 0.0


def max_gap_vs_C(C: float) -> tuple[float, Spectrum]:
    """Largest gap among states of fixed concurrence, with its witness.

    Returns 1 - sqrt(C^2 + (1-C)^2) together with the optimal rank-2
    spectrum (max(C, 1-C), min(C, 1-C), 0, 0).
    """
    if not -_EDGE <= C <= 1.0 + _EDGE:
        raise ValueError(f"concurrence must lie in [0, 1], got {C!r}")
    C = min(max(C, 0.0), 1.0)
    gap = 1.0 - math.sqrt(C * C + (1.0 - C) ** 2)
    lam = Spectrum((max(C, 1.0 - C), min(C, 1.0 - C), 0.0, 0.0))
    return gap, lam
