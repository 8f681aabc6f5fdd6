import math

import numpy as np
import pytest

from entgap.analytic import (
    Spectrum,
    max_gap_rank2,
    max_gap_rank3,
    max_gap_vs_C,
    me_concurrence,
    me_gap_envelope,
    me_negativity,
)


def rank3_equal_top_pair(R):
    """Independent route to the rank-3 curve: on the branch lam1 = lam2 = a,
    lam3 = 1 - 2a, lam4 = 0, the purity constraint is the quadratic
    6a^2 - 4a + (1 - 1/R) = 0; take the root with lam1 >= lam3 and evaluate
    the gap from the spectrum formulas."""
    disc = 16.0 - 24.0 * (1.0 - 1.0 / R)
    a = (4.0 + math.sqrt(disc)) / 12.0
    lam = (a, a, 1.0 - 2.0 * a, 0.0)
    return me_concurrence(lam) - me_negativity(lam)


class TestSpectrum:
    def test_valid(self):
        s = Spectrum((0.5, 0.3, 0.2, 0.0))
        assert s.values == (0.5, 0.3, 0.2, 0.0)

    def test_rejects_wrong_order(self):
        with pytest.raises(ValueError, match="descending"):
            Spectrum((0.3, 0.5, 0.2, 0.0))

    def test_rejects_bad_sum(self):
        with pytest.raises(ValueError, match="sum"):
            Spectrum((0.5, 0.3, 0.1, 0.0))

    def test_rejects_negative(self):
        with pytest.raises(ValueError, match="non-negative"):
            Spectrum((0.6, 0.3, 0.2, -0.1))

    def test_rejects_wrong_length(self):
        with pytest.raises(ValueError):
            Spectrum((0.5, 0.5))

    def test_from_unsorted(self):
        s = Spectrum.from_unsorted((0.2, 0.5, 0.0, 0.3))
        assert s.values == (0.5, 0.3, 0.2, 0.0)

    def test_round_off_clamped(self):
        s = Spectrum((0.7, 0.3, 5e-13, -5e-13))
        assert s.values[3] == 0.0


class TestMeFormulas:
    def test_pure(self):
        assert me_concurrence((1.0, 0.0, 0.0, 0.0)) == 1.0
        assert me_negativity((1.0, 0.0, 0.0, 0.0)) == 1.0

    def test_rank2_balanced(self):
        assert abs(me_concurrence((0.5, 0.5, 0.0, 0.0)) - 0.5) <= 1e-15
        assert abs(me_negativity((0.5, 0.5, 0.0, 0.0)) - (math.sqrt(0.5) - 0.5)) <= 1e-15

    def test_maximally_mixed(self):
        assert me_concurrence((0.25,) * 4) == 0.0
        assert me_negativity((0.25,) * 4) == 0.0

    def test_concurrence_dominates_negativity(self):
        rng = np.random.default_rng(0)
        lams = np.sort(rng.dirichlet(np.ones(4), size=100_000), axis=1)[:, ::-1]
        l1, l2, l3, l4 = lams.T
        c = np.maximum(0.0, l1 - l3 - 2 * np.sqrt(l2 * l4))
        n = np.maximum(0.0, np.sqrt((l1 - l3) ** 2 + (l2 - l4) ** 2) - l2 - l4)
        assert np.all(n <= c + 1e-12)

    def test_rank2_reduction(self):
        # with lam3 = lam4 = 0 the formulas reduce to C = lam1 and
        # E_N = sqrt(lam1^2 + (1-lam1)^2) - (1 - lam1)
        for l1 in np.linspace(0.5, 1.0, 50):
            lam = (l1, 1.0 - l1, 0.0, 0.0)
            assert abs(me_concurrence(lam) - l1) <= 1e-15
            expected = math.sqrt(l1 * l1 + (1 - l1) ** 2) - (1 - l1)
            assert abs(me_negativity(lam) - expected) <= 1e-15


class TestRank2Curve:
    def test_endpoints(self):
        assert max_gap_rank2(1.0) == 0.0
        assert abs(max_gap_rank2(2.0) - (1 - 1 / math.sqrt(2))) <= 1e-15

    def test_interior_value(self):
        assert abs(max_gap_rank2(1.5) - 0.18350341907227385) <= 1e-15

    def test_matches_rank2_spectra(self):
        # the curve equals the gap of the rank-2 spectrum with that purity
        for l1 in np.linspace(0.5, 1.0, 200):
            lam = (l1, 1.0 - l1, 0.0, 0.0)
            R = 1.0 / (l1 * l1 + (1 - l1) ** 2)
            gap = me_concurrence(lam) - me_negativity(lam)
            assert abs(max_gap_rank2(R) - gap) <= 1e-12

    def test_domain(self):
        with pytest.raises(ValueError):
            max_gap_rank2(0.99)
        with pytest.raises(ValueError):
            max_gap_rank2(2.01)


class TestRank3Curve:
    def test_boundary_values(self):
        assert abs(max_gap_rank3(2.0) - max_gap_rank2(2.0)) <= 1e-12
        assert abs(max_gap_rank3(3.0)) <= 1e-12

    def test_frozen_value(self):
        assert abs(max_gap_rank3(2.5) - 0.21414223123874324) <= 1e-15

    def test_matches_equal_top_pair_optimum(self):
        for R in np.linspace(2.0, 3.0, 101):
            assert abs(max_gap_rank3(R) - rank3_equal_top_pair(R)) <= 1e-12

    def test_domain(self):
        with pytest.raises(ValueError):
            max_gap_rank3(1.99)
        with pytest.raises(ValueError):
            max_gap_rank3(3.01)


class TestEnvelope:
    def test_branch_agreement(self):
        for R in np.linspace(1.0, 2.0, 50):
            assert me_gap_envelope(R) == max_gap_rank2(R)
        for R in np.linspace(2.0 + 1e-9, 3.0, 50):
            assert me_gap_envelope(R) == max_gap_rank3(R)

    def test_separable_band_is_zero(self):
        for R in (3.0, 3.2, 3.5, 4.0):
            assert me_gap_envelope(R) == 0.0

    def test_continuity(self):
        assert abs(me_gap_envelope(2.0 - 1e-12) - me_gap_envelope(2.0 + 1e-12)) <= 1e-11
        # the rank-3 branch meets zero at R = 3 with a sqrt cusp
        approach = [me_gap_envelope(3.0 - eps) for eps in (1e-3, 1e-6, 1e-9, 1e-12)]
        assert all(b < a for a, b in zip(approach, approach[1:]))
        assert approach[-1] <= 1e-5
        assert me_gap_envelope(1.0) == 0.0

    def test_peak_at_two(self):
        assert abs(me_gap_envelope(2.0) - (1 - 1 / math.sqrt(2))) <= 1e-15

    def test_domain(self):
        with pytest.raises(ValueError):
            me_gap_envelope(0.9)
        with pytest.raises(ValueError):
            me_gap_envelope(4.1)


class TestGapVsC:
    def test_endpoints(self):
        gap0, lam0 = max_gap_vs_C(0.0)
        gap1, lam1 = max_gap_vs_C(1.0)
        assert gap0 == 0.0 and lam0.values == (1.0, 0.0, 0.0, 0.0)
        assert abs(gap1) <= 1e-15 and lam1.values == (1.0, 0.0, 0.0, 0.0)

    def test_midpoint(self):
        gap, lam = max_gap_vs_C(0.5)
        assert abs(gap - (1 - math.sqrt(0.5))) <= 1e-15
        assert lam.values == (0.5, 0.5, 0.0, 0.0)

    def test_gap_consistent_with_spectrum_formulas(self):
        for C in np.linspace(0.0, 1.0, 201):
            gap, lam = max_gap_vs_C(C)
            assert abs(gap - (me_concurrence(lam) - me_negativity(lam))) <= 1e-12

    def test_symmetry(self):
        for C in np.linspace(0.0, 0.5, 50):
            assert abs(max_gap_vs_C(C)[0] - max_gap_vs_C(1.0 - C)[0]) <= 1e-14

    def test_domain(self):
        with pytest.raises(ValueError):
            max_gap_vs_C(-0.01)
        with pytest.raises(ValueError):
            max_gap_vs_C(1.01)
