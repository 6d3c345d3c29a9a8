"""Error-budget tests.

Frozen values were produced by an independent oracle pass (direct formula
evaluation cross-checked against scipy.integrate.quad of the Gaussian
tail) before this file was written.
"""

import dataclasses
import math

import numpy as np
import pytest

from gapscan import (
    CoolingFunction,
    Hamiltonian,
    Observable,
    SampleStream,
    ScanConfig,
    assemble_scan_deterministic,
    heisenberg_chain,
    prepare_state,
    sample_expectation,
)
from gapscan.budget import (
    BudgetError,
    ErrorBudget,
    SweepRow,
    cutoff_error_bound,
    cutoff_error_bound_tight,
    cutoff_sweep,
    make_budget,
    min_sampling_range,
    shot_variance_bound,
)

A_NARROW = 1 / (50 * math.sqrt(2))


class TestCutoffBounds:
    def test_no_truncation_limit(self):
        # T = 0 keeps the full integral; the majorant is just 2/a
        assert cutoff_error_bound(1.0, 0.0) == 2.0
        assert cutoff_error_bound_tight(1.0, 0.0) == pytest.approx(
            math.sqrt(math.pi), rel=1e-14
        )

    def test_frozen_paper_bound(self):
        # oracle: (2/a) e^{-(aT)^2} at a = 1/(50 sqrt(2)), T = 100
        assert cutoff_error_bound(A_NARROW, 100.0) == pytest.approx(
            19.139299302082176, rel=1e-12
        )

    def test_frozen_tight_bound(self):
        # oracle: quad of exp(-a^2 t^2) over |t| > 100 gave 5.702612399289204
        assert cutoff_error_bound_tight(A_NARROW, 100.0) == pytest.approx(
            5.702612399289201, rel=1e-10
        )

    def test_tight_never_exceeds_majorant(self):
        rng = np.random.default_rng(7)
        for _ in range(200):
            a = math.exp(rng.uniform(-4, 1))
            t = rng.uniform(0, 6) / a
            assert cutoff_error_bound_tight(a, t) <= cutoff_error_bound(a, t)

    def test_strictly_decreasing_in_t(self):
        ts = np.arange(0.0, 5.0, 0.25)
        paper = [cutoff_error_bound(0.7, t) for t in ts]
        tight = [cutoff_error_bound_tight(0.7, t) for t in ts]
        assert all(x > y for x, y in zip(paper, paper[1:]))
        assert all(x > y for x, y in zip(tight, tight[1:]))

    @pytest.mark.parametrize("a,t", [(0.0, 1.0), (-0.5, 1.0), (math.nan, 1.0), (1.0, -0.1)])
    def test_rejects_bad_inputs(self, a, t):
        with pytest.raises(BudgetError):
            cutoff_error_bound(a, t)
        with pytest.raises(BudgetError):
            cutoff_error_bound_tight(a, t)


class TestMinSamplingRange:
    def test_unit_case(self):
        # ln(2 / (2/e)) = 1, so T_min = 1 exactly
        assert min_sampling_range(1.0, 2 / math.e) == pytest.approx(1.0, rel=1e-14)

    def test_frozen_narrow_case(self):
        assert min_sampling_range(A_NARROW, 0.01) == pytest.approx(
            218.59682022225476, rel=1e-12
        )

    def test_round_trip_is_exact_inverse(self):
        rng = np.random.default_rng(11)
        n = 0
        while n < 200:
            a = math.exp(rng.uniform(-5, 1))
            eps = math.exp(rng.uniform(-8, 0))
            if a * eps >= 2:
                continue
            n += 1
            t = min_sampling_range(a, eps)
            assert cutoff_error_bound(a, t) == pytest.approx(eps, rel=1e-12)
            assert cutoff_error_bound(a, 1.01 * t) < eps

    def test_rejects_log_domain_violation(self):
        with pytest.raises(BudgetError, match="no truncation"):
            min_sampling_range(4.0, 0.5)
        with pytest.raises(BudgetError):
            min_sampling_range(1.0, 0.0)
        with pytest.raises(BudgetError):
            min_sampling_range(-1.0, 0.1)


class TestShotVarianceBound:
    def test_single_unit_coefficient(self):
        assert shot_variance_bound([1.0], 1) == 0.25

    def test_two_halves(self):
        assert shot_variance_bound([0.5, 0.5], 100) == 0.00125

    def test_signs_and_complex_moduli_ignored(self):
        assert shot_variance_bound([-0.5, 0.5j], 100) == 0.00125

    def test_exact_halving_in_shots(self):
        coeffs = [0.3, -1.1, 0.7]
        assert shot_variance_bound(coeffs, 100) == 2 * shot_variance_bound(coeffs, 200)

    def test_rejects_empty_and_zero_shots(self):
        with pytest.raises(BudgetError):
            shot_variance_bound([], 10)
        with pytest.raises(BudgetError):
            shot_variance_bound([1.0], 0)

    def test_empirical_projector_variance_within_bound(self):
        # worst case p = 1/2: estimator variance equals the bound, so the
        # sample variance sits at the bound up to O(1/sqrt(repeats))
        psi = prepare_state("+", 1)
        o = Observable("projector", state=prepare_state("0", 1))
        shots = 50
        est = [
            sample_expectation(o, psi, shots, SampleStream(99, r))
            for r in range(4000)
        ]
        v = float(np.var(est, ddof=1))
        bound = shot_variance_bound([1.0], shots)
        assert v <= 1.15 * bound
        assert v >= 0.80 * bound


class TestMakeBudget:
    def test_fields_consistent(self):
        b = make_budget(0.1, 40.0, 1e-2, [0.5, 0.5], 200)
        assert b.cutoff_bound == cutoff_error_bound(0.1, 40.0)
        assert b.tight_bound == cutoff_error_bound_tight(0.1, 40.0)
        assert b.min_t == min_sampling_range(0.1, 1e-2)
        assert b.shot_variance_bound == shot_variance_bound([0.5, 0.5], 200)
        assert b.coeff_square_sum == 0.5
        assert (b.a, b.t, b.eps_c, b.shots) == (0.1, 40.0, 1e-2, 200)

    def test_budget_is_frozen(self):
        b = make_budget(0.1, 40.0, 1e-2, [1.0], 10)
        with pytest.raises(dataclasses.FrozenInstanceError):
            b.cutoff_bound = 0.0


def _empirical_tail_scan(a, t, e_grid, tau):
    # H = 0 makes the gap kernel identically 1; the truncated transform
    # of the bare cooling factor is the cleanest probe of the tail bound
    h = Hamiltonian.from_terms(1, [])
    cfg = ScanConfig(
        mode="gap",
        cooling=CoolingFunction("gaussian", a),
        cutoff=t,
        n_samples=2,
        e_grid=e_grid,
        tau=tau,
    )
    return assemble_scan_deterministic(h, prepare_state("0", 1), cfg)


class TestEmpiricalTailError:
    def test_truncation_error_below_bounds(self):
        a = 0.25
        grid = (-3.0, 3.0, 0.05)
        for t in (2.0, 4.0, 8.0, 12.0):
            scan = _empirical_tail_scan(a, t, grid, tau=0.005)
            closed = (math.sqrt(math.pi) / a) * np.exp(
                -scan.e_values**2 / (4 * a**2)
            )
            diff = np.abs(closed - scan.c_values.real)
            assert diff.max() <= cutoff_error_bound(a, t) + 1e-5
            # at E = 0 the discarded tail integrates with no phase, so the
            # deficit equals the exact tail mass
            i0 = int(np.argmin(np.abs(scan.e_values)))
            assert abs(scan.e_values[i0]) < 1e-12
            assert diff[i0] == pytest.approx(
                cutoff_error_bound_tight(a, t), abs=2e-5
            )


def _sweep_config(a, e_grid, tau):
    return ScanConfig(
        mode="gap",
        cooling=CoolingFunction("gaussian", a),
        cutoff=10.0,
        n_samples=2,
        e_grid=e_grid,
        tau=tau,
    )


class TestCutoffSweep:
    def test_heisenberg_sweep_tracks_bounds(self):
        a = 0.05
        h = heisenberg_chain(3)
        psi = prepare_state("super(+++,001)", 3)
        cfg = _sweep_config(a, (0.5, 10.8, a / 2), tau=math.pi / 22)
        ts = [10.0, 20.0, 30.0, 45.0, 58.0, 62.0]
        res = cutoff_sweep(h, psi, cfg, ts, eps_c=1e-2)
        assert res.target_gap == pytest.approx(2.0, abs=1e-9)
        assert res.t_min == pytest.approx(min_sampling_range(a, 1e-2), rel=1e-12)
        assert [r.t for r in res.rows] == ts
        for row in res.rows:
            assert row.found
            assert row.gap_error <= row.paper_bound
            assert row.tight_bound <= row.paper_bound
            if row.t >= res.t_min:
                assert row.gap_error < res.eps_c

    def test_bound_inversion_at_every_level(self):
        # truncation ringing makes the raw error wiggle, so monotonicity
        # only holds through the bound: past min_sampling_range(a, eps)
        # the error is below eps, for any eps
        a = 0.05
        h = heisenberg_chain(3)
        psi = prepare_state("super(+++,001)", 3)
        cfg = _sweep_config(a, (0.5, 10.8, a / 2), tau=math.pi / 22)
        res = cutoff_sweep(h, psi, cfg, [15.0, 25.0, 35.0, 50.0, 60.0])
        for eps in (0.5, 0.2, 0.05, 0.01):
            t_min = min_sampling_range(a, eps)
            for row in res.rows:
                if row.t >= t_min:
                    assert row.gap_error < eps

    def test_target_override(self):
        a = 0.05
        h = heisenberg_chain(3)
        psi = prepare_state("super(+++,001)", 3)
        cfg = _sweep_config(a, (0.5, 10.8, a / 2), tau=math.pi / 22)
        res = cutoff_sweep(h, psi, cfg, [40.0], target_gap=4.0)
        assert res.target_gap == 4.0
        assert res.rows[0].gap_error < 1e-3

    def test_lost_peak_reported_not_fatal(self):
        # zero Hamiltonian, window strictly right of E = 0: the scan is the
        # monotone tail of the transformed cooling factor, so no peaks
        a = 0.3
        h = Hamiltonian.from_terms(1, [])
        psi = prepare_state("0", 1)
        cfg = _sweep_config(a, (0.1, 1.3, 0.05), tau=0.5)
        res = cutoff_sweep(h, psi, cfg, [30.0], target_gap=0.5)
        row = res.rows[0]
        assert not row.found
        assert math.isnan(row.gap_error)
        assert row.paper_bound == cutoff_error_bound(a, 30.0)

    def test_rows_sorted_by_cutoff(self):
        a = 0.05
        h = heisenberg_chain(3)
        psi = prepare_state("super(+++,001)", 3)
        cfg = _sweep_config(a, (0.5, 10.8, a / 2), tau=math.pi / 22)
        res = cutoff_sweep(h, psi, cfg, [50.0, 20.0, 35.0])
        assert [r.t for r in res.rows] == [20.0, 35.0, 50.0]

    def test_validation_errors(self):
        a = 0.05
        h = heisenberg_chain(3)
        psi = prepare_state("super(+++,001)", 3)
        det = _sweep_config(a, (0.5, 10.8, a / 2), tau=math.pi / 22)
        mc = dataclasses.replace(det, tau=None, n_samples=100)
        with pytest.raises(BudgetError, match="deterministic"):
            cutoff_sweep(h, psi, mc, [30.0])
        energy = dataclasses.replace(det, mode="energy", e_grid=(-6.0, 6.0, a / 2))
        with pytest.raises(BudgetError, match="gap"):
            cutoff_sweep(h, psi, energy, [30.0])
        with pytest.raises(BudgetError, match="empty"):
            cutoff_sweep(h, psi, det, [])
        with pytest.raises(BudgetError, match="tau"):
            cutoff_sweep(h, psi, det, [0.01])
        flat = Hamiltonian.from_terms(2, [])
        with pytest.raises(BudgetError, match="no gap"):
            cutoff_sweep(flat, prepare_state("00", 2), det, [30.0])

    def test_row_fields(self):
        row = SweepRow(t=1.0, gap_error=0.1, paper_bound=0.5, tight_bound=0.2, found=True)
        assert dataclasses.asdict(row) == {
            "t": 1.0,
            "gap_error": 0.1,
            "paper_bound": 0.5,
            "tight_bound": 0.2,
            "found": True,
        }
