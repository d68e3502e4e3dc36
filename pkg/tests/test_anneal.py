import numpy as np
import pytest

from qaoa_ising.anneal import (
    AnnealConfig,
    MagnetizationGrid,
    anneal,
    finite_size_scan,
    fit_power_law,
    magnetization_grid,
    default_axes,
    rmse,
)
from qaoa_ising.errors import ContractViolation, DegenerateInputError
from qaoa_ising.ising import (
    IsingModel,
    enumerate_ground_states,
    field_aligned_magnetization,
    phase_diagram,
)
from qaoa_ising.lattice import LatticeKind, build_unit_cell

from .conftest import NINE_SPIN_POINTS

FAST = AnnealConfig(restarts=10, seed=7)


def grid_of(values, n=3):
    values = np.asarray(values, dtype=float)
    return MagnetizationGrid(
        n=n,
        h_axis=np.arange(values.shape[0], dtype=float),
        j2_axis=np.arange(values.shape[1], dtype=float),
        values=values,
    )


class TestAnneal:
    def test_strong_field_exact(self, square3):
        model = IsingModel(cell=square3, j1=1.0, j2=0.0, h=5.0)
        config, e = anneal(model, AnnealConfig(restarts=3, seed=0))
        assert config.to01() == "1" * 9  # every spin down, aligned with the field
        ground = enumerate_ground_states(model)
        assert e == ground.energy

    @pytest.mark.parametrize("j2, h", [(p[0], p[1]) for p in NINE_SPIN_POINTS])
    def test_nine_spin_points_reach_exhaustive_minimum(self, ss3, j2, h):
        model = IsingModel(cell=ss3, j1=1.0, j2=j2, h=h)
        _, e = anneal(model, FAST)
        assert e == enumerate_ground_states(model).energy

    def test_deterministic(self, tri3):
        model = IsingModel(cell=tri3, j1=1.0, j2=2.0, h=1.0)
        assert anneal(model, FAST) == anneal(model, FAST)

    def test_never_below_exhaustive_minimum(self):
        rng = np.random.default_rng(13)
        for kind in LatticeKind:
            cell = build_unit_cell(kind, 3)
            for _ in range(3):
                model = IsingModel(
                    cell=cell,
                    j1=1.0,
                    j2=float(rng.uniform(0, 4)),
                    h=float(rng.uniform(0, 6)),
                )
                _, e = anneal(model, AnnealConfig(restarts=2, seed=1))
                assert e >= enumerate_ground_states(model).energy - 1e-12

    def test_monotone_in_restarts(self, tri3):
        model = IsingModel(cell=tri3, j1=1.0, j2=3.3, h=0.4)
        energies = [
            anneal(model, AnnealConfig(restarts=k, seed=5, sweeps=60))[1]
            for k in range(1, 7)
        ]
        assert all(a >= b for a, b in zip(energies, energies[1:]))

    def test_config_validation(self):
        with pytest.raises(ContractViolation):
            AnnealConfig(restarts=0)
        with pytest.raises(ContractViolation):
            AnnealConfig(sweeps=0)

    def test_schedule_validation(self, square3):
        model = IsingModel(cell=square3, j1=1.0, j2=0.0, h=1.0)
        bad = AnnealConfig(t_hot=0.01, t_cold=0.05)
        with pytest.raises(ContractViolation):
            anneal(model, bad)

    def test_default_schedule_scales_with_field(self, square3):
        config = AnnealConfig()
        hot, cold = config.schedule_for(
            IsingModel(cell=square3, j1=1.0, j2=2.0, h=3.0)
        )
        assert hot == pytest.approx(11.0)
        assert cold == pytest.approx(0.05)
        hot_weak, _ = config.schedule_for(
            IsingModel(cell=square3, j1=1.0, j2=0.0, h=0.0)
        )
        assert hot_weak == pytest.approx(1.0)


class TestMagnetizationGrid:
    def test_default_axes_shape(self):
        axes = default_axes()
        assert axes.shape == (30,)
        assert axes[0] == 0.0
        assert axes[-1] == pytest.approx(5.8)
        assert np.allclose(np.diff(axes), 0.2)

    def test_matches_exhaustive_on_unique_ground_states(self, square3):
        h_axis = np.array([0.5, 3.5, 4.5])
        j2_axis = np.array([0.0])
        grid = magnetization_grid(
            LatticeKind.SQUARE, 3, FAST, h_axis=h_axis, j2_axis=j2_axis
        )
        exhaustive = phase_diagram(LatticeKind.SQUARE, 3, h_axis, j2_axis)
        for i in range(3):
            cell = exhaustive.cells[i][0]
            assert cell.degeneracy == 1
            assert grid.values[i, 0] == float(cell.mean_field_aligned_m)

    @pytest.mark.parametrize("n", [3, 4, 5])
    def test_saturated_plateau(self, n):
        grid = magnetization_grid(
            LatticeKind.SQUARE,
            n,
            AnnealConfig(restarts=3, seed=2),
            h_axis=np.array([6.0]),
            j2_axis=np.array([0.0]),
        )
        assert grid.values[0, 0] == 1.0

    def test_thread_count_does_not_change_results(self):
        axes = np.linspace(0.0, 6.0, 4)
        serial = magnetization_grid(
            LatticeKind.TRIANGULAR, 3, FAST, h_axis=axes, j2_axis=axes, threads=1
        )
        threaded = magnetization_grid(
            LatticeKind.TRIANGULAR, 3, FAST, h_axis=axes, j2_axis=axes, threads=4
        )
        np.testing.assert_array_equal(serial.values, threaded.values)

    def test_deterministic(self):
        axes = np.linspace(0.0, 5.0, 3)
        a = magnetization_grid(
            LatticeKind.SHASTRY_SUTHERLAND, 3, FAST, h_axis=axes, j2_axis=axes
        )
        b = magnetization_grid(
            LatticeKind.SHASTRY_SUTHERLAND, 3, FAST, h_axis=axes, j2_axis=axes
        )
        np.testing.assert_array_equal(a.values, b.values)

    def test_annealed_magnetization_equals_best_config(self, tri3):
        model = IsingModel(cell=tri3, j1=1.0, j2=1.0, h=2.0)
        config, _ = anneal(model, FAST)
        grid = magnetization_grid(
            LatticeKind.TRIANGULAR,
            3,
            FAST,
            h_axis=np.array([2.0]),
            j2_axis=np.array([1.0]),
        )
        assert grid.values[0, 0] == float(field_aligned_magnetization(config, 2.0))


class TestRmse:
    def test_identical_grids(self):
        g = grid_of(np.random.default_rng(0).random((4, 4)))
        assert rmse(g, g) == 0.0

    def test_constant_offset(self):
        base = np.random.default_rng(1).random((30, 30))
        assert rmse(grid_of(base + 0.1), grid_of(base)) == pytest.approx(
            0.1, abs=1e-12
        )

    def test_axis_mismatch(self):
        a = grid_of(np.zeros((3, 3)))
        b = MagnetizationGrid(
            n=3,
            h_axis=np.array([9.0, 10.0, 11.0]),
            j2_axis=a.j2_axis,
            values=np.zeros((3, 3)),
        )
        with pytest.raises(ContractViolation):
            rmse(a, b)

    def test_metric_properties(self):
        rng = np.random.default_rng(2)
        for _ in range(5):
            a, b, c = (grid_of(rng.random((5, 5))) for _ in range(3))
            assert rmse(a, b) == rmse(b, a)
            assert rmse(a, b) >= 0
            assert rmse(a, c) <= rmse(a, b) + rmse(b, c) + 1e-12
            assert rmse(a, a) == 0.0


class TestPowerLawFit:
    def test_exact_synthetic_law(self):
        points = [(float(n), 2.0 * n**-1.0) for n in (3, 5, 10, 20, 30)]
        fit = fit_power_law(points)
        assert fit.exponent == pytest.approx(-1.0, abs=1e-12)
        assert fit.prefactor == pytest.approx(2.0, abs=1e-10)
        assert fit.r_squared == pytest.approx(1.0, abs=1e-12)
        assert fit.exponent_stderr == pytest.approx(0.0, abs=1e-6)

    def test_nonpositive_points_dropped_with_warning(self):
        points = [(3.0, 0.9), (5.0, 0.5), (10.0, 0.2), (20.0, 0.0)]
        with pytest.warns(UserWarning, match="non-positive"):
            fit = fit_power_law(points)
        clean = fit_power_law(points[:3])
        assert fit.exponent == clean.exponent

    def test_too_few_points(self):
        with pytest.raises(DegenerateInputError):
            fit_power_law([(3.0, 0.5), (5.0, 0.3)])
        with pytest.warns(UserWarning, match="non-positive"):
            with pytest.raises(DegenerateInputError):
                fit_power_law([(3.0, 0.5), (5.0, 0.3), (7.0, 0.0)])


class TestFiniteSizeScan:
    def test_small_scan_structure(self):
        axes = np.linspace(0.0, 6.0, 3)
        scan = finite_size_scan(
            LatticeKind.TRIANGULAR,
            [3, 4, 5, 6],
            AnnealConfig(restarts=5, seed=3),
            h_axis=axes,
            j2_axis=axes,
        )
        assert scan.reference_n == 6
        assert [s for s, _ in scan.rmse_points] == [3, 4, 5]
        assert all(r >= 0 for _, r in scan.rmse_points)
        assert scan.grids == ()

    def test_needs_enough_sizes(self):
        with pytest.raises(ContractViolation):
            finite_size_scan(LatticeKind.TRIANGULAR, [3, 5])
