import numpy as np
import pytest

from llhyst.core import (
    HarmonicInput,
    MagnetizationField,
    SpatialGrid,
    Trajectory,
    cross,
    evaluate_input,
    plan_steps,
)


class TestCross:
    def test_right_handed_basis(self):
        assert np.array_equal(cross([1, 0, 0], [0, 1, 0]), [0, 0, 1])

    def test_self_cross_is_zero(self):
        a = np.array([0.3, -1.2, 2.5])
        assert np.array_equal(cross(a, a), np.zeros(3))

    def test_component_formula(self):
        assert np.array_equal(cross([1, 2, 3], [4, 5, 6]), [-3, 6, -3])

    def test_antisymmetry_and_orthogonality(self):
        rng = np.random.default_rng(42)
        for _ in range(100):
            a = rng.normal(size=3) * 10 ** rng.uniform(-3, 3)
            b = rng.normal(size=3) * 10 ** rng.uniform(-3, 3)
            c = cross(a, b)
            na, nb = np.linalg.norm(a), np.linalg.norm(b)
            assert np.array_equal(c, -cross(b, a))
            # the dot-product cancellation happens at |a|^2 |b| magnitude
            assert abs(c @ a) <= 1e-15 * na * na * nb
            assert abs(c @ b) <= 1e-15 * na * nb * nb

    def test_matches_numpy_oracle(self):
        rng = np.random.default_rng(3)
        a = rng.normal(size=(50, 3))
        b = rng.normal(size=(50, 3))
        np.testing.assert_allclose(cross(a, b), np.cross(a, b), rtol=1e-15)

    def test_rejects_non_finite(self):
        with pytest.raises(ValueError):
            cross([np.nan, 0, 0], [0, 1, 0])
        with pytest.raises(ValueError):
            cross([1, 0, 0], [0, np.inf, 0])

    def test_rejects_wrong_shape(self):
        with pytest.raises(ValueError):
            cross([1, 0], [0, 1])


class TestEvaluateInput:
    def test_sine_starts_at_zero(self):
        sig = HarmonicInput(1.0, 1.0, "sine")
        assert evaluate_input(sig, 0.0) == 0.0

    def test_cosine_starts_at_amplitude(self):
        sig = HarmonicInput(0.001, 1.0, "cosine")
        assert evaluate_input(sig, 0.0) == 0.001

    def test_sine_quarter_period(self):
        sig = HarmonicInput(1.0, 2.0, "sine")
        assert evaluate_input(sig, np.pi / 4) == pytest.approx(1.0, abs=1e-15)

    def test_periodicity(self):
        rng = np.random.default_rng(7)
        for _ in range(50):
            sig = HarmonicInput(rng.uniform(0.1, 10), rng.uniform(0.01, 10),
                                rng.choice(["sine", "cosine"]))
            t = rng.uniform(0, 100)
            diff = abs(evaluate_input(sig, t)
                       - evaluate_input(sig, t + 2 * np.pi / sig.omega))
            assert diff <= 1e-11 * max(1.0, sig.amplitude)

    def test_vectorized(self):
        sig = HarmonicInput(2.0, 3.0, "sine")
        t = np.linspace(0, 5, 11)
        np.testing.assert_allclose(evaluate_input(sig, t), 2 * np.sin(3 * t))

    def test_rejects_negative_time(self):
        with pytest.raises(ValueError):
            evaluate_input(HarmonicInput(1.0, 1.0), -0.5)

    def test_validation(self):
        with pytest.raises(ValueError):
            HarmonicInput(1.0, 0.0)
        with pytest.raises(ValueError):
            HarmonicInput(np.inf, 1.0)
        with pytest.raises(ValueError):
            HarmonicInput(1.0, 1.0, "square")
        with pytest.raises(ValueError):
            HarmonicInput(1.0, 1.0, "sine", channel=4)


class TestSpatialGrid:
    def test_spacing_and_nodes(self):
        g = SpatialGrid(1.0, 41)
        assert g.h == 1.0 / 40
        assert len(g.nodes) == 41
        assert g.nodes[0] == 0.0
        assert g.nodes[-1] == pytest.approx(1.0)

    def test_nearest_node_snap(self):
        g = SpatialGrid(1.0, 41)
        assert g.nearest_node(0.6) == 24
        assert abs(g.nodes[g.nearest_node(0.61)] - 0.61) <= g.h / 2

    def test_requires_three_nodes(self):
        with pytest.raises(ValueError):
            SpatialGrid(1.0, 2)
        with pytest.raises(ValueError):
            SpatialGrid(-1.0, 10)

    def test_nearest_node_outside_domain(self):
        with pytest.raises(ValueError):
            SpatialGrid(1.0, 11).nearest_node(1.5)


class TestMagnetizationField:
    def test_shape_validation(self, grid41):
        with pytest.raises(ValueError):
            MagnetizationField(grid41, np.ones((40, 3)))

    def test_values_are_frozen(self, grid41):
        f = MagnetizationField.constant(grid41, [1.0, 0, 0])
        with pytest.raises(ValueError):
            f.values[0, 0] = 2.0

    def test_unit_norm_check(self, grid41):
        f = MagnetizationField.constant(grid41, [1.0, 0, 0])
        f.require_unit_norm()
        g = MagnetizationField(grid41, f.values * 1.001)
        with pytest.raises(Exception):
            g.require_unit_norm()

    def test_renormalized(self, grid41):
        f = MagnetizationField(grid41, np.full((41, 3), 0.7))
        r = f.renormalized()
        np.testing.assert_allclose(r.norms(), 1.0, atol=1e-15)

    def test_rejects_nan(self, grid41):
        vals = np.ones((41, 3))
        vals[3, 1] = np.nan
        with pytest.raises(ValueError):
            MagnetizationField(grid41, vals)


class TestTrajectory:
    def test_length_mismatch(self):
        with pytest.raises(ValueError):
            Trajectory([0, 1], [0.0], [0.0, 0.0])

    def test_times_must_increase(self):
        with pytest.raises(ValueError):
            Trajectory([0, 1, 1], [0, 0, 0], [0, 0, 0])

    def test_roundtrip(self):
        tr = Trajectory([0.0, 0.5, 1.0], [1.0, 2.0, 3.0], [0.0, 0.1, 0.2])
        assert len(tr) == 3
        assert not tr.times.flags.writeable


class TestPlanSteps:
    def test_dt_never_exceeds_bound(self):
        for dt_max in (0.04, 1e-3, 3.1e-4):
            n, dt, stride = plan_steps(10.0, dt_max, 2000)
            assert dt <= dt_max * (1 + 1e-12)
            assert n % stride == 0

    def test_period_alignment(self):
        T = 2 * np.pi
        n, dt, stride = plan_steps(3 * T, 3.004e-4, 2000, period=T)
        steps_pp = int(round(T / dt))
        assert steps_pp % stride == 0
        assert n == 3 * steps_pp

    def test_halving_dt_doubles_steps(self):
        T = 2 * np.pi
        n1, dt1, _ = plan_steps(3 * T, T / 1000, 2000, period=T)
        n2, dt2, _ = plan_steps(3 * T, T / 2000, 2000, period=T)
        assert n2 == 2 * n1
        assert dt2 == pytest.approx(dt1 / 2, rel=1e-15)
