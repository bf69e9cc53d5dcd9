import numpy as np
import pytest

from llhyst.core import BlowUpError, HarmonicInput, StabilityError
from llhyst.odebench import (
    SecondOrderParams,
    SecondOrderState,
    closed_form_k0,
    closed_form_linear,
    equilibria,
    integrate,
    linearized_eigenvalues,
    rhs,
)

LINEAR = SecondOrderParams(15.0, 1.0)
CHAIN = SecondOrderParams(15.0, 0.0)
CUBIC = SecondOrderParams(15.0, -1.0, cubic=True)


class TestRhs:
    def test_linear_origin_is_equilibrium(self):
        d = rhs(LINEAR, SecondOrderState(0.0, 0.0), 0.0)
        assert (d.y, d.ydot) == (0.0, 0.0)

    def test_cubic_outer_equilibria(self):
        for y in (1.0, -1.0):
            d = rhs(CUBIC, SecondOrderState(y, 0.0), 0.0)
            assert (d.y, d.ydot) == (0.0, 0.0)

    def test_chain_continuum(self):
        for a in (-3.0, 0.0, 0.7, 12.5):
            d = rhs(CHAIN, SecondOrderState(a, 0.0), 0.0)
            assert (d.y, d.ydot) == (0.0, 0.0)

    def test_forced_value(self):
        d = rhs(LINEAR, SecondOrderState(2.0, 1.0), 0.5)
        assert d.y == 1.0
        assert d.ydot == -15.0 * 1.0 - 2.0 + 0.5


class TestEquilibria:
    def test_linear_single(self):
        eq = equilibria(LINEAR)
        assert eq.kind == "single"
        assert eq.points == (SecondOrderState(0.0, 0.0),)

    def test_chain_continuum(self):
        assert equilibria(CHAIN).kind == "continuum"

    def test_cubic_three_points(self):
        eq = equilibria(CUBIC)
        assert eq.kind == "finite"
        assert {p.y for p in eq.points} == {0.0, 1.0, -1.0}

    def test_cubic_with_zero_stiffness_degenerates(self):
        assert equilibria(SecondOrderParams(15.0, 0.0, cubic=True)).kind == "continuum"

    def test_rhs_vanishes_on_every_reported_point(self):
        for params in (LINEAR, CHAIN, CUBIC):
            for p in equilibria(params).points:
                d = rhs(params, p, 0.0)
                assert (d.y, d.ydot) == (0.0, 0.0)


class TestLinearizedEigenvalues:
    def test_chain_eigenvalues(self):
        lams = linearized_eigenvalues(CHAIN, SecondOrderState(0.0, 0.0))
        assert sorted(l.real for l in lams) == [-15.0, 0.0]

    def test_linear_eigenvalues(self):
        lams = linearized_eigenvalues(LINEAR, SecondOrderState(0.0, 0.0))
        expected = sorted([(-15 + np.sqrt(221)) / 2, (-15 - np.sqrt(221)) / 2])
        got = sorted(l.real for l in lams)
        np.testing.assert_allclose(got, expected, rtol=1e-14)
        assert got[1] == pytest.approx(-0.06697, abs=1e-5)
        assert got[0] == pytest.approx(-14.93303, abs=1e-5)

    def test_cubic_outer_point(self):
        lams = linearized_eigenvalues(CUBIC, SecondOrderState(1.0, 0.0))
        # effective stiffness k*(1 - 3y^2) = 2 at y = 1
        for lam in lams:
            assert abs(lam**2 + 15 * lam + 2) < 1e-12
            assert lam.real < 0

    def test_cubic_origin_is_unstable(self):
        lams = linearized_eigenvalues(CUBIC, SecondOrderState(0.0, 0.0))
        assert max(l.real for l in lams) > 0

    def test_characteristic_residual(self):
        rng = np.random.default_rng(11)
        for _ in range(50):
            params = SecondOrderParams(rng.uniform(0.1, 30), rng.uniform(-5, 5))
            lams = linearized_eigenvalues(params, SecondOrderState(0.0, 0.0))
            for lam in lams:
                res = abs(lam**2 + params.c * lam + params.k)
                assert res <= 1e-12 * max(1.0, abs(lam) ** 2)

    def test_rejects_non_equilibrium(self):
        with pytest.raises(ValueError):
            linearized_eigenvalues(LINEAR, SecondOrderState(0.5, 0.0))


class TestClosedFormLinear:
    def test_initial_condition(self):
        assert closed_form_linear(15, 1, 1.0, 0.0, 0.0, 0.0) == pytest.approx(0.0, abs=1e-15)
        assert closed_form_linear(15, 1, 0.3, 2.0, -1.0, 0.0) == pytest.approx(2.0, rel=1e-12)

    def test_low_frequency_steady_state_is_zero(self):
        # limit omega -> 0 then t -> infinity: response dies with the forcing
        val = closed_form_linear(15, 1, 1e-7, 0.7, -0.4, 500.0)
        assert abs(val) < 1e-4

    def test_against_integrator_oracle(self):
        inp = HarmonicInput(1.0, 1.0, "sine")
        traj = integrate(LINEAR, inp, SecondOrderState(0.0, 0.0), 5.0, dt=1e-4)
        ref = closed_form_linear(15, 1, 1.0, 0.0, 0.0, traj.times[-1])
        assert abs(traj.samples[-1] - ref) <= 1e-8

    def test_derivative_matches_initial_velocity(self):
        eps = 1e-7
        y1 = 0.83
        d = (closed_form_linear(15, 1, 2.0, 0.4, y1, eps)
             - closed_form_linear(15, 1, 2.0, 0.4, y1, 0.0)) / eps
        assert d == pytest.approx(y1, abs=1e-5)

    def test_rejects_repeated_eigenvalues(self):
        with pytest.raises(ValueError):
            closed_form_linear(2.0, 1.0, 1.0, 0.0, 0.0, 1.0)

    def test_underdamped_branch_is_real(self):
        # complex eigenvalue pair: result must still be a real response
        vals = closed_form_linear(0.5, 4.0, 1.0, 1.0, 0.0,
                                  np.linspace(0, 10, 100))
        assert np.all(np.isfinite(vals))
        inp = HarmonicInput(1.0, 1.0, "sine")
        traj = integrate(SecondOrderParams(0.5, 4.0), inp,
                         SecondOrderState(1.0, 0.0), 10.0, dt=1e-4)
        ref = closed_form_linear(0.5, 4.0, 1.0, 1.0, 0.0, traj.times)
        assert np.abs(traj.samples - ref).max() <= 1e-8


class TestClosedFormK0:
    def test_initial_condition(self):
        assert closed_form_k0(15, 1.0, 0.0, 0.0, 0.0) == pytest.approx(0.0, abs=1e-15)
        assert closed_form_k0(15, 0.3, 1.5, 2.0, 0.0) == pytest.approx(1.5, rel=1e-12)

    def test_limit_keeps_initial_conditions(self):
        # omega -> 0 then t -> infinity tends to y0 + y1/c
        y0, y1, c = 0.4, 2.0, 15.0
        val = closed_form_k0(c, 1e-9, y0, y1, 100.0)
        assert abs(val - (y0 + y1 / c)) < 1e-6

    def test_against_integrator_oracle(self):
        inp = HarmonicInput(1.0, 0.1, "sine")
        traj = integrate(CHAIN, inp, SecondOrderState(1.0, 2.0), 3.0, dt=1e-5)
        ref = closed_form_k0(15, 0.1, 1.0, 2.0, traj.times[-1])
        assert abs(traj.samples[-1] - ref) <= 1e-7

    def test_requires_positive_parameters(self):
        with pytest.raises(ValueError):
            closed_form_k0(-1.0, 1.0, 0, 0, 1.0)
        with pytest.raises(ValueError):
            closed_form_k0(15.0, 0.0, 0, 0, 1.0)


class TestIntegrate:
    def test_rest_at_equilibrium(self):
        traj = integrate(LINEAR, None, SecondOrderState(0.0, 0.0), 10.0)
        assert np.abs(traj.samples).max() == 0.0

    def test_unforced_chain_matches_closed_form(self):
        # the unforced part of the k=0 response: y0 + y1/c * (1 - e^{-ct})
        traj = integrate(CHAIN, None, SecondOrderState(0.5, 2.0), 3.0, dt=1e-3)
        ref = 0.5 + 2.0 / 15.0 * (1.0 - np.exp(-15.0 * traj.times))
        assert np.abs(traj.samples - ref).max() <= 1e-10

    def test_unforced_chain_steady_state(self):
        traj = integrate(CHAIN, None, SecondOrderState(0.3, 2.0), 5.0, dt=1e-3)
        final = traj.meta["final_state"]
        assert abs(final.y - (0.3 + 2.0 / 15.0)) <= 1e-8
        assert abs(final.ydot) <= 1e-12

    def test_cubic_basin_convergence(self):
        # from (0.5, 0) the bistable system creeps to y=1; the overdamped
        # timescale puts the 1e-6 crossing near t = 106
        traj = integrate(CUBIC, None, SecondOrderState(0.5, 0.0), 120.0, dt=1e-2)
        err = np.abs(traj.samples - 1.0)
        crossing = traj.times[np.argmax(err < 1e-6)]
        assert err[-1] < 1e-6
        assert 50.0 < crossing < 115.0
        # halved-dt oracle agrees on the endpoint
        oracle = integrate(CUBIC, None, SecondOrderState(0.5, 0.0), 120.0, dt=5e-3)
        assert abs(traj.samples[-1] - oracle.samples[-1]) < 1e-9

    def test_harmonic_default_resolution(self):
        inp = HarmonicInput(1.0, 0.5, "sine")
        traj = integrate(LINEAR, inp, SecondOrderState(0.0, 0.0), 3 * inp.period)
        assert traj.meta["records_per_period"] >= 100
        assert traj.meta["dt"] <= inp.period / 1000

    def test_step_size_guard(self):
        inp = HarmonicInput(1.0, 1.0, "sine")
        with pytest.raises(StabilityError):
            integrate(LINEAR, inp, SecondOrderState(0, 0), 10.0,
                      dt=inp.period / 100)

    def test_blow_up_reports_time(self):
        unstable = SecondOrderParams(15.0, 1.0, cubic=True)
        with pytest.raises(BlowUpError) as err:
            integrate(unstable, None, SecondOrderState(2.0, 0.0), 50.0, dt=0.01)
        assert 0.0 < err.value.time <= 50.0

    def test_deterministic(self):
        inp = HarmonicInput(1.0, 1.0, "sine")
        a = integrate(LINEAR, inp, SecondOrderState(0, 0), 3 * inp.period)
        b = integrate(LINEAR, inp, SecondOrderState(0, 0), 3 * inp.period)
        assert np.array_equal(a.samples, b.samples)
        assert np.array_equal(a.times, b.times)


class TestOracleEquivalence:
    @pytest.mark.parametrize("k,omega", [(1.0, 1.0), (0.0, 1.0)])
    def test_default_dt_error(self, k, omega):
        params = SecondOrderParams(15.0, k)
        inp = HarmonicInput(1.0, omega, "sine")
        traj = integrate(params, inp, SecondOrderState(0, 0), 3 * inp.period)
        if k == 0.0:
            ref = closed_form_k0(15.0, omega, 0, 0, traj.times)
        else:
            ref = closed_form_linear(15.0, k, omega, 0, 0, traj.times)
        assert np.abs(traj.samples - ref).max() <= 1e-6


class TestUnforcedDecay:
    def test_reaches_noise_floor(self):
        # both eigenvalues negative; the slow mode -0.06697 dominates, so the
        # worst unit initial state needs just over t=200 to cross 1e-6
        rng = np.random.default_rng(5)
        starts = [SecondOrderState(1.0, 0.0)]
        for _ in range(5):
            v = rng.normal(size=2)
            v = v / np.linalg.norm(v) * rng.uniform(0.1, 1.0)
            starts.append(SecondOrderState(v[0], v[1]))
        for s0 in starts:
            traj = integrate(LINEAR, None, s0, 215.0, dt=0.04)
            final = traj.meta["final_state"]
            assert final.norm() < 1e-6
            mid = traj.meta["velocities"][len(traj) // 2]
            assert np.isfinite(mid)
