import math

import numpy as np
import pytest

import wavepressure as wp


def finite(height=0.5, current=0.0):
    return wp.WaveParameters(10.0, depth=3.0, current=current, height=height)


def test_flat_state_and_dispersion():
    p = finite(height=0.0)
    s = wp.solve(p)
    kappa = 2 * math.pi / 10.0
    c0 = math.sqrt(9.81 / kappa * math.tanh(kappa * 3.0))
    assert s.is_flat
    assert s.wave_speed == pytest.approx(c0, rel=1e-14)
    assert s.head == pytest.approx(3.0 + c0**2 / (2 * 9.81), rel=1e-14)


def test_solve_and_fields():
    s = wp.solve(finite())
    assert s.residual_norm < 1e-11
    assert s.wave_speed > wp.linear_phase_speed(s.params)
    eta0 = wp.surface(s, 0.0)
    assert wp.pressure(s, 0.0, eta0) == pytest.approx(101325.0, abs=1e-6)
    u, v = wp.velocity(s, 1.0, -1.0)
    assert u < s.wave_speed and v > 0.0
    assert wp.flux(s) == pytest.approx(s.flux, rel=1e-12)
    res = wp.residual(s)
    assert res["bernoulli_max"] < 1e-12


def test_grid_arrays():
    s = wp.solve(finite())
    g = wp.sample_grid(s, 33, 17, "half")
    assert g["p_dyn"].shape == (33, 17)
    i, j = np.unravel_index(np.argmax(g["p_dyn"]), g["p_dyn"].shape)
    assert (i, j) == (0, 16)
    i, j = np.unravel_index(np.argmin(g["p_dyn"]), g["p_dyn"].shape)
    assert (i, j) == (32, 16)


def test_verify_and_galilean_fingerprint():
    s = wp.solve(finite())
    report = wp.verify(s, nx=65, ny=33)
    assert report["satisfied"]
    assert report["extrema"]["crest_is_max"]
    shifted = wp.galilean_shift(s, 0.8)
    assert wp.verdict_fingerprint(s, 65, 33) == wp.verdict_fingerprint(shifted, 65, 33)


def test_json_round_trip():
    s = wp.solve(finite(current=0.4))
    back = wp.FlowState.from_json(s.to_json())
    assert back.stream_coeffs == s.stream_coeffs
    assert wp.dynamic_pressure(back, 2.0, -1.0) == wp.dynamic_pressure(s, 2.0, -1.0)


def test_errors_carry_kind():
    with pytest.raises(wp.WaveError) as info:
        wp.WaveParameters(10.0, current=0.5)
    assert info.value.kind == "DeepWithCurrent"
    with pytest.raises(wp.WaveError):
        wp.solve(finite(height=2.0), wp.SolverSettings(continuation_steps=1))


def test_sweep_speeds_increase():
    states = wp.continuation_sweep(finite(height=0.0), [0.1, 0.3, 0.5])
    speeds = [s.wave_speed for s in states]
    assert speeds == sorted(speeds)
