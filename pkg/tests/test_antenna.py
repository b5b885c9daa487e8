"""Array geometry, steering vectors, phase-time responses, gain maps."""

import math

import numpy as np
import pytest

from jpta.antenna import (
    CORRELATION_FLOOR,
    SPEED_OF_LIGHT_M_S,
    ArrayConfig,
    FrequencyGrid,
    PhaseTimeWeights,
    axis_from_boresight_deg,
    axis_from_boresight_rad,
    beam_gain_db,
    boresight_deg_from_axis,
    jpta_response,
    pattern_map,
    steering_vector,
)


# ---------------------------------------------------------------------------
# angle conventions
# ---------------------------------------------------------------------------

def test_axis_boresight_round_trip():
    for deg in (-90.0, -30.0, 0.0, 10.0, 90.0):
        axis = axis_from_boresight_deg(deg)
        assert boresight_deg_from_axis(axis) == pytest.approx(deg, abs=1e-12)
    assert axis_from_boresight_deg(0.0) == pytest.approx(math.pi / 2.0)
    assert axis_from_boresight_rad(math.pi / 2.0) == pytest.approx(0.0)
    # boresight +90 deg maps to axis 0 (array end-fire)
    assert axis_from_boresight_deg(90.0) == pytest.approx(0.0, abs=1e-12)


# ---------------------------------------------------------------------------
# ArrayConfig / FrequencyGrid
# ---------------------------------------------------------------------------

def test_half_wavelength_spacing():
    cfg = ArrayConfig.half_wavelength(16, 28e9, 28.0)
    assert cfg.spacing_m == pytest.approx(SPEED_OF_LIGHT_M_S / 28e9 / 2.0)
    assert cfg.wavelength_m == pytest.approx(SPEED_OF_LIGHT_M_S / 28e9)
    assert cfg.num_elements == 16
    assert cfg.peak_gain_db == 28.0


@pytest.mark.parametrize("kwargs", [
    dict(num_elements=0, spacing_m=1e-3, carrier_hz=1e9),
    dict(num_elements=4, spacing_m=0.0, carrier_hz=1e9),
    dict(num_elements=4, spacing_m=1e-3, carrier_hz=0.0),
])
def test_array_config_validation(kwargs):
    with pytest.raises(ValueError):
        ArrayConfig(**kwargs)


def test_frequency_grid_layout(grid264):
    sc = grid264.subcarrier_freqs()
    assert sc.size == 264 * 12 == grid264.num_subcarriers
    assert np.all(np.diff(sc) > 0.0)
    np.testing.assert_allclose(np.diff(sc), 120e3, rtol=1e-12)
    # symmetric about the center frequency
    assert np.mean(sc) == pytest.approx(28e9, rel=1e-15)
    assert sc[0] == pytest.approx(28e9 - (3168 / 2 - 0.5) * 120e3, rel=1e-15)

    rb = grid264.rb_center_freqs()
    assert rb.size == 264
    assert np.all(np.diff(rb) > 0.0)
    assert rb[0] == pytest.approx(28e9 - (3168 / 2 - 6) * 120e3, rel=1e-15)
    # RB center is the mean of its 12 subcarriers
    np.testing.assert_allclose(rb, sc.reshape(264, 12).mean(axis=1), rtol=1e-12)
    assert grid264.rb_bandwidth_hz == pytest.approx(1.44e6)


def test_frequency_grid_occupancy_check():
    with pytest.raises(ValueError, match="occupied bandwidth"):
        FrequencyGrid(28e9, 400e6, 120e3, 278)  # 278*12*120e3 > 400 MHz
    # 277 RBs occupy 398.88 MHz and fit
    FrequencyGrid(28e9, 400e6, 120e3, 277)


@pytest.mark.parametrize("kwargs", [
    dict(center_hz=0.0, bandwidth_hz=400e6, scs_hz=120e3, num_rbs=1),
    dict(center_hz=28e9, bandwidth_hz=0.0, scs_hz=120e3, num_rbs=1),
    dict(center_hz=28e9, bandwidth_hz=400e6, scs_hz=0.0, num_rbs=1),
    dict(center_hz=28e9, bandwidth_hz=400e6, scs_hz=120e3, num_rbs=0),
])
def test_frequency_grid_validation(kwargs):
    with pytest.raises(ValueError):
        FrequencyGrid(**kwargs)


# ---------------------------------------------------------------------------
# PhaseTimeWeights
# ---------------------------------------------------------------------------

def test_weights_wrap_and_store():
    w = PhaseTimeWeights(delays_s=np.array([0.0, 2.5e-9]),
                         phases_rad=np.array([-math.pi, 3.0 * math.pi]),
                         delay_step_s=2.5e-9)
    assert w.num_elements == 2
    # phases wrapped into [0, 2*pi)
    np.testing.assert_allclose(w.phases_rad, [math.pi, math.pi], rtol=1e-12)
    assert np.all(w.phases_rad >= 0.0) and np.all(w.phases_rad < 2 * math.pi)


@pytest.mark.parametrize("delays,phases,step", [
    (np.array([[0.0]]), np.array([0.0]), 0.0),          # not 1-D
    (np.array([0.0, 1e-9]), np.array([0.0]), 0.0),      # length mismatch
    (np.array([]), np.array([]), 0.0),                  # empty
    (np.array([-1e-9]), np.array([0.0]), 0.0),          # negative delay
    (np.array([np.nan]), np.array([0.0]), 0.0),         # non-finite
    (np.array([0.0]), np.array([np.inf]), 0.0),         # non-finite phase
    (np.array([1e-9]), np.array([0.0]), -1.0),          # negative step
    (np.array([1.3e-9]), np.array([0.0]), 2.5e-9),      # off the grid
])
def test_weights_validation(delays, phases, step):
    with pytest.raises(ValueError):
        PhaseTimeWeights(delays_s=delays, phases_rad=phases, delay_step_s=step)


def test_weights_on_grid_accepted():
    w = PhaseTimeWeights(delays_s=np.array([0.0, 2.5e-9, 5.0e-9]),
                         phases_rad=np.zeros(3), delay_step_s=2.5e-9)
    assert w.delay_step_s == 2.5e-9


# ---------------------------------------------------------------------------
# steering_vector / jpta_response
# ---------------------------------------------------------------------------

def test_steering_two_element_boresight_vs_endfire():
    cfg = ArrayConfig.half_wavelength(2, 1e9, 0.0)
    # axis pi/2 (boresight): zero inter-element phase
    v = steering_vector(cfg, math.pi / 2.0, 1e9)
    np.testing.assert_allclose(v, np.full(2, 1 / math.sqrt(2)), rtol=1e-12)
    # axis 0 (end-fire): half-wavelength spacing gives a pi phase step
    v = steering_vector(cfg, 0.0, 1e9)
    np.testing.assert_allclose(v[0], 1 / math.sqrt(2), rtol=1e-12)
    np.testing.assert_allclose(v[1], -1 / math.sqrt(2), rtol=1e-12)


def test_steering_slope_formula():
    cfg = ArrayConfig(num_elements=4, spacing_m=3e-3, carrier_hz=20e9)
    angle, freq = 1.0, 17.3e9
    v = steering_vector(cfg, angle, freq)
    slope = 2 * math.pi * 3e-3 * freq * math.cos(angle) / SPEED_OF_LIGHT_M_S
    expect = np.exp(1j * slope * np.arange(4)) / 2.0
    np.testing.assert_allclose(v, expect, rtol=1e-12)


def test_steering_validation():
    cfg = ArrayConfig.half_wavelength(4, 1e9)
    with pytest.raises(ValueError, match="angle_rad"):
        steering_vector(cfg, -0.1, 1e9)
    with pytest.raises(ValueError, match="angle_rad"):
        steering_vector(cfg, math.pi + 0.1, 1e9)
    with pytest.raises(ValueError, match="freq_hz"):
        steering_vector(cfg, 1.0, 0.0)


def test_response_delay_phase():
    cfg = ArrayConfig.half_wavelength(2, 1e9, 0.0)
    w = PhaseTimeWeights(delays_s=np.array([0.0, 1e-9]),
                         phases_rad=np.zeros(2))
    # 1 ns delay at 500 MHz adds a pi phase
    v = jpta_response(cfg, w, 500e6)
    np.testing.assert_allclose(v[0], 1 / math.sqrt(2), rtol=1e-12)
    np.testing.assert_allclose(v[1], -1 / math.sqrt(2), rtol=1e-12)


def test_response_validation():
    cfg = ArrayConfig.half_wavelength(4, 1e9)
    w = PhaseTimeWeights(delays_s=np.zeros(3), phases_rad=np.zeros(3))
    with pytest.raises(ValueError, match="num_elements"):
        jpta_response(cfg, w, 1e9)
    w4 = PhaseTimeWeights(delays_s=np.zeros(4), phases_rad=np.zeros(4))
    with pytest.raises(ValueError, match="freq_hz"):
        jpta_response(cfg, w4, -1.0)


def test_response_frequency_flat_without_delays():
    rng = np.random.default_rng(7)
    cfg = ArrayConfig.half_wavelength(8, 28e9)
    w = PhaseTimeWeights(delays_s=np.zeros(8),
                         phases_rad=rng.uniform(0, 2 * math.pi, 8))
    a = jpta_response(cfg, w, 27.8e9)
    b = jpta_response(cfg, w, 28.2e9)
    np.testing.assert_array_equal(a, b)


# ---------------------------------------------------------------------------
# beam_gain_db / pattern_map
# ---------------------------------------------------------------------------

def test_matched_beam_hits_peak(array16):
    angle = axis_from_boresight_deg(17.0)
    slope = 2 * math.pi * array16.spacing_m * array16.carrier_hz \
        * math.cos(angle) / SPEED_OF_LIGHT_M_S
    w = PhaseTimeWeights(delays_s=np.zeros(16),
                         phases_rad=slope * np.arange(16))
    assert beam_gain_db(array16, w, angle, 28e9) == pytest.approx(28.0,
                                                                  abs=1e-9)


def test_gain_never_exceeds_peak_and_is_floored(array16):
    rng = np.random.default_rng(11)
    grid = FrequencyGrid(28e9, 400e6, 120e3, 24)
    w = PhaseTimeWeights(delays_s=rng.uniform(0, 20e-9, 16),
                         phases_rad=rng.uniform(0, 2 * math.pi, 16))
    angles = np.linspace(0.1, math.pi - 0.1, 181)
    gains = pattern_map(array16, w, angles, grid)
    assert np.all(gains <= 28.0 + 1e-9)
    assert np.all(gains >= 28.0 + 20 * math.log10(CORRELATION_FLOOR) - 1e-9)


def test_pattern_map_matches_beam_gain(array16):
    rng = np.random.default_rng(3)
    grid = FrequencyGrid(28e9, 400e6, 120e3, 12)
    w = PhaseTimeWeights(delays_s=rng.uniform(0, 10e-9, 16),
                         phases_rad=rng.uniform(0, 2 * math.pi, 16))
    angles = np.sort(rng.uniform(0.2, math.pi - 0.2, 9))
    gains = pattern_map(array16, w, angles, grid)
    freqs = grid.rb_center_freqs()
    for i in (0, 4, 8):
        for r in (0, 5, 11):
            ref = beam_gain_db(array16, w, float(angles[i]), float(freqs[r]))
            assert gains[i, r] == pytest.approx(ref, abs=1e-9)


def test_pattern_map_validation(array16, grid264):
    w = PhaseTimeWeights(delays_s=np.zeros(16), phases_rad=np.zeros(16))
    with pytest.raises(ValueError, match="strictly increasing"):
        pattern_map(array16, w, np.array([1.0, 1.0]), grid264)
    with pytest.raises(ValueError, match="non-empty"):
        pattern_map(array16, w, np.array([]), grid264)
    with pytest.raises(ValueError, match="angle_rad"):
        pattern_map(array16, w, np.array([-0.5, 1.0]), grid264)
    w8 = PhaseTimeWeights(delays_s=np.zeros(8), phases_rad=np.zeros(8))
    with pytest.raises(ValueError, match="num_elements"):
        pattern_map(array16, w8, np.array([1.0, 2.0]), grid264)


def test_global_phase_invariance(array16):
    rng = np.random.default_rng(5)
    grid = FrequencyGrid(28e9, 400e6, 120e3, 12)
    delays = rng.uniform(0, 10e-9, 16)
    phases = rng.uniform(0, 2 * math.pi, 16)
    angles = np.linspace(0.3, 2.8, 21)
    base = pattern_map(array16, PhaseTimeWeights(delays, phases), angles, grid)
    for shift in (0.7, math.pi, 5.1):
        shifted = pattern_map(
            array16, PhaseTimeWeights(delays, phases + shift), angles, grid)
        np.testing.assert_allclose(shifted, base, atol=1e-9)
