"""System simulation: share layout, scheme parity, coverage, CSV writers."""

import csv
import math

import numpy as np
import pytest

from jpta.antenna import ArrayConfig, FrequencyGrid, axis_from_boresight_deg
from jpta.codebook import DelayConstraint
from jpta.link import LinkModel, McsTable
from jpta.sysim import (
    RESULTS_CSV_HEADER,
    SCHEME_JPTA,
    SCHEME_PAA,
    SUMMARY_CSV_HEADER,
    CoverageResult,
    Deployment,
    ScenarioResult,
    coverage_distance,
    jpta_share_target,
    log_ring_grid,
    run_jpta,
    run_paa,
    throughput_sweep,
    write_results_csv,
    write_summary_csv,
)

SECTOR = (axis_from_boresight_deg(60.0), axis_from_boresight_deg(-60.0))


def _sweep(angles_deg, rings, num_rbs=264):
    dep = Deployment(ue_angles_rad=np.radians(angles_deg),
                     ring_distances_m=np.asarray(rings, dtype=float))
    cfg = ArrayConfig.half_wavelength(16, 28e9, 28.0)
    grid = FrequencyGrid(28e9, 400e6, 120e3, num_rbs)
    lm = LinkModel(carrier_hz=28e9)
    return throughput_sweep(dep, cfg, grid, lm, McsTable.default(),
                            DelayConstraint(), 16, SECTOR)


# ---------------------------------------------------------------------------
# share layout
# ---------------------------------------------------------------------------

def test_share_target_four_ue_layout():
    angles = np.radians([-30.0, -10.0, 10.0, 30.0])
    target, shares = jpta_share_target(angles, 264)
    # blocks run in descending boresight order: +30 gets the lowest RBs
    np.testing.assert_array_equal(shares[3], np.arange(0, 66))
    np.testing.assert_array_equal(shares[2], np.arange(66, 132))
    np.testing.assert_array_equal(shares[1], np.arange(132, 198))
    np.testing.assert_array_equal(shares[0], np.arange(198, 264))
    assert target.entries[0][0] == pytest.approx(
        axis_from_boresight_deg(30.0))
    assert target.entries[-1][0] == pytest.approx(
        axis_from_boresight_deg(-30.0))


def test_share_target_remainder_goes_to_last_block():
    angles = np.radians(np.linspace(-50.0, 50.0, 5))
    target, shares = jpta_share_target(angles, 264)
    sizes = sorted(s.size for s in shares)
    assert sizes == [52, 52, 52, 52, 56]
    # the last block (smallest boresight angle = UE 0) holds the remainder
    assert shares[0].size == 56


@pytest.mark.parametrize("num_ues", [1, 2, 3, 7, 16])
def test_share_target_disjoint_exhaustive(num_ues):
    angles = np.radians(np.linspace(-55.0, 55.0, num_ues))
    _, shares = jpta_share_target(angles, 264)
    merged = np.sort(np.concatenate(shares))
    np.testing.assert_array_equal(merged, np.arange(264))


# ---------------------------------------------------------------------------
# scheme parity checks
# ---------------------------------------------------------------------------

def test_single_ue_schemes_coincide():
    """One UE on an exact codebook beam center: PAA serves it with the
    matched beam at duty 1, and the subband design degenerates to the same
    frequency-flat steering, so every rate decision is identical."""
    res = _sweep([-3.75], np.geomspace(30.0, 3000.0, 10))
    for ring_paa, ring_jpta in zip(res.decisions[SCHEME_PAA],
                                   res.decisions[SCHEME_JPTA]):
        assert ring_paa[0].mcs_index == ring_jpta[0].mcs_index
        assert ring_paa[0].num_rbs == ring_jpta[0].num_rbs
        assert ring_paa[0].throughput_bps == pytest.approx(
            ring_jpta[0].throughput_bps, rel=1e-12)
    assert np.all(res.jpta_weights.delays_s == 0.0)


def test_two_ue_near_ring_duty_composition():
    """Close to the array both schemes saturate at the top MCS, so
    full-band at half duty (PAA) equals half-band at full duty (JPTA)."""
    res = _sweep([-26.25, 26.25], [30.0])
    paa = res.decisions[SCHEME_PAA][0]
    jpta = res.decisions[SCHEME_JPTA][0]
    for u in range(2):
        assert paa[u].mcs_index == 14
        assert jpta[u].mcs_index == 14
        assert paa[u].num_rbs == 264
        assert jpta[u].num_rbs == 132
        assert paa[u].throughput_bps == pytest.approx(
            jpta[u].throughput_bps, rel=1e-12)


def test_run_paa_far_ring_outage():
    dep = Deployment(ue_angles_rad=np.radians([0.0]),
                     ring_distances_m=np.array([30.0, 50000.0]))
    cfg = ArrayConfig.half_wavelength(16, 28e9, 28.0)
    grid = FrequencyGrid(28e9, 400e6, 120e3, 24)
    lm = LinkModel(carrier_hz=28e9)
    res = throughput_sweep(dep, cfg, grid, lm, McsTable.default(),
                           DelayConstraint(), 16, SECTOR)
    near, far = res.decisions[SCHEME_PAA]
    assert not near[0].outage
    assert far[0].outage and far[0].throughput_bps == 0.0
    assert res.mean_throughput_bps(SCHEME_PAA)[1] == 0.0


def test_mean_throughput_is_per_ring_ue_average():
    res = _sweep([-26.25, 26.25], [30.0, 100.0], num_rbs=24)
    means = res.mean_throughput_bps(SCHEME_JPTA)
    assert means.shape == (2,)
    for i, ring in enumerate(res.decisions[SCHEME_JPTA]):
        expect = np.mean([d.throughput_bps for d in ring])
        assert means[i] == pytest.approx(expect, rel=1e-12)


# ---------------------------------------------------------------------------
# coverage
# ---------------------------------------------------------------------------

def test_coverage_never_met():
    r = coverage_distance([100.0, 200.0], [0.1e6, 0.2e6], 1e6)
    assert r == CoverageResult(distance_m=None, censored=False)


def test_coverage_censored_at_last_ring():
    r = coverage_distance([100.0, 200.0], [2e6, 1.5e6], 1e6)
    assert r.distance_m == 200.0
    assert r.censored


def test_coverage_linear_interpolation():
    # frac = (2 - 1) / (2 - 0.5) = 2/3 of the way from 100 m to 200 m
    r = coverage_distance([100.0, 200.0], [2e6, 0.5e6], 1e6)
    assert r.distance_m == pytest.approx(500.0 / 3.0, rel=1e-12)
    assert not r.censored


def test_coverage_uses_farthest_crossing():
    r = coverage_distance([1.0, 2.0, 3.0, 4.0],
                          [2e6, 0.5e6, 1.5e6, 0.2e6], 1e6)
    assert r.distance_m == pytest.approx(3.0 + 0.5 / 1.3, rel=1e-12)


def test_coverage_validation():
    with pytest.raises(ValueError, match="equal-length"):
        coverage_distance([1.0, 2.0], [1e6], 1e6)
    with pytest.raises(ValueError, match="equal-length"):
        coverage_distance([], [], 1e6)
    with pytest.raises(ValueError, match="threshold_bps"):
        coverage_distance([1.0], [1e6], 0.0)


# ---------------------------------------------------------------------------
# CSV writers
# ---------------------------------------------------------------------------

def test_write_results_csv_layout(tmp_path):
    res = _sweep([-26.25, 26.25], [30.0, 100.0], num_rbs=24)
    path = tmp_path / "results.csv"
    write_results_csv(res, path)
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    assert tuple(rows[0]) == RESULTS_CSV_HEADER
    body = rows[1:]
    assert len(body) == 2 * 2 * 2  # schemes x rings x UEs
    assert [r[0] for r in body] == ["PAA"] * 4 + ["JPTA"] * 4
    # rings ascending within a scheme, UEs by index within a ring
    assert [float(r[1]) for r in body[:4]] == [30.0, 30.0, 100.0, 100.0]
    assert [int(r[2]) for r in body[:4]] == [0, 1, 0, 1]
    assert float(body[0][3]) == pytest.approx(-26.25)
    # numeric columns parse and agree with the decisions
    d = res.decisions[SCHEME_PAA][0][0]
    assert int(body[0][4]) == d.mcs_index
    assert int(body[0][5]) == d.num_rbs
    assert float(body[0][7]) == pytest.approx(d.throughput_bps, rel=1e-4)


def test_write_summary_csv_layout(tmp_path):
    res = _sweep([-26.25, 26.25], [30.0, 100.0], num_rbs=24)
    path = tmp_path / "summary.csv"
    write_summary_csv(res, path)
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    assert tuple(rows[0]) == SUMMARY_CSV_HEADER
    assert len(rows) == 1 + 2 * 2
    assert [r[0] for r in rows[1:]] == ["PAA", "PAA", "JPTA", "JPTA"]
    means = res.mean_throughput_bps(SCHEME_JPTA)
    assert float(rows[3][2]) == pytest.approx(means[0], rel=1e-4)
    assert float(rows[4][2]) == pytest.approx(means[1], rel=1e-4)


# ---------------------------------------------------------------------------
# deployment / ring grid
# ---------------------------------------------------------------------------

def test_log_ring_grid():
    g = log_ring_grid(30.0, 3000.0, 5)
    assert g[0] == pytest.approx(30.0)
    assert g[-1] == pytest.approx(3000.0)
    np.testing.assert_allclose(np.diff(np.log(g)), np.log(10.0) / 2.0,
                               atol=1e-12)
    with pytest.raises(ValueError, match="min_m"):
        log_ring_grid(0.0, 100.0, 5)
    with pytest.raises(ValueError, match="count"):
        log_ring_grid(30.0, 100.0, 1)


@pytest.mark.parametrize("angles,rings", [
    ([], [30.0]),
    ([0.0], []),
    ([2.0], [30.0]),                 # angle beyond +pi/2
    ([0.0], [30.0, 30.0]),           # not strictly increasing
    ([0.0], [-1.0]),                 # nonpositive ring
])
def test_deployment_validation(angles, rings):
    with pytest.raises(ValueError):
        Deployment(ue_angles_rad=np.asarray(angles, dtype=float),
                   ring_distances_m=np.asarray(rings, dtype=float))


def test_run_jpta_returns_weights_on_delay_grid():
    dep = Deployment(ue_angles_rad=np.radians([-30.0, 30.0]),
                     ring_distances_m=np.array([100.0]))
    cfg = ArrayConfig.half_wavelength(16, 28e9, 28.0)
    grid = FrequencyGrid(28e9, 400e6, 120e3, 264)
    lm = LinkModel(carrier_hz=28e9)
    decisions, weights = run_jpta(dep, cfg, grid, lm, McsTable.default(),
                                  DelayConstraint())
    assert len(decisions) == 1 and len(decisions[0]) == 2
    steps = weights.delays_s / 2.5e-9
    np.testing.assert_allclose(steps, np.round(steps), atol=1e-9)
    assert weights.delays_s.max() == pytest.approx(2.5e-9, rel=1e-12)
