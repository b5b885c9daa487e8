"""Uplink multi-user system simulation: swept-ring throughput and coverage.

Two schemes are compared on the same deployment:

* PAA: conventional phased-array beam sweeping. Each UE is served by the
  best frequency-flat codebook beam, may use the whole band, but only holds
  the slot a 1/N_UE fraction of the time (TDM).
* JPTA: one phase-time weight set serves all UEs at once by pointing each
  RB subband at its UE (FDM). Each UE keeps every slot but only its RB
  share; shares are equal contiguous blocks in ascending boresight-angle
  order, remainder RBs to the last share.

The simulation is deterministic: no fading, no retransmissions, rate
selection is an exhaustive search.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass

import numpy as np

from .antenna import (
    ArrayConfig,
    FrequencyGrid,
    PhaseTimeWeights,
    axis_from_boresight_rad,
    beam_gain_db,
    pattern_map,
)
from .codebook import DelayConstraint, Type1Target, design_type1, paa_codebook
from .link import LinkModel, McsTable, RateDecision, select_rate

SCHEME_PAA = "PAA"
SCHEME_JPTA = "JPTA"

RESULTS_CSV_HEADER = ("scheme", "distance_m", "ue_index", "ue_angle_deg",
                      "mcs", "num_rbs", "eff_snr_db", "throughput_bps")
SUMMARY_CSV_HEADER = ("scheme", "distance_m", "mean_throughput_bps")
COVERAGE_CSV_HEADER = ("scheme", "threshold_bps", "coverage_m", "censored")


@dataclass(frozen=True)
class Deployment:
    """UE directions (boresight-relative radians) and evaluation rings."""

    ue_angles_rad: np.ndarray
    ring_distances_m: np.ndarray

    def __post_init__(self):
        angles = np.array(self.ue_angles_rad, dtype=np.float64)
        rings = np.array(self.ring_distances_m, dtype=np.float64)
        if angles.ndim != 1 or angles.size == 0:
            raise ValueError("ue_angles_rad must be a non-empty 1-D array")
        if np.any(np.abs(angles) > math.pi / 2.0):
            raise ValueError("ue_angles_rad must lie in [-pi/2, pi/2]")
        if rings.ndim != 1 or rings.size == 0:
            raise ValueError("ring_distances_m must be a non-empty 1-D array")
        if np.any(rings <= 0.0) or np.any(np.diff(rings) <= 0.0):
            raise ValueError("ring_distances_m must be positive and strictly "
                             "increasing")
        object.__setattr__(self, "ue_angles_rad", angles)
        object.__setattr__(self, "ring_distances_m", rings)

    @property
    def num_ues(self) -> int:
        return int(self.ue_angles_rad.size)


def log_ring_grid(min_m: float, max_m: float, count: int) -> np.ndarray:
    """Logarithmically spaced ring distances, endpoints included."""
    if not 0.0 < min_m < max_m:
        raise ValueError("need 0 < min_m < max_m")
    if count < 2:
        raise ValueError("count must be >= 2")
    return np.geomspace(min_m, max_m, count)


def jpta_share_target(ue_angles_rad, num_rbs: int):
    """Equal-share subband target for a UE set.

    Returns (Type1Target, shares) where shares[u] is the RB index array of
    UE u in deployment order. Shares are contiguous blocks starting at RB 0
    in ascending axis-angle order (descending boresight angle): the lowest
    frequencies serve the largest boresight-relative angle. This orientation
    makes the fitted delay progression a nonnegative ramp and keeps the
    largest quantized delay minimal; the remainder RBs go to the last block.
    """
    angles = np.asarray(ue_angles_rad, dtype=np.float64)
    order = np.argsort(-angles, kind="stable")
    axis_sorted = [axis_from_boresight_rad(a) for a in angles[order]]
    target = Type1Target.equal_shares(axis_sorted, num_rbs)
    shares = [None] * angles.size
    for pos, ue in enumerate(order):
        start, stop = target.entries[pos][1]
        shares[ue] = np.arange(start, stop, dtype=np.int64)
    return target, shares


def _ue_gain_rows(cfg: ArrayConfig, weights: PhaseTimeWeights,
                  dep: Deployment, grid: FrequencyGrid) -> np.ndarray:
    """Per-UE beam gain across all RB centers, shape (num_ues, num_rbs)."""
    rows = np.empty((dep.num_ues, grid.num_rbs))
    for u, bore in enumerate(dep.ue_angles_rad):
        axis = axis_from_boresight_rad(float(bore))
        rows[u] = pattern_map(cfg, weights, np.array([axis]), grid)[0]
    return rows


def run_paa(dep: Deployment, cfg: ArrayConfig, grid: FrequencyGrid,
            lm: LinkModel, mcs_table: McsTable, beams,
            eesm_betas=None) -> list:
    """Beam-sweeping benchmark: whole band, slot duty 1/N_UE per UE.

    Each UE is served by the codebook beam with the highest gain toward it
    at the carrier. Returns decisions[ring][ue].
    """
    duty = 1.0 / dep.num_ues
    all_rbs = np.arange(grid.num_rbs, dtype=np.int64)
    gain_rows = np.empty((dep.num_ues, grid.num_rbs))
    for u, bore in enumerate(dep.ue_angles_rad):
        axis = axis_from_boresight_rad(float(bore))
        # serving beam: best carrier-frequency gain, first beam wins ties
        carrier_gains = [beam_gain_db(cfg, beam, axis, cfg.carrier_hz)
                         for beam in beams]
        serving = beams[int(np.argmax(carrier_gains))]
        gain_rows[u] = pattern_map(cfg, serving, np.array([axis]), grid)[0]
    decisions = []
    for dist in dep.ring_distances_m:
        ring = [select_rate(lm, float(dist), gain_rows[u], all_rbs, mcs_table,
                            grid.scs_hz, duty, eesm_betas)
                for u in range(dep.num_ues)]
        decisions.append(ring)
    return decisions


def run_jpta(dep: Deployment, cfg: ArrayConfig, grid: FrequencyGrid,
             lm: LinkModel, mcs_table: McsTable,
             constraint: DelayConstraint, eesm_betas=None,
             per_subcarrier: bool = False):
    """FDM scheme: subband-steered weights, full duty, per-UE RB share.

    Returns (decisions[ring][ue], designed weights). RB shares are disjoint
    by construction, so UEs do not interfere.
    """
    target, shares = jpta_share_target(dep.ue_angles_rad, grid.num_rbs)
    weights, _ = design_type1(cfg, target, grid, constraint, per_subcarrier)
    # conservation: the disjoint shares exhaust the band exactly
    assert sum(s.size for s in shares) == grid.num_rbs
    gain_rows = _ue_gain_rows(cfg, weights, dep, grid)
    decisions = []
    for dist in dep.ring_distances_m:
        ring = [select_rate(lm, float(dist), gain_rows[u], shares[u],
                            mcs_table, grid.scs_hz, 1.0, eesm_betas)
                for u in range(dep.num_ues)]
        decisions.append(ring)
    return decisions, weights


@dataclass
class ScenarioResult:
    """Sweep output: per-scheme, per-ring, per-UE rate decisions."""

    distances_m: np.ndarray
    ue_angles_rad: np.ndarray
    decisions: dict
    jpta_weights: PhaseTimeWeights = None

    def mean_throughput_bps(self, scheme: str) -> np.ndarray:
        rings = self.decisions[scheme]
        return np.array([np.mean([d.throughput_bps for d in ring])
                         for ring in rings])


def throughput_sweep(dep: Deployment, cfg: ArrayConfig, grid: FrequencyGrid,
                     lm: LinkModel, mcs_table: McsTable,
                     constraint: DelayConstraint, num_paa_beams: int,
                     paa_sector_rad, eesm_betas=None) -> ScenarioResult:
    """Run both schemes over every ring of the deployment.

    Per slot both schemes spend the same RB-seconds: PAA gives each of the
    N_UE users the whole band for a 1/N_UE duty, JPTA gives each user a
    1/N_UE band share at full duty.
    """
    beams = paa_codebook(cfg, num_paa_beams, paa_sector_rad)
    paa = run_paa(dep, cfg, grid, lm, mcs_table, beams, eesm_betas)
    jpta, weights = run_jpta(dep, cfg, grid, lm, mcs_table, constraint,
                             eesm_betas)
    return ScenarioResult(distances_m=dep.ring_distances_m.copy(),
                          ue_angles_rad=dep.ue_angles_rad.copy(),
                          decisions={SCHEME_PAA: paa, SCHEME_JPTA: jpta},
                          jpta_weights=weights)


@dataclass(frozen=True)
class CoverageResult:
    """Largest distance meeting a throughput threshold.

    distance_m is None when the threshold is never met. censored is True
    when the curve never drops below the threshold on the evaluated rings,
    so the true coverage lies beyond the last ring.
    """

    distance_m: float
    censored: bool


def coverage_distance(distances_m, mean_bps, threshold_bps: float) -> CoverageResult:
    """Coverage from a sampled mean-throughput curve.

    Uses the farthest ring still meeting the threshold and linearly
    interpolates the crossing toward the next ring.
    """
    dists = np.asarray(distances_m, dtype=np.float64)
    vals = np.asarray(mean_bps, dtype=np.float64)
    if dists.size != vals.size or dists.size == 0:
        raise ValueError("distances and throughputs must be equal-length, "
                         "non-empty")
    if not threshold_bps > 0.0:
        raise ValueError("threshold_bps must be positive")
    meets = np.nonzero(vals >= threshold_bps)[0]
    if meets.size == 0:
        return CoverageResult(distance_m=None, censored=False)
    i = int(meets[-1])
    if i == dists.size - 1:
        return CoverageResult(distance_m=float(dists[-1]), censored=True)
    d0, d1 = dists[i], dists[i + 1]
    v0, v1 = vals[i], vals[i + 1]
    frac = (v0 - threshold_bps) / (v0 - v1)
    return CoverageResult(distance_m=float(d0 + frac * (d1 - d0)),
                          censored=False)


def _fmt(value) -> str:
    return "%.6g" % value


def write_results_csv(result: ScenarioResult, path) -> None:
    """Per-UE decisions, schemes PAA then JPTA, rings ascending, UEs by
    index. Floats carry six significant digits."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(RESULTS_CSV_HEADER)
        for scheme in (SCHEME_PAA, SCHEME_JPTA):
            rings = result.decisions[scheme]
            for i, dist in enumerate(result.distances_m):
                for u in range(result.ue_angles_rad.size):
                    d = rings[i][u]
                    writer.writerow([
                        scheme, _fmt(dist), u,
                        _fmt(math.degrees(result.ue_angles_rad[u])),
                        d.mcs_index, d.num_rbs, _fmt(d.effective_snr_db),
                        _fmt(d.throughput_bps),
                    ])


def write_summary_csv(result: ScenarioResult, path) -> None:
    """Per-ring mean throughput, schemes PAA then JPTA, rings ascending."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(SUMMARY_CSV_HEADER)
        for scheme in (SCHEME_PAA, SCHEME_JPTA):
            means = result.mean_throughput_bps(scheme)
            for dist, mean in zip(result.distances_m, means):
                writer.writerow([scheme, _fmt(dist), _fmt(mean)])
