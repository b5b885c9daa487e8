"""Run configuration: flat dotted key-value text files with Table-style
defaults.

Format, one assignment per line::

    # comment
    array.num_elements = 16
    deploy.ue_angles_deg = -30, -10, 10, 30

Unknown keys, duplicate keys, and malformed values raise ConfigError naming
the offending field. Angles in config files are boresight-relative degrees.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .antenna import ArrayConfig, FrequencyGrid, axis_from_boresight_deg
from .codebook import (
    DEFAULT_DELAY_STEP_S,
    DEFAULT_MAX_DELAY_S,
    DelayConstraint,
    RainbowSpec,
    Type1Target,
)
from .link import LinkModel, McsTable, load_eesm_betas
from .sysim import Deployment, log_ring_grid


class ConfigError(ValueError):
    """Invalid run configuration; message names the field and constraint."""


@dataclass
class RunConfig:
    """Parsed run configuration with defaults for every field."""

    # array
    array_num_elements: int = 16
    array_spacing_m: float = None  # None means half wavelength at carrier
    array_carrier_hz: float = 28e9
    array_peak_gain_db: float = 28.0
    # frequency grid
    grid_center_hz: float = None  # None means the carrier
    grid_bandwidth_hz: float = 400e6
    grid_scs_hz: float = 120e3
    grid_num_rbs: int = 264
    # link
    link_path_loss_exponent: float = 3.0
    link_ue_tx_power_dbm: float = 23.0
    link_ue_beam_gain_db: float = 0.0
    link_bs_noise_figure_db: float = 5.0
    link_mcs_margin_db: float = 2.0
    link_eesm_beta: float = 1.0
    link_mcs_table_csv: str = ""
    link_eesm_beta_csv: str = ""
    # phased-array benchmark codebook
    paa_num_beams: int = 16
    paa_sector_deg: tuple = (-60.0, 60.0)
    # delay line
    delay_step_ns: float = DEFAULT_DELAY_STEP_S * 1e9
    delay_max_ns: float = DEFAULT_MAX_DELAY_S * 1e9
    # deployment
    deploy_ue_angles_deg: tuple = (-30.0, -10.0, 10.0, 30.0)
    deploy_ring_min_m: float = 30.0
    deploy_ring_max_m: float = 1500.0
    deploy_ring_count: int = 40
    deploy_distances_m: tuple = ()  # explicit rings override the log grid
    # designers
    design_type1_angles_deg: tuple = ()  # empty means the deployment angles
    design_type1_per_subcarrier: bool = False
    design_type2_center_deg: float = 0.0
    design_type2_spread_deg: float = 110.0

    # ------------------------------------------------------------------
    # builders
    # ------------------------------------------------------------------

    def array_config(self) -> ArrayConfig:
        spacing = self.array_spacing_m
        if spacing is None:
            return ArrayConfig.half_wavelength(self.array_num_elements,
                                               self.array_carrier_hz,
                                               self.array_peak_gain_db)
        return ArrayConfig(self.array_num_elements, spacing,
                           self.array_carrier_hz, self.array_peak_gain_db)

    def frequency_grid(self) -> FrequencyGrid:
        center = self.grid_center_hz
        if center is None:
            center = self.array_carrier_hz
        return FrequencyGrid(center_hz=center,
                             bandwidth_hz=self.grid_bandwidth_hz,
                             scs_hz=self.grid_scs_hz,
                             num_rbs=self.grid_num_rbs)

    def link_model(self) -> LinkModel:
        return LinkModel(carrier_hz=self.array_carrier_hz,
                         path_loss_exponent=self.link_path_loss_exponent,
                         ue_tx_power_dbm=self.link_ue_tx_power_dbm,
                         ue_beam_gain_db=self.link_ue_beam_gain_db,
                         bs_noise_figure_db=self.link_bs_noise_figure_db)

    def delay_constraint(self) -> DelayConstraint:
        return DelayConstraint(step_s=self.delay_step_ns * 1e-9,
                               max_delay_s=self.delay_max_ns * 1e-9)

    def deployment(self) -> Deployment:
        angles = np.deg2rad(np.array(self.deploy_ue_angles_deg))
        if len(self.deploy_distances_m) > 0:
            rings = np.array(self.deploy_distances_m, dtype=np.float64)
        else:
            rings = log_ring_grid(self.deploy_ring_min_m,
                                  self.deploy_ring_max_m,
                                  self.deploy_ring_count)
        return Deployment(ue_angles_rad=angles, ring_distances_m=rings)

    def mcs_table(self) -> McsTable:
        if self.link_mcs_table_csv:
            return McsTable.from_csv(self.link_mcs_table_csv)
        return McsTable.default(self.link_mcs_margin_db)

    def eesm_betas(self, table: McsTable) -> np.ndarray:
        if self.link_eesm_beta_csv:
            return load_eesm_betas(self.link_eesm_beta_csv, len(table))
        if not self.link_eesm_beta > 0.0:
            raise ConfigError("link.eesm_beta: must be positive")
        return np.full(len(table), self.link_eesm_beta)

    def paa_sector_rad(self) -> tuple:
        lo_deg, hi_deg = self.paa_sector_deg
        # boresight degrees to axis radians flips the order
        return (axis_from_boresight_deg(hi_deg),
                axis_from_boresight_deg(lo_deg))

    def type1_target(self) -> Type1Target:
        angles_deg = self.design_type1_angles_deg or self.deploy_ue_angles_deg
        # ascending axis order (descending boresight), as jpta_share_target
        ordered = sorted(angles_deg, reverse=True)
        axis = [axis_from_boresight_deg(a) for a in ordered]
        return Type1Target.equal_shares(axis, self.grid_num_rbs)

    def rainbow_spec(self) -> RainbowSpec:
        return RainbowSpec(
            center_rad=axis_from_boresight_deg(self.design_type2_center_deg),
            spread_rad=math.radians(self.design_type2_spread_deg))


# ---------------------------------------------------------------------------
# parsing
# ---------------------------------------------------------------------------

def _parse_float(key, text):
    try:
        return float(text)
    except ValueError:
        raise ConfigError("%s: expected a number, got %r" % (key, text))


def _parse_int(key, text):
    try:
        return int(text)
    except ValueError:
        raise ConfigError("%s: expected an integer, got %r" % (key, text))


def _parse_bool(key, text):
    low = text.strip().lower()
    if low in ("1", "true", "yes", "on"):
        return True
    if low in ("0", "false", "no", "off"):
        return False
    raise ConfigError("%s: expected true/false, got %r" % (key, text))


def _parse_float_list(key, text):
    parts = [p.strip() for p in text.split(",") if p.strip()]
    if not parts:
        raise ConfigError("%s: expected a comma-separated number list" % key)
    return tuple(_parse_float(key, p) for p in parts)


def _parse_pair(key, text):
    values = _parse_float_list(key, text)
    if len(values) != 2:
        raise ConfigError("%s: expected exactly two numbers" % key)
    return values


def _parse_spacing(key, text):
    if text.strip().lower() == "auto":
        return None
    value = _parse_float(key, text)
    if not value > 0.0:
        raise ConfigError("%s: must be positive or 'auto'" % key)
    return value


def _positive(key, value):
    if not value > 0:
        raise ConfigError("%s: must be positive" % key)
    return value


_KEY_SPECS = {
    "array.num_elements": ("array_num_elements",
                           lambda k, t: _positive(k, _parse_int(k, t))),
    "array.spacing_m": ("array_spacing_m", _parse_spacing),
    "array.carrier_hz": ("array_carrier_hz",
                         lambda k, t: _positive(k, _parse_float(k, t))),
    "array.peak_gain_db": ("array_peak_gain_db", _parse_float),
    "grid.center_hz": ("grid_center_hz",
                       lambda k, t: _positive(k, _parse_float(k, t))),
    "grid.bandwidth_hz": ("grid_bandwidth_hz",
                          lambda k, t: _positive(k, _parse_float(k, t))),
    "grid.scs_hz": ("grid_scs_hz",
                    lambda k, t: _positive(k, _parse_float(k, t))),
    "grid.num_rbs": ("grid_num_rbs",
                     lambda k, t: _positive(k, _parse_int(k, t))),
    "link.path_loss_exponent": ("link_path_loss_exponent",
                                lambda k, t: _positive(k, _parse_float(k, t))),
    "link.ue_tx_power_dbm": ("link_ue_tx_power_dbm", _parse_float),
    "link.ue_beam_gain_db": ("link_ue_beam_gain_db", _parse_float),
    "link.bs_noise_figure_db": ("link_bs_noise_figure_db", _parse_float),
    "link.mcs_margin_db": ("link_mcs_margin_db", _parse_float),
    "link.eesm_beta": ("link_eesm_beta",
                       lambda k, t: _positive(k, _parse_float(k, t))),
    "link.mcs_table_csv": ("link_mcs_table_csv", lambda k, t: t.strip()),
    "link.eesm_beta_csv": ("link_eesm_beta_csv", lambda k, t: t.strip()),
    "paa.num_beams": ("paa_num_beams",
                      lambda k, t: _positive(k, _parse_int(k, t))),
    "paa.sector_deg": ("paa_sector_deg", _parse_pair),
    "delay.step_ns": ("delay_step_ns",
                      lambda k, t: _positive(k, _parse_float(k, t))),
    "delay.max_ns": ("delay_max_ns", _parse_float),
    "deploy.ue_angles_deg": ("deploy_ue_angles_deg", _parse_float_list),
    "deploy.ring_min_m": ("deploy_ring_min_m",
                          lambda k, t: _positive(k, _parse_float(k, t))),
    "deploy.ring_max_m": ("deploy_ring_max_m",
                          lambda k, t: _positive(k, _parse_float(k, t))),
    "deploy.ring_count": ("deploy_ring_count",
                          lambda k, t: _positive(k, _parse_int(k, t))),
    "deploy.distances_m": ("deploy_distances_m", _parse_float_list),
    "design.type1.angles_deg": ("design_type1_angles_deg", _parse_float_list),
    "design.type1.per_subcarrier": ("design_type1_per_subcarrier",
                                    _parse_bool),
    "design.type2.center_deg": ("design_type2_center_deg", _parse_float),
    "design.type2.spread_deg": ("design_type2_spread_deg", _parse_float),
}


def parse_config_text(text: str) -> RunConfig:
    """Parse flat key = value lines into a RunConfig."""
    cfg = RunConfig()
    seen = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError("line %d: expected 'key = value', got %r"
                              % (lineno, raw.strip()))
        key, value = line.split("=", 1)
        key = key.strip().lower()
        value = value.strip()
        if key not in _KEY_SPECS:
            raise ConfigError("line %d: unknown key %r" % (lineno, key))
        if key in seen:
            raise ConfigError("line %d: duplicate key %r" % (lineno, key))
        seen.add(key)
        attr, parser = _KEY_SPECS[key]
        setattr(cfg, attr, parser(key, value))
    _validate(cfg)
    return cfg


def load_config(path) -> RunConfig:
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise ConfigError("cannot read config file %s: %s" % (path, exc))
    return parse_config_text(text)


def _validate(cfg: RunConfig) -> None:
    for angle in cfg.deploy_ue_angles_deg:
        if not -90.0 <= angle <= 90.0:
            raise ConfigError("deploy.ue_angles_deg: angle %g outside "
                              "[-90, 90]" % angle)
    for angle in cfg.design_type1_angles_deg:
        if not -90.0 <= angle <= 90.0:
            raise ConfigError("design.type1.angles_deg: angle %g outside "
                              "[-90, 90]" % angle)
    lo, hi = cfg.paa_sector_deg
    if not (-90.0 <= lo < hi <= 90.0):
        raise ConfigError("paa.sector_deg: need -90 <= lo < hi <= 90")
    if cfg.deploy_ring_min_m >= cfg.deploy_ring_max_m:
        raise ConfigError("deploy.ring_min_m: must be below deploy.ring_max_m")
    if cfg.deploy_ring_count < 2:
        raise ConfigError("deploy.ring_count: must be >= 2")
    if len(cfg.deploy_distances_m) > 0:
        d = np.array(cfg.deploy_distances_m)
        if np.any(d <= 0.0) or np.any(np.diff(d) <= 0.0):
            raise ConfigError("deploy.distances_m: must be positive and "
                              "strictly increasing")
    if cfg.delay_max_ns < 0.0:
        raise ConfigError("delay.max_ns: must be nonnegative")
    if not -90.0 <= cfg.design_type2_center_deg <= 90.0:
        raise ConfigError("design.type2.center_deg: outside [-90, 90]")
    if cfg.design_type2_spread_deg < 0.0:
        raise ConfigError("design.type2.spread_deg: must be nonnegative")
    occupied = cfg.grid_num_rbs * 12 * cfg.grid_scs_hz
    if occupied > cfg.grid_bandwidth_hz * (1.0 + 1e-12):
        raise ConfigError("grid.num_rbs: occupied bandwidth %.6g Hz exceeds "
                          "grid.bandwidth_hz %.6g Hz"
                          % (occupied, cfg.grid_bandwidth_hz))
