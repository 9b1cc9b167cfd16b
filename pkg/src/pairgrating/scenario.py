"""Scenario configuration and the forward chain from config to rate profiles.

A scenario bundles every knob of one simulated experiment.  The
defaults reproduce the reference setup used throughout: 780 nm photons,
25 um grating period blazed for 500 nm, 29 um spot imaged from the pair
source (near mode), 10 mrad detector resolution, 512 samples over a
600 um window.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .biphoton import CorrelationModel, two_photon_amplitude
from .errors import ConfigError
from .lattice import SpatialGrid, make_grid
from .optics import GratingSpec, Illumination, transmission
from .propagation import (RateMap, RateProfile, blur, coincidence_map,
                          diagonal_profile, singles_profile, to_far_field)

_FLOAT_KEYS = (
    "wavelength_nm",
    "grating_period_um",
    "blaze_wavelength_nm",
    "spot_diameter_um",
    "sigma_corr_um",
    "resolution_mrad",
    "detector_separation_mrad",
    "angle_offset_mrad",
    "window_um",
)
_INT_KEYS = ("grid_n",)
_STR_KEYS = ("illumination", "output_prefix")
_ALL_KEYS = _FLOAT_KEYS + _INT_KEYS + _STR_KEYS


@dataclass(frozen=True)
class ScenarioConfig:
    """Full forward-model configuration plus the CLI output prefix."""

    wavelength_nm: float = 780.0
    grating_period_um: float = 25.0
    blaze_wavelength_nm: float = 500.0
    spot_diameter_um: float = 29.0
    sigma_corr_um: float = 9.0
    illumination: str = "near"
    resolution_mrad: float = 10.0
    detector_separation_mrad: float = 0.0
    angle_offset_mrad: float = 0.0
    grid_n: int = 512
    window_um: float = 600.0
    output_prefix: str = "out"

    def __post_init__(self):
        for name in ("wavelength_nm", "grating_period_um", "blaze_wavelength_nm",
                     "spot_diameter_um", "sigma_corr_um", "window_um"):
            value = getattr(self, name)
            if not np.isfinite(value) or value <= 0.0:
                raise ConfigError(f"{name} must be positive, got {value!r}")
        for name in ("resolution_mrad",):
            value = getattr(self, name)
            if not np.isfinite(value) or value < 0.0:
                raise ConfigError(f"{name} must be nonnegative, got {value!r}")
        for name in ("detector_separation_mrad", "angle_offset_mrad"):
            if not np.isfinite(getattr(self, name)):
                raise ConfigError(f"{name} must be finite")
        if self.illumination not in ("near", "far"):
            raise ConfigError(
                f"illumination must be 'near' or 'far', got {self.illumination!r}")
        if self.grid_n < 4 or self.grid_n % 2 != 0:
            raise ConfigError(f"grid_n must be even and >= 4, got {self.grid_n}")
        if self.window_um / self.grid_n > self.grating_period_um / 4.0:
            raise ConfigError(
                f"grid too coarse for the grating: window_um/grid_n = "
                f"{self.window_um / self.grid_n:.6g} um exceeds period/4 = "
                f"{self.grating_period_um / 4.0:.6g} um")

    @property
    def wavelength_um(self) -> float:
        return self.wavelength_nm * 1e-3

    @property
    def blaze_wavelength_um(self) -> float:
        return self.blaze_wavelength_nm * 1e-3


def parse_config(path) -> ScenarioConfig:
    """Parse a key=value config file; '#' starts a comment.

    Unspecified keys take the documented defaults.  Unknown keys,
    non-numeric values, and invariant violations raise ConfigError
    naming the key.
    """
    p = Path(path)
    if not p.is_file():
        raise ConfigError(f"config file not found: {path}")
    values: dict = {}
    for line_no, raw in enumerate(p.read_text(encoding="utf-8").splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {line_no}: expected key=value, got {raw!r}")
        key, _, text = line.partition("=")
        key = key.strip()
        text = text.strip()
        if key not in _ALL_KEYS:
            raise ConfigError(f"line {line_no}: unknown key {key!r}")
        if key in _STR_KEYS:
            values[key] = text
        elif key in _INT_KEYS:
            try:
                values[key] = int(text)
            except ValueError:
                raise ConfigError(f"line {line_no}: {key} must be an integer, got {text!r}") from None
        else:
            try:
                values[key] = float(text)
            except ValueError:
                raise ConfigError(f"line {line_no}: {key} must be a number, got {text!r}") from None
    return ScenarioConfig(**values)


def grid_for(config: ScenarioConfig) -> SpatialGrid:
    return make_grid(config.grid_n, config.window_um)


def transmission_for(config: ScenarioConfig, grid: SpatialGrid | None = None) -> np.ndarray:
    """Single-photon amplitude for the configured grating and spot."""
    if grid is None:
        grid = grid_for(config)
    spec = GratingSpec(period=config.grating_period_um,
                       blaze_wavelength=config.blaze_wavelength_um)
    illum = Illumination(wavelength=config.wavelength_um,
                         spot_diameter=config.spot_diameter_um,
                         mode=config.illumination)
    return transmission(grid, spec, illum)


def rate_map_for(config: ScenarioConfig, sigma_um: float | None = None) -> RateMap:
    """Run the full forward chain; sigma_um overrides the configured width."""
    grid = grid_for(config)
    amp = transmission_for(config, grid)
    model = CorrelationModel(
        sigma_corr=config.sigma_corr_um if sigma_um is None else float(sigma_um),
        mode=config.illumination)
    far = to_far_field(two_photon_amplitude(amp, model, grid))
    rmap = coincidence_map(far, config.wavelength_um)
    if config.resolution_mrad > 0.0:
        rmap = blur(rmap, config.resolution_mrad * 1e-3)
    return rmap


def profiles_for(config: ScenarioConfig,
                 sigma_um: float | None = None) -> tuple[RateProfile, RateProfile]:
    """Diagonal (at the configured detector separation) and singles profiles."""
    rmap = rate_map_for(config, sigma_um=sigma_um)
    diagonal = diagonal_profile(rmap, config.detector_separation_mrad * 1e-3)
    return diagonal, singles_profile(rmap)
