"""Blazed-grating transmission under a Gaussian illumination spot.

The grating is modeled as an ideal thin sawtooth phase profile with
phase depth 2*pi*blaze_wavelength/wavelength.  That is the simplest
scalar model that concentrates all power into the first diffraction
order at the blaze wavelength and leaves a residual zeroth order away
from it; manufactured groove imperfections are out of scope.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateInputError, ParameterError, ResolutionError
from .lattice import TWO_PI, SpatialGrid


@dataclass(frozen=True)
class GratingSpec:
    """Sawtooth phase grating: period and blaze wavelength in um.

    phase_origin sets the lateral registration of the sawtooth.  Far
    field magnitudes are insensitive to it (a pure phase ramp in k),
    but near-field inspection is not, so it stays exposed.
    """

    period: float
    blaze_wavelength: float
    phase_origin: float = 0.0

    def __post_init__(self):
        if not (self.period > 0.0):
            raise ParameterError(f"grating period must be positive, got {self.period!r}")
        if not (self.blaze_wavelength > 0.0):
            raise ParameterError(
                f"blaze wavelength must be positive, got {self.blaze_wavelength!r}")


@dataclass(frozen=True)
class Illumination:
    """Gaussian spot on the grating.

    spot_diameter is the 1/e^2 intensity full width; the amplitude
    envelope is exp(-x**2/w0**2) with w0 = spot_diameter/2.  mode
    records which plane of the pair source is imaged onto the grating
    ("near" or "far") and selects the sign of the correlation factor
    downstream.
    """

    wavelength: float
    spot_diameter: float
    mode: str = "near"

    def __post_init__(self):
        if not (self.wavelength > 0.0):
            raise ParameterError(f"wavelength must be positive, got {self.wavelength!r}")
        if not (self.spot_diameter > 0.0):
            raise ParameterError(f"spot diameter must be positive, got {self.spot_diameter!r}")
        if self.mode not in ("near", "far"):
            raise ParameterError(f"illumination mode must be 'near' or 'far', got {self.mode!r}")


def blaze_phase(x, spec: GratingSpec, wavelength: float):
    """Sawtooth phase in rad: 2*pi*(blaze_wavelength/wavelength)*frac((x - x0)/d).

    frac maps into [0, 1), so the phase is exactly periodic with the
    grating period and zero at the phase origin.
    """
    if not (wavelength > 0.0):
        raise ParameterError(f"wavelength must be positive, got {wavelength!r}")
    frac = np.mod((np.asarray(x, dtype=float) - spec.phase_origin) / spec.period, 1.0)
    return TWO_PI * (spec.blaze_wavelength / wavelength) * frac


def transmission(grid: SpatialGrid, spec: GratingSpec, illum: Illumination) -> np.ndarray:
    """Single-photon transmission amplitude A on the grid, unit square sum.

    A(x_j) = exp(-x_j**2/w0**2) * exp(i*blaze_phase(x_j)), normalized so
    that sum(|A|**2)*dx = 1.  The grid must resolve the grating:
    dx <= period/4.
    """
    if grid.dx > spec.period / 4.0:
        raise ResolutionError(
            f"grid spacing {grid.dx:.6g} um under-resolves the {spec.period:.6g} um "
            f"period; need dx <= period/4")
    w0 = illum.spot_diameter / 2.0
    envelope = np.exp(-((grid.x / w0) ** 2))
    amp = envelope * np.exp(1j * blaze_phase(grid.x, spec, illum.wavelength))
    norm_sq = np.sum(np.abs(amp) ** 2) * grid.dx
    if norm_sq == 0.0:
        raise DegenerateInputError("illumination envelope vanished everywhere on the grid")
    amp /= np.sqrt(norm_sq)
    amp.setflags(write=False)
    return amp


def order_efficiency(m: int, wavelength: float, blaze_wavelength: float) -> float:
    """Power fraction diffracted into order m by an ideal sawtooth grating.

    eta_m = sinc(blaze_wavelength/wavelength - m)**2 with the normalized
    sinc(u) = sin(pi*u)/(pi*u); the efficiencies over all integer orders
    sum to one.  Wavelengths enter only through their ratio, so any
    consistent unit works.
    """
    if not (wavelength > 0.0) or not (blaze_wavelength > 0.0):
        raise ParameterError("wavelengths must be positive")
    return float(np.sinc(blaze_wavelength / wavelength - m) ** 2)
