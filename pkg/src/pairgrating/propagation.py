"""Far-field transform of the joint amplitude and rate extraction.

Observation is deep in the Fraunhofer regime, so propagation is a pure
centered unitary Fourier transform (no quadratic phase; only magnitudes
are consumed downstream).  Detector resolution is a top-hat angular
window, the response of a slit aperture, and is applied to the 2D rate
map before any cut because each detector integrates independently over
its own acceptance.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .biphoton import BiphotonAmplitude
from .errors import BinSnapWarning, ParameterError
from .lattice import TWO_PI, SpatialGrid, angles_of


def fourier_1d(values, grid: SpatialGrid) -> np.ndarray:
    """Unitary centered 1D transform: out_m = dx/sqrt(2*pi) * sum_j v_j exp(-i*k_m*x_j).

    Centered ordering in and out; Parseval holds as
    sum(|out|**2)*dk = sum(|v|**2)*dx.
    """
    v = np.asarray(values)
    if v.shape != (grid.n,):
        raise ParameterError(f"values must have shape ({grid.n},), got {v.shape}")
    return np.fft.fftshift(np.fft.fft(np.fft.ifftshift(v))) * (grid.dx / np.sqrt(TWO_PI))


def to_far_field(amp: BiphotonAmplitude) -> BiphotonAmplitude:
    """Transform both coordinates of a near-plane amplitude.

    The transform is unitary (factor dx**2/(2*pi) on a centered FFT), so
    sum(|out|**2)*dk**2 equals the near-plane square sum; exchange
    symmetry is preserved.
    """
    if amp.plane != "near":
        raise ParameterError(f"far-field transform expects a near-plane amplitude, got {amp.plane!r}")
    ft = np.fft.fftshift(np.fft.fft2(np.fft.ifftshift(amp.values)))
    ft *= amp.grid.dx ** 2 / TWO_PI
    ft.setflags(write=False)
    return BiphotonAmplitude(grid=amp.grid, values=ft, plane="far")


@dataclass(frozen=True)
class RateMap:
    """Coincidence rate over detection-angle pairs, symmetric and nonnegative.

    blur_applied records the accumulated top-hat width in rad (0 if none).
    """

    grid: SpatialGrid
    angles: np.ndarray
    values: np.ndarray
    blur_applied: float = 0.0


@dataclass(frozen=True)
class RateProfile:
    """1D rate versus detection angle; kind is "coincidence-diagonal" or "singles"."""

    angles: np.ndarray
    values: np.ndarray
    kind: str


def coincidence_map(amp: BiphotonAmplitude, wavelength: float) -> RateMap:
    """Two-photon count rate |F(k1, k2)|**2 labeled by detection angles.

    The wavelength fixes the angle lattice theta = k*wavelength/(2*pi)
    used by cuts and blurring.
    """
    if amp.plane != "far":
        raise ParameterError(f"coincidence map expects a far-plane amplitude, got {amp.plane!r}")
    values = np.abs(amp.values) ** 2
    values.setflags(write=False)
    return RateMap(grid=amp.grid, angles=angles_of(amp.grid, wavelength), values=values)


def diagonal_profile(rate_map: RateMap, separation: float = 0.0) -> RateProfile:
    """Cut with both detectors co-scanned at a fixed angular separation.

    separation snaps to the nearest angle bin (a BinSnapWarning is
    emitted when it is not already a multiple); 0 gives the exact
    diagonal.  The profile is labeled by the first detector's angle, so
    a shift of s bins drops |s| edge entries.
    """
    n = rate_map.grid.n
    bin_width = rate_map.angles[1] - rate_map.angles[0]
    shift_exact = separation / bin_width
    shift = int(round(shift_exact))
    if abs(shift_exact - shift) > 1e-9:
        warnings.warn(
            f"detector separation {separation:.6g} rad is not a multiple of the "
            f"{bin_width:.6g} rad angular bin; snapped to {shift} bins",
            BinSnapWarning, stacklevel=2)
    if abs(shift) >= n:
        raise ParameterError(
            f"detector separation {separation:.6g} rad exceeds the angular window")
    values = np.diagonal(rate_map.values, offset=shift).copy()
    angles = rate_map.angles[: n - shift] if shift >= 0 else rate_map.angles[-shift:]
    return RateProfile(angles=angles.copy(), values=values, kind="coincidence-diagonal")


def singles_profile(rate_map: RateMap) -> RateProfile:
    """Single-detector rate: marginal over the undetected photon, sum times dk."""
    values = rate_map.values.sum(axis=1) * rate_map.grid.dk
    return RateProfile(angles=rate_map.angles.copy(), values=values, kind="singles")


def _box_kernel(width: float, bin_width: float) -> np.ndarray:
    """Unit-sum top-hat over [-width/2, width/2] with fractional end bins.

    Symmetric for any width, so blurring never shifts peaks; widths at or
    below one bin reduce to the identity kernel.
    """
    half = width / (2.0 * bin_width)
    if half <= 0.5:
        return np.array([1.0])
    reach = int(np.ceil(half - 0.5))
    offsets = np.arange(-reach, reach + 1)
    weights = np.minimum(offsets + 0.5, half) - np.maximum(offsets - 0.5, -half)
    weights = np.clip(weights, 0.0, None)
    return weights / weights.sum()


def _smooth_axis(values: np.ndarray, kernel: np.ndarray, axis: int) -> np.ndarray:
    # Circular convolution: the discrete far field is periodic, and wrapping
    # conserves total mass exactly for a unit-sum kernel.
    if kernel.size == 1:
        return values.copy()
    reach = kernel.size // 2
    out = np.zeros_like(values)
    for i, w in enumerate(kernel):
        out += w * np.roll(values, i - reach, axis=axis)
    return out


def blur(obj, width: float):
    """Convolve with a unit-sum top-hat of full angular width `width` rad.

    RateMap inputs are smoothed separably along both detector axes (each
    physical detector integrates independently); RateProfile inputs along
    their single axis.  Total mass is conserved and contrast can only
    decrease.  Returns the same type as the input.
    """
    if not (width >= 0.0) or not np.isfinite(width):
        raise ParameterError(f"blur width must be a nonnegative finite angle, got {width!r}")
    if isinstance(obj, RateMap):
        bin_width = obj.angles[1] - obj.angles[0]
        if width > (obj.angles[-1] - obj.angles[0]) / 2.0:
            raise ParameterError(
                f"blur width {width:.6g} rad exceeds half the angular window")
        kernel = _box_kernel(width, bin_width)
        values = _smooth_axis(obj.values, kernel, axis=0)
        values = _smooth_axis(values, kernel, axis=1)
        values.setflags(write=False)
        return RateMap(grid=obj.grid, angles=obj.angles, values=values,
                       blur_applied=obj.blur_applied + width)
    if isinstance(obj, RateProfile):
        if obj.angles.size < 2:
            raise ParameterError("profile too short to blur")
        bin_width = obj.angles[1] - obj.angles[0]
        if width > (obj.angles[-1] - obj.angles[0]) / 2.0:
            raise ParameterError(
                f"blur width {width:.6g} rad exceeds half the angular window")
        kernel = _box_kernel(width, bin_width)
        values = _smooth_axis(obj.values, kernel, axis=0)
        return RateProfile(angles=obj.angles.copy(), values=values, kind=obj.kind)
    raise ParameterError(f"cannot blur a {type(obj).__name__}")
