import numpy as np
import pytest

from pairgrating import (CorrelationModel, GratingSpec, Illumination,
                         correlation_factor, make_grid, transmission,
                         two_photon_amplitude)
from pairgrating.errors import DegenerateInputError, ParameterError, SamplingWarning

from conftest import WAVELENGTH


def test_correlation_factor_on_diagonal():
    model = CorrelationModel(sigma_corr=5.0, mode="near")
    assert correlation_factor(7.3, 7.3, model) == 1.0


def test_correlation_factor_on_antidiagonal():
    model = CorrelationModel(sigma_corr=5.0, mode="far")
    assert correlation_factor(5.0, -5.0, model) == 1.0


def test_correlation_factor_one_width_away():
    model = CorrelationModel(sigma_corr=5.0, mode="near")
    assert correlation_factor(0.0, 5.0, model) == pytest.approx(np.exp(-0.5), rel=1e-15)
    assert correlation_factor(0.0, 5.0, model) == pytest.approx(0.6065, abs=1e-4)


@pytest.mark.parametrize("sigma,mode", [(0.0, "near"), (-1.0, "near"),
                                        (float("nan"), "near"), (9.0, "diagonal")])
def test_correlation_model_validation(sigma, mode):
    with pytest.raises(ParameterError):
        CorrelationModel(sigma_corr=sigma, mode=mode)


@pytest.fixture(scope="module")
def small_grid():
    return make_grid(128, 300.0)


@pytest.fixture(scope="module")
def small_amp(small_grid, grating):
    return transmission(small_grid, grating, Illumination(WAVELENGTH, 29.0))


@pytest.mark.parametrize("mode", ["near", "far"])
def test_joint_amplitude_exchange_symmetric(small_grid, small_amp, mode):
    f = two_photon_amplitude(small_amp, CorrelationModel(9.0, mode), small_grid)
    np.testing.assert_array_equal(f.values, f.values.T)
    assert f.plane == "near"


def test_joint_amplitude_normalized(small_grid, small_amp):
    f = two_photon_amplitude(small_amp, CorrelationModel(9.0, "near"), small_grid)
    total = np.sum(np.abs(f.values) ** 2) * small_grid.dx ** 2
    assert total == pytest.approx(1.0, abs=1e-12)


def test_weak_correlation_gives_separable_amplitude(small_grid, small_amp):
    # wide correlation: the matrix is the outer product of the amplitude
    # with itself; the residual shrinks like 1/sigma**2
    outer = small_amp[:, None] * small_amp[None, :]
    outer = outer / np.sqrt(np.sum(np.abs(outer) ** 2) * small_grid.dx ** 2)
    f7 = two_photon_amplitude(small_amp, CorrelationModel(1e7, "near"), small_grid)
    assert np.max(np.abs(f7.values - outer)) <= 1e-12
    f6 = two_photon_amplitude(small_amp, CorrelationModel(1e6, "near"), small_grid)
    assert np.max(np.abs(f6.values - outer)) <= 5e-12


def test_strong_correlation_gives_diagonal_matrix(small_grid, small_amp):
    sigma = 0.01 * small_grid.dx
    with pytest.warns(SamplingWarning):
        f = two_photon_amplitude(small_amp, CorrelationModel(sigma, "near"), small_grid)
    # one grid spacing away the Gaussian weight is exp(-5000), which
    # underflows to exactly zero
    for offset in (1, 2, 5):
        assert np.abs(np.diagonal(f.values, offset=offset)).max() == 0.0
    assert np.abs(np.diagonal(f.values)).max() > 0.0


def test_sampling_warning_threshold(small_grid, small_amp):
    import warnings
    with warnings.catch_warnings():
        warnings.simplefilter("error", SamplingWarning)
        two_photon_amplitude(small_amp, CorrelationModel(small_grid.dx, "near"), small_grid)
    with pytest.warns(SamplingWarning):
        two_photon_amplitude(small_amp, CorrelationModel(0.4 * small_grid.dx, "near"),
                             small_grid)


def test_zero_amplitude_rejected(small_grid):
    with pytest.raises(DegenerateInputError):
        two_photon_amplitude(np.zeros(small_grid.n, dtype=complex),
                             CorrelationModel(9.0, "near"), small_grid)


def test_amplitude_shape_checked(small_grid):
    with pytest.raises(ParameterError):
        two_photon_amplitude(np.ones(small_grid.n + 2, dtype=complex),
                             CorrelationModel(9.0, "near"), small_grid)


def test_mode_duality_for_symmetric_envelope():
    # with a symmetric amplitude (no grating), the far-mode matrix is the
    # near-mode matrix with the second coordinate mirrored
    grid = make_grid(64, 200.0)
    envelope = np.exp(-((grid.x / 30.0) ** 2)).astype(complex)
    near = two_photon_amplitude(envelope, CorrelationModel(10.0, "near"), grid)
    far = two_photon_amplitude(envelope, CorrelationModel(10.0, "far"), grid)
    # x -> -x maps index l to n - l for l >= 1; index 0 has no partner
    np.testing.assert_array_equal(far.values[:, 1:], near.values[:, :0:-1])


def test_mass_near_diagonal_grows_with_correlation(grid512, amp_spot100):
    # fixed physical band |x1 - x2| <= one grating period: the enclosed
    # fraction is non-decreasing as the correlation width shrinks
    band = np.abs(grid512.x[:, None] - grid512.x[None, :]) <= 25.0
    fractions = []
    for sigma in (100.0, 31.0, 9.0, 3.0, 1.0):
        f = two_photon_amplitude(amp_spot100, CorrelationModel(sigma, "near"), grid512)
        weight = np.abs(f.values) ** 2
        fractions.append(float(weight[band].sum() / weight.sum()))
    assert all(b >= a - 1e-12 for a, b in zip(fractions, fractions[1:]))


def test_values_read_only(small_grid, small_amp):
    f = two_photon_amplitude(small_amp, CorrelationModel(9.0, "near"), small_grid)
    with pytest.raises(ValueError):
        f.values[0, 0] = 0.0
