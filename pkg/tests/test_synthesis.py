import logging
import math

import numpy as np
import pytest

from weakmag.exceptions import OrthogonalSelectionError
from weakmag.polarization import postselection_probability, weak_value
from weakmag.spectrum import (
    CouplingModel,
    GaussianProbe,
    WavelengthGrid,
    fit_gaussian,
    measured_shift,
    predicted_shift,
    sample_probe,
    synthesize_final_spectrum,
)

PROBE = GaussianProbe()
COUPLING = CouplingModel()
GRID = WavelengthGrid(lambda_min_nm=583.0, lambda_max_nm=1083.0, points=4001)


def test_probe_sampling_values():
    spectrum = sample_probe(PROBE, COUPLING, GRID)
    assert len(spectrum) == 4001
    assert spectrum.wavelengths[2000] == 833.0
    assert spectrum.intensities[2000] == 1.0
    assert spectrum.wavelengths[2400] == 883.0
    assert spectrum.intensities[2400] == pytest.approx(math.exp(-0.5), rel=1e-12)


def test_squared_width_convention():
    model = CouplingModel(convention="squared_width")
    spectrum = sample_probe(PROBE, model, GRID)
    assert spectrum.intensities[2400] == pytest.approx(math.exp(-1.0), rel=1e-12)
    assert model.coupling_nm(PROBE) == 2 * 833.0


def test_degenerate_grids_rejected():
    with pytest.raises(ValueError):
        WavelengthGrid(lambda_min_nm=583.0, lambda_max_nm=1083.0, points=10)
    with pytest.raises(ValueError):
        WavelengthGrid(lambda_min_nm=900.0, lambda_max_nm=800.0)


def test_narrow_grid_warns(caplog):
    narrow = WavelengthGrid(lambda_min_nm=800.0, lambda_max_nm=870.0, points=701)
    with caplog.at_level(logging.WARNING, logger="weakmag.spectrum.synthesis"):
        sample_probe(PROBE, COUPLING, narrow)
    assert "widths" in caplog.text


def test_zero_phase_final_is_attenuated_initial():
    beta = 0.010
    initial = sample_probe(PROBE, COUPLING, GRID)
    final = synthesize_final_spectrum(PROBE, COUPLING, beta, 0.0, GRID)
    np.testing.assert_allclose(final.intensities, math.sin(beta) ** 2 * initial.intensities, rtol=1e-14)
    ratio = final.integrated() / initial.integrated()
    assert ratio == pytest.approx(postselection_probability(beta, 0.0), rel=1e-3)


def test_orthogonal_selection_propagates():
    with pytest.raises(OrthogonalSelectionError):
        synthesize_final_spectrum(PROBE, COUPLING, 0.0, 0.0, GRID)


def test_predicted_shift_examples():
    assert predicted_shift(PROBE, weak_value(0.010, 0.0)) == 0.0
    assert predicted_shift(PROBE, weak_value(0.010, 3.2e-5)) == pytest.approx(-12.06, abs=0.02)
    assert abs(predicted_shift(PROBE, weak_value(0.007, 3.2e-6))) == pytest.approx(2.46, abs=0.01)


def test_fitted_center_matches_predicted_shift():
    beta, phi = 0.010, 3.2e-5
    initial_fit = fit_gaussian(sample_probe(PROBE, COUPLING, GRID))
    final_fit = fit_gaussian(synthesize_final_spectrum(PROBE, COUPLING, beta, phi, GRID))
    expected = predicted_shift(PROBE, weak_value(beta, phi))
    assert final_fit.center == pytest.approx(833.0 + expected, abs=0.01 * abs(expected))
    assert final_fit.center == pytest.approx(820.94, abs=0.15)


def test_null_amplification_keeps_center():
    final = synthesize_final_spectrum(PROBE, COUPLING, math.pi / 4, 3.2e-5, GRID)
    assert fit_gaussian(final).center == pytest.approx(833.0, abs=1e-6)


@pytest.mark.parametrize("beta", [0.007, 0.010, 0.013])
@pytest.mark.parametrize("phi_over_beta", [0.001, 0.01, 0.05])
def test_measured_shift_agrees_with_prediction(beta, phi_over_beta):
    phi = phi_over_beta * beta
    initial_fit = fit_gaussian(sample_probe(PROBE, COUPLING, GRID))
    final_fit = fit_gaussian(synthesize_final_spectrum(PROBE, COUPLING, beta, phi, GRID))
    expected = predicted_shift(PROBE, weak_value(beta, phi))
    assert measured_shift(initial_fit, final_fit) == pytest.approx(expected, rel=0.01)


def test_exact_momentum_mapping_is_selectable():
    exact = CouplingModel(momentum="exact")
    lam = GRID.wavelengths()
    np.testing.assert_allclose(exact.momentum_at(PROBE, lam), 2 * math.pi / lam)
    linear = COUPLING.momentum_at(PROBE, lam)
    assert linear[2000] == pytest.approx(2 * math.pi / 833.0, rel=1e-15)
