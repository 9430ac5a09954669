"""
Initial and postselected probe spectra, and the analytic center-wavelength shift.
"""

from __future__ import annotations

import logging
import math

import numpy as np

from weakmag.polarization import WeakValue, postselection_probability, weak_value

from .models import CouplingModel, GaussianProbe, SpectrumGrid, WavelengthGrid

logger = logging.getLogger(__name__)

# sample_probe warns when the grid does not reach this many widths either side of lambda0.
MIN_COVERAGE_WIDTHS = 4.0


def _gaussian_profile(probe: GaussianProbe, model: CouplingModel, lam: np.ndarray) -> np.ndarray:
    x = lam - probe.lambda0_nm
    w2 = probe.w_nm * probe.w_nm
    denom = 2.0 * w2 if model.convention == "variance" else w2
    return probe.i0 * np.exp(-(x * x) / denom)


def sample_probe(
    probe: GaussianProbe, model: CouplingModel, grid: WavelengthGrid
) -> SpectrumGrid:
    """Initial spectrum Gamma_i(lambda) on `grid`."""
    reach = MIN_COVERAGE_WIDTHS * probe.w_nm
    if grid.lambda_min_nm > probe.lambda0_nm - reach or grid.lambda_max_nm < probe.lambda0_nm + reach:
        logger.warning(
            "Grid [%g, %g] nm covers less than +-%g widths around %g nm",
            grid.lambda_min_nm,
            grid.lambda_max_nm,
            MIN_COVERAGE_WIDTHS,
            probe.lambda0_nm,
        )
    lam = grid.wavelengths()
    return SpectrumGrid(lam, _gaussian_profile(probe, model, lam))


def synthesize_final_spectrum(
    probe: GaussianProbe,
    model: CouplingModel,
    beta: float,
    phi: float,
    grid: WavelengthGrid,
) -> SpectrumGrid:
    """
    Postselected spectrum

        |<phi_f|phi_i>|^2 * exp(2 p(lambda) g Im A_w) * Gamma_i(lambda)

    Raises OrthogonalSelectionError when the selection is orthogonal.
    """
    wv = weak_value(beta, phi)
    probability = postselection_probability(beta, phi)
    lam = grid.wavelengths()
    p = model.momentum_at(probe, lam)
    g = model.coupling_nm(probe)
    intensities = probability * np.exp(2.0 * p * g * wv.imag) * _gaussian_profile(probe, model, lam)
    logger.debug(
        "Synthesized final spectrum beta=%g phi=%g Im(A_w)=%g P=%g", beta, phi, wv.imag, probability
    )
    return SpectrumGrid(lam, intensities)


def predicted_shift(probe: GaussianProbe, weak_value: WeakValue) -> float:
    """delta-lambda0 = -(4 pi W^2 / lambda0) Im A_w, in nm."""
    return -(4.0 * math.pi * probe.w_nm * probe.w_nm / probe.lambda0_nm) * weak_value.imag
