"""
Spectrometer model: rebinning, seeded noise, saturation and detection floor.
"""

from __future__ import annotations

import logging

import numpy as np

from weakmag.exceptions import EmptyOverlapError

from .models import SpectrometerModel, SpectrumGrid

logger = logging.getLogger(__name__)


def _cell_edges(spectrum: SpectrumGrid) -> np.ndarray:
    h = spectrum.spacing
    return (float(spectrum.wavelengths[0]) - h / 2) + h * np.arange(len(spectrum) + 1)


def rebin(spectrum: SpectrumGrid, edges: np.ndarray) -> np.ndarray:
    """
    Mean intensity over each [edges[k], edges[k+1]].

    Each input sample is the mean of its own cell; outside the input support
    the intensity is zero.
    """
    cells = _cell_edges(spectrum)
    if edges.size == cells.size and np.allclose(edges, cells, rtol=0, atol=1e-9 * spectrum.spacing):
        return spectrum.intensities.copy()

    cumulative = np.concatenate(([0.0], np.cumsum(spectrum.intensities * spectrum.spacing)))
    # np.interp clamps outside the knots, which is exactly zero intensity beyond the support.
    integral = np.interp(edges, cells, cumulative)
    return np.diff(integral) / np.diff(edges)


def noise_draws(seed: int, n_bins: int) -> np.ndarray:
    """Standard-normal draws; draw k belongs to bin k."""
    return np.random.default_rng(seed).standard_normal(n_bins)


def apply_spectrometer(spectrum: SpectrumGrid, model: SpectrometerModel) -> SpectrumGrid:
    """
    Record `spectrum` with `model`: rebin, add noise, clamp to saturation, zero below floor.

    Args:
        spectrum (SpectrumGrid): Input spectrum; each sample is the mean of its cell.
        model (SpectrometerModel): Window, bins, floor, saturation, noise and seed.

    Returns:
        SpectrumGrid: Nonnegative intensities at the bin centers.
    """
    support_lo, support_hi = _cell_edges(spectrum)[[0, -1]]
    if model.lambda_max_nm <= support_lo or model.lambda_min_nm >= support_hi:
        raise EmptyOverlapError(
            f"spectrometer window [{model.lambda_min_nm}, {model.lambda_max_nm}] nm does not "
            f"overlap spectrum support [{support_lo}, {support_hi}] nm"
        )

    edges = model.bin_edges()
    values = rebin(spectrum, edges)

    sigma = model.noise.sigma(values)
    if np.any(sigma > 0):
        values = values + sigma * noise_draws(model.seed, values.size)

    values = np.minimum(values, model.saturation)
    values[values < model.intensity_floor] = 0.0
    values = np.clip(values, 0.0, None)

    centers = 0.5 * (edges[:-1] + edges[1:])
    logger.debug(
        "Recorded %d bins (noise=%s, seed=%d, floor=%g)",
        values.size,
        model.noise.kind,
        model.seed,
        model.intensity_floor,
    )
    return SpectrumGrid(centers, values)
