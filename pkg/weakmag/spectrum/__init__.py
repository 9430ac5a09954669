"""Probe spectra: synthesis, spectrometer recording and Gaussian fitting."""

from .fitting import fit_gaussian, measured_shift
from .models import (
    CouplingModel,
    GaussianFit,
    GaussianNoise,
    GaussianProbe,
    NoNoise,
    ShotNoise,
    SpectrometerModel,
    SpectrumGrid,
    WavelengthGrid,
)
from .spectrometer import apply_spectrometer
from .synthesis import predicted_shift, sample_probe, synthesize_final_spectrum

__all__ = [
    "CouplingModel",
    "GaussianFit",
    "GaussianNoise",
    "GaussianProbe",
    "NoNoise",
    "ShotNoise",
    "SpectrometerModel",
    "SpectrumGrid",
    "WavelengthGrid",
    "apply_spectrometer",
    "fit_gaussian",
    "measured_shift",
    "predicted_shift",
    "sample_probe",
    "synthesize_final_spectrum",
]
