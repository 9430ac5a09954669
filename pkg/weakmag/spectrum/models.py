"""
Value types shared by spectrum synthesis, the spectrometer model and fitting.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Annotated, Literal

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from weakmag.exceptions import InvalidArgumentError

GaussianConvention = Literal["variance", "squared_width"]
MomentumMapping = Literal["linearized", "exact"]

# Relative tolerance on uniform grid spacing.
SPACING_RTOL = 1e-9


class GaussianProbe(BaseModel):
    """
    Initial spectrum I0 * exp(-(lambda - lambda0)^2 / (2 W^2)) (variance convention).

    `w_nm` is the width W = delta-lambda in nm; W^2 is the variance of the
    intensity profile under the default convention.
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    i0: float = Field(default=1.0, gt=0, allow_inf_nan=False)
    lambda0_nm: float = Field(default=833.0, gt=0, allow_inf_nan=False)
    w_nm: float = Field(default=50.0, gt=0, allow_inf_nan=False)


class CouplingModel(BaseModel):
    """
    Probe/system coupling g (nm, defaults to lambda0) and how spectra are built.

    convention:
        "variance"      Gamma ~ exp(-(l - l0)^2 / (2 W^2))
        "squared_width" Gamma ~ exp(-(l - l0)^2 / W^2); g is doubled so the
                        center shift still follows -4 pi W^2 Im(A_w) / lambda0
    momentum:
        "linearized"    p(l) = p0 - 2 pi (l - l0) / l0^2
        "exact"         p(l) = 2 pi / l
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    g_nm: float | None = Field(default=None, gt=0, allow_inf_nan=False)
    convention: GaussianConvention = "variance"
    momentum: MomentumMapping = "linearized"

    def coupling_nm(self, probe: GaussianProbe) -> float:
        g = probe.lambda0_nm if self.g_nm is None else self.g_nm
        return 2.0 * g if self.convention == "squared_width" else g

    @staticmethod
    def p0(probe: GaussianProbe) -> float:
        """Central momentum 2 pi / lambda0 in rad/nm."""
        return 2.0 * math.pi / probe.lambda0_nm

    def momentum_at(self, probe: GaussianProbe, wavelengths: np.ndarray) -> np.ndarray:
        if self.momentum == "exact":
            return 2.0 * math.pi / wavelengths
        lam0 = probe.lambda0_nm
        return self.p0(probe) - 2.0 * math.pi * (wavelengths - lam0) / (lam0 * lam0)


class WavelengthGrid(BaseModel):
    """Uniform sampling: `points` wavelengths from lambda_min_nm to lambda_max_nm inclusive."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    lambda_min_nm: float = Field(gt=0, allow_inf_nan=False)
    lambda_max_nm: float = Field(gt=0, allow_inf_nan=False)
    points: int = Field(default=4001, ge=32)

    @model_validator(mode="after")
    def _ordered(self) -> WavelengthGrid:
        if not self.lambda_min_nm < self.lambda_max_nm:
            raise ValueError("lambda_min_nm must be below lambda_max_nm")
        return self

    @classmethod
    def around(cls, probe: GaussianProbe, widths: float = 5.0, points: int = 4001) -> WavelengthGrid:
        """lambda0 +- widths * W."""
        half = widths * probe.w_nm
        return cls(
            lambda_min_nm=max(probe.lambda0_nm - half, 1e-9),
            lambda_max_nm=probe.lambda0_nm + half,
            points=points,
        )

    def wavelengths(self) -> np.ndarray:
        return np.linspace(self.lambda_min_nm, self.lambda_max_nm, self.points)


@dataclass(frozen=True)
class SpectrumGrid:
    """Intensity sampled on a strictly increasing, uniformly spaced wavelength grid."""

    wavelengths: np.ndarray
    intensities: np.ndarray

    def __post_init__(self) -> None:
        lam = np.array(self.wavelengths, dtype=float)
        inten = np.array(self.intensities, dtype=float)
        if lam.ndim != 1 or lam.shape != inten.shape:
            raise InvalidArgumentError("wavelengths and intensities must be 1-D and of equal length")
        if lam.size < 2:
            raise InvalidArgumentError("a spectrum needs at least two samples")
        if not (np.all(np.isfinite(lam)) and np.all(np.isfinite(inten))):
            raise InvalidArgumentError("spectrum contains non-finite values")
        steps = np.diff(lam)
        if np.any(steps <= 0):
            raise InvalidArgumentError("wavelengths must be strictly increasing")
        if np.max(np.abs(steps - steps.mean())) > SPACING_RTOL * steps.mean():
            raise InvalidArgumentError("wavelength spacing is not uniform")
        if np.any(inten < 0):
            raise InvalidArgumentError("intensities must be nonnegative")
        lam.setflags(write=False)
        inten.setflags(write=False)
        object.__setattr__(self, "wavelengths", lam)
        object.__setattr__(self, "intensities", inten)

    def __len__(self) -> int:
        return int(self.wavelengths.size)

    @property
    def spacing(self) -> float:
        return float((self.wavelengths[-1] - self.wavelengths[0]) / (self.wavelengths.size - 1))

    def integrated(self) -> float:
        """Total intensity (cell sum times spacing)."""
        return float(self.intensities.sum() * self.spacing)

    def peak(self) -> float:
        return float(self.intensities.max())


class NoNoise(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    kind: Literal["none"] = "none"

    def sigma(self, intensities: np.ndarray) -> np.ndarray:
        return np.zeros_like(intensities)


class ShotNoise(BaseModel):
    """Variance proportional to intensity: sigma_i = sqrt(scale * I_i)."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    kind: Literal["shot"] = "shot"
    scale: float = Field(ge=0, allow_inf_nan=False)

    def sigma(self, intensities: np.ndarray) -> np.ndarray:
        return np.sqrt(self.scale * np.clip(intensities, 0.0, None))


class GaussianNoise(BaseModel):
    """Additive noise of constant standard deviation."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    kind: Literal["gaussian"] = "gaussian"
    sigma_intensity: float = Field(ge=0, allow_inf_nan=False)

    def sigma(self, intensities: np.ndarray) -> np.ndarray:
        return np.full_like(intensities, self.sigma_intensity)


NoiseModel = Annotated[NoNoise | ShotNoise | GaussianNoise, Field(discriminator="kind")]


class SpectrometerModel(BaseModel):
    """Recording instrument: window, bin width, detection floor, saturation, noise and seed."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    lambda_min_nm: float = Field(gt=0, allow_inf_nan=False)
    lambda_max_nm: float = Field(gt=0, allow_inf_nan=False)
    bin_width_nm: float = Field(gt=0, allow_inf_nan=False)
    intensity_floor: float = Field(default=0.0, ge=0, allow_inf_nan=False)
    saturation: float = math.inf
    noise: NoiseModel = Field(default_factory=NoNoise)
    seed: int = Field(default=0, ge=0, lt=2**64)

    @model_validator(mode="after")
    def _consistent(self) -> SpectrometerModel:
        if not self.lambda_min_nm < self.lambda_max_nm:
            raise ValueError("lambda_min_nm must be below lambda_max_nm")
        if math.isnan(self.saturation) or not self.saturation > self.intensity_floor:
            raise ValueError("saturation must exceed intensity_floor")
        return self

    @classmethod
    def matching(cls, spectrum: SpectrumGrid, **kwargs) -> SpectrometerModel:
        """An instrument whose bins coincide with the cells of `spectrum`."""
        h = spectrum.spacing
        return cls(
            lambda_min_nm=float(spectrum.wavelengths[0]) - h / 2,
            lambda_max_nm=float(spectrum.wavelengths[-1]) + h / 2,
            bin_width_nm=h,
            **kwargs,
        )

    def bin_edges(self) -> np.ndarray:
        n_bins = max(int(round((self.lambda_max_nm - self.lambda_min_nm) / self.bin_width_nm)), 1)
        return self.lambda_min_nm + self.bin_width_nm * np.arange(n_bins + 1)


class GaussianFit(BaseModel):
    """Result of `fit_gaussian`; serializes with unit-suffixed keys."""

    model_config = ConfigDict(frozen=True)

    center: float = Field(serialization_alias="center_nm")
    width: float = Field(serialization_alias="width_nm")
    amplitude: float
    baseline: float
    rss: float = Field(ge=0)
    converged: bool
    iterations: int = Field(ge=0)

    def to_record(self) -> dict:
        return self.model_dump(by_alias=True)
