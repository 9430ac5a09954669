"""
Run configuration: a TOML file validated into pydantic models.

Every key that carries a physical quantity has its unit in the name. Sections
that are left out fall back to the reference setup (833 nm probe of width
50 nm, 1000 m of fiber with V = 32 rad/(T m), calibrated budget, analytic readout).

    seed = 7
    readout = "analytic"

    [probe]
    lambda0_nm = 833.0
    w_nm = 50.0

    [geometry]
    kind = "fiber_coil"
    turns = 1000
    turn_length_m = 1.0

    [sweep]
    betas_rad = [0.007, 0.010, 0.013]
    b_min_T = 0.0
    b_max_T = 2e-9
    steps = 21
"""

from __future__ import annotations

import logging
import sys
from collections.abc import Iterator
from contextlib import contextmanager
from pathlib import Path
from typing import Any, Literal

if sys.version_info >= (3, 11):
    import tomllib
else:  # pragma: no cover - Python 3.10 fallback
    import tomli as tomllib

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from .analysis import BetaSearch, DesignConstraints, ExperimentSetup, Readout
from .exceptions import ConfigError
from .faraday import DEFAULT_VERDET_RAD_PER_T_M, MagnetoOpticMedium, PhaseBudget, calibrate_sbc
from .geometries import geometry_from_mapping
from .spectrum import CouplingModel, GaussianProbe, SpectrometerModel, WavelengthGrid
from .spectrum.models import GaussianConvention, MomentumMapping, NoiseModel, NoNoise

logger = logging.getLogger(__name__)

SHIPPED_CONFIG = Path(__file__).resolve().parents[1] / "configs" / "reference_setup.toml"


class _Section(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")


class ProbeSection(_Section):
    i0: float = Field(default=1.0, gt=0, allow_inf_nan=False)
    lambda0_nm: float = Field(default=833.0, gt=0, allow_inf_nan=False)
    w_nm: float = Field(default=50.0, gt=0, allow_inf_nan=False)
    convention: GaussianConvention = "variance"


class CouplingSection(_Section):
    g_nm: float | None = Field(default=None, gt=0, allow_inf_nan=False)
    momentum: MomentumMapping = "linearized"


class MediumSection(_Section):
    verdet_rad_per_T_m: float = Field(default=DEFAULT_VERDET_RAD_PER_T_M, allow_inf_nan=False)


class BudgetSection(_Section):
    phi_sbc_rad: float = Field(default=0.0, allow_inf_nan=False)
    phi_opd_rad: float = Field(default=0.0, allow_inf_nan=False)


class GridSection(_Section):
    lambda_min_nm: float = Field(gt=0, allow_inf_nan=False)
    lambda_max_nm: float = Field(gt=0, allow_inf_nan=False)
    points: int = Field(default=4001, ge=32)


class SpectrometerSection(_Section):
    lambda_min_nm: float = Field(gt=0, allow_inf_nan=False)
    lambda_max_nm: float = Field(gt=0, allow_inf_nan=False)
    bin_width_nm: float = Field(gt=0, allow_inf_nan=False)
    intensity_floor: float = Field(default=0.0, ge=0, allow_inf_nan=False)
    saturation: float = float("inf")
    noise: NoiseModel = Field(default_factory=NoNoise)


class SweepSection(_Section):
    betas_rad: list[float] = Field(default_factory=lambda: [0.007, 0.010, 0.013], min_length=1)
    b_min_T: float = Field(default=0.0, allow_inf_nan=False)
    b_max_T: float = Field(default=2e-9, allow_inf_nan=False)
    # A sensitivity needs a slope, so at least two fields.
    steps: int = Field(default=21, ge=2)

    @model_validator(mode="after")
    def _range(self) -> SweepSection:
        if not self.b_max_T > self.b_min_T:
            raise ValueError("b_max_T must exceed b_min_T")
        return self

    def b_values(self) -> list[float]:
        return [float(b) for b in np.linspace(self.b_min_T, self.b_max_T, self.steps)]


class DesignSection(_Section):
    i0_max: float = Field(default=1.0, gt=0, allow_inf_nan=False)
    intensity_floor: float = Field(default=1e-5, ge=0, allow_inf_nan=False)
    wavelength_resolution_nm: float = Field(default=0.1, ge=0, allow_inf_nan=False)
    target_field_accuracy_T: float = Field(default=1e-11, gt=0, allow_inf_nan=False)
    beta_min_rad: float = Field(default=1e-3, allow_inf_nan=False)
    beta_max_rad: float = Field(default=0.05, allow_inf_nan=False)
    beta_step_rad: float = Field(default=1e-5, gt=0, allow_inf_nan=False)


class OutputSection(_Section):
    dir: str = "out"
    format: Literal["csv", "json"] = "csv"


class RunConfig(_Section):
    seed: int = Field(default=0, ge=0, lt=2**64)
    readout: Readout = "analytic"
    workers: int = Field(default=1, ge=1)
    probe: ProbeSection = Field(default_factory=ProbeSection)
    coupling: CouplingSection = Field(default_factory=CouplingSection)
    geometry: dict[str, Any] = Field(
        default_factory=lambda: {"kind": "fiber_coil", "turns": 1000, "turn_length_m": 1.0}
    )
    medium: MediumSection = Field(default_factory=MediumSection)
    budget: BudgetSection = Field(default_factory=BudgetSection)
    grid: GridSection | None = None
    spectrometer: SpectrometerSection | None = None
    sweep: SweepSection = Field(default_factory=SweepSection)
    design: DesignSection | None = None
    output: OutputSection = Field(default_factory=OutputSection)

    def build_setup(self) -> ExperimentSetup:
        """Assemble the experiment, calibrating the compensator. Raises ConfigError."""
        geometry = geometry_from_mapping(self.geometry)
        raw_budget = PhaseBudget(phi_sbc=self.budget.phi_sbc_rad, phi_opd=self.budget.phi_opd_rad)
        budget = calibrate_sbc(raw_budget)
        if budget != raw_budget:
            logger.info("SBC calibrated: phi_sbc %g -> %g rad", raw_budget.phi_sbc, budget.phi_sbc)

        p = self.probe
        parts: dict[str, Any] = {}
        with _key_prefix("probe"):
            parts["probe"] = GaussianProbe(i0=p.i0, lambda0_nm=p.lambda0_nm, w_nm=p.w_nm)
        with _key_prefix("medium"):
            parts["medium"] = MagnetoOpticMedium(verdet_rad_per_T_m=self.medium.verdet_rad_per_T_m)
        with _key_prefix("grid"):
            parts["grid"] = WavelengthGrid(**self.grid.model_dump()) if self.grid else None
        with _key_prefix("spectrometer"):
            parts["spectrometer"] = (
                SpectrometerModel(**self.spectrometer.model_dump(), seed=self.seed)
                if self.spectrometer
                else None
            )
        return ExperimentSetup(
            coupling=CouplingModel(
                g_nm=self.coupling.g_nm, convention=p.convention, momentum=self.coupling.momentum
            ),
            geometry=geometry,
            budget=budget,
            readout=self.readout,
            seed=self.seed,
            workers=self.workers,
            **parts,
        )

    def design_constraints(self) -> DesignConstraints:
        d = self.design or DesignSection()
        return DesignConstraints(
            i0_max=d.i0_max,
            intensity_floor=d.intensity_floor,
            wavelength_resolution_nm=d.wavelength_resolution_nm,
            target_field_accuracy_T=d.target_field_accuracy_T,
        )

    def beta_search(self) -> BetaSearch:
        d = self.design or DesignSection()
        return BetaSearch(
            beta_min_rad=d.beta_min_rad, beta_max_rad=d.beta_max_rad, beta_step_rad=d.beta_step_rad
        )


@contextmanager
def _key_prefix(prefix: str) -> Iterator[None]:
    """Re-raise pydantic ValidationError as ConfigError under a key prefix."""
    try:
        yield
    except ValidationError as exc:
        raise ConfigError(problems_from(exc, (prefix,))) from exc


def problems_from(exc: ValidationError, prefix: tuple[str, ...] = ()) -> list[tuple[str, str]]:
    return [
        (".".join([*prefix, *(str(p) for p in err["loc"])]) or "<root>", err["msg"])
        for err in exc.errors()
    ]


def parse_config(data: dict[str, Any]) -> RunConfig:
    """Validate a parsed TOML mapping, including everything `build_setup` checks."""
    try:
        config = RunConfig.model_validate(data)
    except ValidationError as exc:
        raise ConfigError(problems_from(exc)) from exc
    config.build_setup()
    return config


def load_config(path: str | Path | None) -> RunConfig:
    """
    Load and validate a TOML run configuration.

    Args:
        path (str | Path | None): Config file; None gives the reference setup.

    Returns:
        RunConfig: Validated configuration whose `build_setup()` is known to succeed.

    Raises ConfigError for a missing file, bad TOML or invalid values.
    """
    if path is None:
        logger.info("No config given; using the reference setup")
        return RunConfig()
    path = Path(path)
    try:
        data = tomllib.loads(path.read_text(encoding="utf-8"))
    except FileNotFoundError as exc:
        raise ConfigError([("<file>", f"config file not found: {path}")]) from exc
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError([("<file>", f"{path.name}: {exc}")]) from exc

    config = parse_config(data)
    logger.info("Loaded config %s (readout=%s, seed=%d)", path, config.readout, config.seed)
    return config
