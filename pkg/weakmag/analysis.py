"""
Field sweeps, sensitivity extraction and pre-selection design.

An `ExperimentSetup` bundles everything between the magnetic field and the
recorded center-wavelength shift. Shifts are read out either analytically
(closed-form shift of the center wavelength) or synthetically (postselected
spectrum synthesized, optionally recorded by a spectrometer, then fitted).
"""

from __future__ import annotations

import logging
import math
from collections.abc import Callable, Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Literal

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from .exceptions import InvalidArgumentError, NotDetectableError, SweepPointError, WeakMagError
from .faraday import MagnetoOpticMedium, PhaseBudget, faraday_phase, total_phase
from .geometries import FaradayGeometry, FiberCoil
from .polarization import postselection_probability, weak_value
from .spectrum import (
    CouplingModel,
    GaussianFit,
    GaussianProbe,
    SpectrometerModel,
    SpectrumGrid,
    WavelengthGrid,
    apply_spectrometer,
    fit_gaussian,
    measured_shift,
    predicted_shift,
    sample_probe,
    synthesize_final_spectrum,
)

logger = logging.getLogger(__name__)

TABLE1_BETAS = (0.007, 0.010, 0.013)
DEFAULT_B_SWEEP = tuple(float(b) for b in np.linspace(0.0, 2e-9, 21))

# Round-off floor: the closed form leaves Im(A_w) ~ 1e-16 * phi at beta = pi/4.
MIN_SENSITIVITY_NM_PER_T = 1e-6

Readout = Literal["analytic", "synthetic"]

_INITIAL_STREAM = 0
_FINAL_STREAM = 1


class ExperimentSetup(BaseModel):
    """Probe, coupling, Faraday arm, calibrated phase budget and readout path."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    probe: GaussianProbe = Field(default_factory=GaussianProbe)
    coupling: CouplingModel = Field(default_factory=CouplingModel)
    geometry: FaradayGeometry = Field(
        default_factory=lambda: FiberCoil(turns=1000, turn_length_m=1.0)
    )
    medium: MagnetoOpticMedium = Field(default_factory=MagnetoOpticMedium)
    budget: PhaseBudget = Field(default_factory=PhaseBudget)
    spectrometer: SpectrometerModel | None = None
    readout: Readout = "analytic"
    grid: WavelengthGrid | None = None
    seed: int = Field(default=0, ge=0, lt=2**64)
    workers: int = Field(default=1, ge=1)

    @model_validator(mode="after")
    def _calibrated(self) -> ExperimentSetup:
        if self.budget.phi_sbc + self.budget.phi_opd != 0:
            raise ValueError("phase budget is not calibrated (phi_sbc + phi_opd != 0)")
        return self

    def synthesis_grid(self) -> WavelengthGrid:
        return self.grid if self.grid is not None else WavelengthGrid.around(self.probe)

    def phase_for_field(self, b_tesla: float) -> float:
        phi_mom = faraday_phase(self.geometry, self.medium, b_tesla)
        return total_phase(self.budget.model_copy(update={"phi_mom": phi_mom}))


@dataclass(frozen=True)
class ShiftCurve:
    beta: float
    points: tuple[tuple[float, float], ...]

    def __post_init__(self) -> None:
        b = [p[0] for p in self.points]
        if any(b1 <= b0 for b0, b1 in zip(b, b[1:], strict=False)):
            raise InvalidArgumentError("B values of a shift curve must be strictly increasing")

    @property
    def b_values(self) -> np.ndarray:
        return np.array([p[0] for p in self.points])

    @property
    def shifts(self) -> np.ndarray:
        return np.array([p[1] for p in self.points])


class SensitivityResult(BaseModel):
    model_config = ConfigDict(frozen=True)

    beta: float
    k: float = Field(ge=0, description="|d shift / dB| in nm/T")
    r2: float = Field(ge=0, le=1)
    postselection_probability_at_zero_field: float

    def to_record(self) -> dict:
        return {
            "beta_rad": self.beta,
            "k_nm_per_T": self.k,
            "r2": self.r2,
            "p_postselect": self.postselection_probability_at_zero_field,
        }


class DesignConstraints(BaseModel):
    """Instrument limits. A zero floor or zero resolution makes that condition vacuous."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    i0_max: float = Field(gt=0, allow_inf_nan=False)
    intensity_floor: float = Field(ge=0, allow_inf_nan=False)
    wavelength_resolution_nm: float = Field(ge=0, allow_inf_nan=False)
    target_field_accuracy_T: float = Field(gt=0, allow_inf_nan=False)


class BetaSearch(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    beta_min_rad: float = Field(default=1e-3, allow_inf_nan=False)
    beta_max_rad: float = Field(default=0.05, allow_inf_nan=False)
    beta_step_rad: float = Field(default=1e-5, gt=0, allow_inf_nan=False)

    def grid(self) -> np.ndarray:
        n = int(math.floor((self.beta_max_rad - self.beta_min_rad) / self.beta_step_rad + 1e-9))
        return self.beta_min_rad + self.beta_step_rad * np.arange(n + 1)


class DesignRecommendation(BaseModel):
    model_config = ConfigDict(frozen=True)

    feasible_beta: tuple[float, float] | None = None
    chosen_beta: float | None = None
    expected_k: float | None = None
    expected_probability: float | None = None

    @model_validator(mode="after")
    def _chosen_inside(self) -> DesignRecommendation:
        if (self.feasible_beta is None) != (self.chosen_beta is None):
            raise ValueError("chosen_beta is present exactly when the feasible interval is")
        if self.feasible_beta is not None:
            lo, hi = self.feasible_beta
            if not lo <= self.chosen_beta <= hi:
                raise ValueError("chosen_beta lies outside the feasible interval")
        return self

    @property
    def feasible(self) -> bool:
        return self.feasible_beta is not None

    def to_record(self) -> dict:
        return {"feasible": self.feasible, **self.model_dump()}


@dataclass(frozen=True)
class SpectrumSnapshot:
    b_tesla: float
    phi: float
    spectrum: SpectrumGrid
    fit: GaussianFit
    predicted_shift_nm: float
    measured_shift_nm: float


@dataclass(frozen=True)
class SpectrumFamily:
    """Initial spectrum plus one postselected spectrum per field value, all fitted."""

    beta: float
    initial: SpectrumGrid
    initial_fit: GaussianFit
    members: tuple[SpectrumSnapshot, ...]


def derive_seed(seed: int, index: int, stream: int) -> int:
    """Independent 64-bit seed for (sweep point, spectrum) so results ignore evaluation order."""
    state = np.random.SeedSequence([seed, index, stream]).generate_state(1, dtype=np.uint64)
    return int(state[0])


def _record(setup: ExperimentSetup, spectrum: SpectrumGrid, index: int, stream: int) -> SpectrumGrid:
    if setup.spectrometer is None:
        return spectrum
    model = setup.spectrometer.model_copy(
        update={"seed": derive_seed(setup.seed, index, stream)}
    )
    return apply_spectrometer(spectrum, model)


def _synthetic_point(
    setup: ExperimentSetup, beta: float, phi: float, index: int
) -> tuple[SpectrumGrid, GaussianFit, SpectrumGrid, GaussianFit]:
    grid = setup.synthesis_grid()
    initial = _record(setup, sample_probe(setup.probe, setup.coupling, grid), index, _INITIAL_STREAM)
    final = _record(
        setup,
        synthesize_final_spectrum(setup.probe, setup.coupling, beta, phi, grid),
        index,
        _FINAL_STREAM,
    )
    return initial, fit_gaussian(initial), final, fit_gaussian(final)


def shift_at(setup: ExperimentSetup, beta: float, b_tesla: float, index: int = 0) -> float:
    """Center-wavelength shift (nm) at one field value via the setup's readout path."""
    phi = setup.phase_for_field(b_tesla)
    if setup.readout == "analytic":
        return predicted_shift(setup.probe, weak_value(beta, phi))
    _, initial_fit, _, final_fit = _synthetic_point(setup, beta, phi, index)
    return measured_shift(initial_fit, final_fit)


def _map_points(setup: ExperimentSetup, fn: Callable[[int, float], object], b_values: Sequence[float]):
    items = list(enumerate(b_values))
    if setup.workers > 1 and len(items) > 1:
        with ThreadPoolExecutor(max_workers=setup.workers) as pool:
            return list(pool.map(lambda item: fn(*item), items))
    return [fn(i, b) for i, b in items]


def shift_curve(setup: ExperimentSetup, beta: float, b_values: Sequence[float]) -> ShiftCurve:
    """
    Shift versus field at pre-selection `beta`.

    Args:
        setup (ExperimentSetup): Experiment and readout path.
        beta (float): Pre-selection angle in rad.
        b_values (Sequence[float]): Strictly increasing fields in T.

    Returns:
        ShiftCurve: One (B, shift in nm) point per field, in input order.

    Errors at a single point are re-raised as SweepPointError carrying that B.
    """
    b_values = [float(b) for b in b_values]
    if not b_values:
        raise InvalidArgumentError("b_values must not be empty")
    if any(b1 <= b0 for b0, b1 in zip(b_values, b_values[1:], strict=False)):
        raise InvalidArgumentError("b_values must be strictly increasing")

    def evaluate(index: int, b: float) -> tuple[float, float]:
        try:
            shift = shift_at(setup, beta, b, index)
        except WeakMagError as exc:
            raise SweepPointError(b, exc) from exc
        logger.debug("beta=%g B=%g T shift=%g nm", beta, b, shift)
        return b, shift + 0.0

    points = tuple(_map_points(setup, evaluate, b_values))
    logger.info(
        "Shift curve beta=%g: %d points over [%g, %g] T (%s readout)",
        beta,
        len(points),
        b_values[0],
        b_values[-1],
        setup.readout,
    )
    return ShiftCurve(beta, points)


def _zero_field_probability(beta: float) -> float:
    return postselection_probability(beta, 0.0)


def sensitivity(curve: ShiftCurve) -> SensitivityResult:
    """Least-squares slope of |shift| against B; k is its magnitude."""
    if len(curve.points) < 2:
        raise InvalidArgumentError("sensitivity needs at least two points")
    b = curve.b_values
    y = np.abs(curve.shifts)
    db = b - b.mean()
    dy = y - y.mean()
    sxx = float(db @ db)
    slope = float(db @ dy) / sxx
    ss_tot = float(dy @ dy)
    ss_res = float(((dy - slope * db) ** 2).sum())
    r2 = 1.0 if ss_tot == 0 else min(max(1.0 - ss_res / ss_tot, 0.0), 1.0)
    return SensitivityResult(
        beta=curve.beta,
        k=abs(slope),
        r2=r2,
        postselection_probability_at_zero_field=_zero_field_probability(curve.beta),
    )


def sensitivity_at(
    setup: ExperimentSetup, beta: float, b_values: Sequence[float] = DEFAULT_B_SWEEP
) -> SensitivityResult:
    return sensitivity(shift_curve(setup, beta, b_values))


def reproduce_table1(
    setup: ExperimentSetup,
    betas: Sequence[float] = TABLE1_BETAS,
    b_values: Sequence[float] = DEFAULT_B_SWEEP,
) -> list[SensitivityResult]:
    """Sensitivity and zero-field postselection probability per pre-selection angle."""
    return [sensitivity_at(setup, beta, b_values) for beta in betas]


def _analytic_k(setup: ExperimentSetup, beta: float, b_values: np.ndarray, phis: list[float]) -> float:
    shifts = [predicted_shift(setup.probe, weak_value(beta, phi)) for phi in phis]
    points = tuple((float(b), s) for b, s in zip(b_values, shifts, strict=True))
    return sensitivity(ShiftCurve(beta, points)).k


def recommend_design(
    constraints: DesignConstraints, setup: ExperimentSetup, beta_search: BetaSearch
) -> DesignRecommendation:
    """
    Feasible pre-selection interval under instrument limits.

    beta is feasible when the postselected peak i0_max * sin^2(beta) reaches the
    intensity floor and k(beta) * target accuracy reaches the wavelength
    resolution. The contiguous feasible run holding the largest k is returned,
    with its smallest beta (largest k) as the choice.

    Args:
        constraints (DesignConstraints): Instrument limits to satisfy.
        setup (ExperimentSetup): Probe, Faraday arm and budget; k is read out analytically.
        beta_search (BetaSearch): Grid of candidate angles, inside (0, pi/4).

    Returns:
        DesignRecommendation: Empty (feasible is False) when no grid angle qualifies.
    """
    if not 0 < beta_search.beta_min_rad < beta_search.beta_max_rad < math.pi / 4:
        raise InvalidArgumentError("beta search interval must lie inside (0, pi/4)")

    betas = beta_search.grid()
    b_values = np.asarray(DEFAULT_B_SWEEP)
    phis = [setup.phase_for_field(b) for b in b_values]
    ks = np.array([_analytic_k(setup, beta, b_values, phis) for beta in betas])
    detectable = constraints.i0_max * np.sin(betas) ** 2 >= constraints.intensity_floor
    resolvable = ks * constraints.target_field_accuracy_T >= constraints.wavelength_resolution_nm
    if constraints.wavelength_resolution_nm > 0:
        resolvable &= ks > MIN_SENSITIVITY_NM_PER_T
    feasible = detectable & resolvable

    if not feasible.any():
        logger.info("No feasible pre-selection in [%g, %g] rad", betas[0], betas[-1])
        return DesignRecommendation()

    best = int(np.flatnonzero(feasible)[np.argmax(ks[feasible])])
    lo = best
    while lo > 0 and feasible[lo - 1]:
        lo -= 1
    hi = best
    while hi < betas.size - 1 and feasible[hi + 1]:
        hi += 1

    chosen = float(betas[lo])
    logger.info("Feasible beta [%g, %g] rad, chosen %g rad", betas[lo], betas[hi], chosen)
    return DesignRecommendation(
        feasible_beta=(float(betas[lo]), float(betas[hi])),
        chosen_beta=chosen,
        expected_k=float(ks[lo]),
        expected_probability=_zero_field_probability(chosen),
    )


def minimum_detectable_field(
    setup: ExperimentSetup, beta: float, constraints: DesignConstraints
) -> float:
    """Smallest field whose shift reaches the spectrometer resolution: resolution / k(beta)."""
    k = sensitivity_at(setup, beta).k
    if k <= MIN_SENSITIVITY_NM_PER_T:
        raise NotDetectableError(f"sensitivity is zero at beta={beta!r}")
    return constraints.wavelength_resolution_nm / k


def spectrum_family(
    setup: ExperimentSetup, beta: float, b_values: Sequence[float]
) -> SpectrumFamily:
    """Synthesized (and recorded, if a spectrometer is set) spectra with fitted centers per field."""
    grid = setup.synthesis_grid()
    initial = _record(setup, sample_probe(setup.probe, setup.coupling, grid), 0, _INITIAL_STREAM)
    initial_fit = fit_gaussian(initial)

    def evaluate(index: int, b: float) -> SpectrumSnapshot:
        try:
            phi = setup.phase_for_field(b)
            final = _record(
                setup,
                synthesize_final_spectrum(setup.probe, setup.coupling, beta, phi, grid),
                index,
                _FINAL_STREAM,
            )
            fit = fit_gaussian(final)
            return SpectrumSnapshot(
                b_tesla=b,
                phi=phi,
                spectrum=final,
                fit=fit,
                predicted_shift_nm=predicted_shift(setup.probe, weak_value(beta, phi)) + 0.0,
                measured_shift_nm=measured_shift(initial_fit, fit) + 0.0,
            )
        except WeakMagError as exc:
            raise SweepPointError(b, exc) from exc

    members = tuple(_map_points(setup, evaluate, [float(b) for b in b_values]))
    return SpectrumFamily(beta, initial, initial_fit, members)
