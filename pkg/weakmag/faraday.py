"""
Faraday phase of the magneto-optic arm and the interferometer phase budget.
"""

from __future__ import annotations

import logging
import math
from collections.abc import Mapping

from pydantic import BaseModel, ConfigDict, Field, field_validator

from .exceptions import InvalidArgumentError
from .geometries import FaradayGeometry

logger = logging.getLogger(__name__)

# Terbium-doped fiber magnitude; the measured value is negative (-32.1 rad/(T m)).
DEFAULT_VERDET_RAD_PER_T_M = 32.0


class MagnetoOpticMedium(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    verdet_rad_per_T_m: float = Field(default=DEFAULT_VERDET_RAD_PER_T_M, allow_inf_nan=False)

    @field_validator("verdet_rad_per_T_m")
    @classmethod
    def _nonzero(cls, v: float) -> float:
        if v == 0:
            raise ValueError("Verdet constant must be nonzero")
        return v


class PhaseBudget(BaseModel):
    """H/V phase contributions: compensator, optical path difference, magneto-optic medium."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    phi_sbc: float = Field(default=0.0, allow_inf_nan=False)
    phi_opd: float = Field(default=0.0, allow_inf_nan=False)
    phi_mom: float = Field(default=0.0, allow_inf_nan=False)

    @property
    def is_calibrated(self) -> bool:
        return self.phi_sbc + self.phi_opd == 0


def faraday_phase(geom: FaradayGeometry, medium: MagnetoOpticMedium, b_tesla: float) -> float:
    """phi_MOM = V * B * effective path length; the sign follows B (and V)."""
    b_tesla = float(b_tesla)
    if not math.isfinite(b_tesla):
        raise InvalidArgumentError(f"B must be finite, got {b_tesla!r}")
    length = geom.effective_length_m()
    if not (math.isfinite(length) and length > 0):
        raise InvalidArgumentError(f"{geom.kind} geometry has invalid path length {length!r}")
    return medium.verdet_rad_per_T_m * b_tesla * length


def calibrate_sbc(budget: PhaseBudget) -> PhaseBudget:
    """Set the compensator so that phi_sbc + phi_opd = 0 (done in a shielded environment)."""
    return budget.model_copy(update={"phi_sbc": -budget.phi_opd})


def total_phase(budget: PhaseBudget) -> float:
    """phi = phi_sbc + phi_opd + phi_mom; equals phi_mom once calibrated."""
    return (budget.phi_sbc + budget.phi_opd) + budget.phi_mom


def scheme_phases(
    geometries: Mapping[str, FaradayGeometry], medium: MagnetoOpticMedium, b_tesla: float
) -> dict[str, float]:
    """phi_MOM for each named geometry at the same field."""
    return {name: faraday_phase(geom, medium, b_tesla) for name, geom in geometries.items()}
