from pydantic import Field

from .base import FaradayGeometry
from .registry import register


@register("fiber_coil")
class FiberCoil(FaradayGeometry):
    """M turns of magneto-optic fiber, each of circumference L."""

    turns: int = Field(ge=1)
    turn_length_m: float = Field(gt=0, allow_inf_nan=False)

    def effective_length_m(self) -> float:
        return self.turns * self.turn_length_m
