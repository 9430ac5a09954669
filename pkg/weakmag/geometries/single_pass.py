from pydantic import Field

from .base import FaradayGeometry
from .registry import register


@register("single_pass")
class SinglePass(FaradayGeometry):
    """One pass through a slab of thickness D along the field."""

    length_m: float = Field(gt=0, allow_inf_nan=False)

    def effective_length_m(self) -> float:
        return self.length_m
