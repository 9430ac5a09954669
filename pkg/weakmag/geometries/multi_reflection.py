from pydantic import Field

from .base import FaradayGeometry
from .registry import register


@register("multi_reflection")
class MultiReflection(FaradayGeometry):
    """
    N passes through the same slab.

    Faraday rotation is nonreciprocal, so reflected passes add up instead of
    cancelling.
    """

    passes: int = Field(ge=1)
    length_m: float = Field(gt=0, allow_inf_nan=False)

    def effective_length_m(self) -> float:
        return self.passes * self.length_m
