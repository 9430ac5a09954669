from abc import ABC, abstractmethod
from typing import ClassVar

from pydantic import BaseModel, ConfigDict


class FaradayGeometry(BaseModel, ABC):
    """
    Light path through the magneto-optic medium.

    All schemes assume a uniform field component along the path, so the
    Faraday line integral reduces to verdet * B * effective_length_m().
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    kind: ClassVar[str] = ""

    @abstractmethod
    def effective_length_m(self) -> float:
        """Total path length (meters) over which the field acts."""

    def describe(self) -> dict:
        return {"kind": self.kind, **self.model_dump()}
