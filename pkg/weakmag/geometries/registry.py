"""
Geometry registry for weakmag.

Each amplification scheme (how the light path through the magneto-optic
medium is lengthened) is a small pydantic model registered under the `kind`
name used in configuration files. To add a scheme:

1. Create a new file in weakmag/geometries/, e.g. `ring_cavity.py`.
2. Subclass `FaradayGeometry` and implement `effective_length_m()`.
3. Decorate the class with @register("<kind>").
4. Import the module in weakmag/geometries/__init__.py so it registers.

Example:

    from .base import FaradayGeometry
    from .registry import register

    @register("ring_cavity")
    class RingCavity(FaradayGeometry):
        round_trips: int
        length_m: float

        def effective_length_m(self) -> float:
            return self.round_trips * self.length_m
"""

import logging
from typing import Any

from pydantic import ValidationError

from weakmag.exceptions import ConfigError

logger = logging.getLogger(__name__)

# Global geometry registry: maps kind name → geometry class
REGISTRY: dict[str, type] = {}


def register(kind: str):
    """
    Decorator to register a geometry class under a given kind name.

    Args:
        kind (str): Identifier used in the `[geometry]` config table
                    (e.g. "single_pass", "fiber_coil").
    """

    def decorator(cls):
        REGISTRY[kind.lower()] = cls
        cls.kind = kind.lower()
        return cls

    return decorator


def geometry_from_mapping(data: dict[str, Any], key_prefix: str = "geometry"):
    """
    Build a geometry instance from a config table such as
    {"kind": "fiber_coil", "turns": 1000, "turn_length_m": 1.0}.

    Raises ConfigError naming the offending key path.
    """
    fields = dict(data)
    kind = str(fields.pop("kind", "")).lower()
    geometry_cls = REGISTRY.get(kind)
    if geometry_cls is None:
        known = ", ".join(sorted(REGISTRY))
        raise ConfigError([(f"{key_prefix}.kind", f"unknown geometry {kind!r} (known: {known})")])

    try:
        geometry = geometry_cls.model_validate(fields)
    except ValidationError as exc:
        raise ConfigError(
            [
                (".".join([key_prefix, *(str(p) for p in err["loc"])]), err["msg"])
                for err in exc.errors()
            ]
        ) from exc

    logger.debug("Built %s geometry: %s", kind, geometry)
    return geometry
