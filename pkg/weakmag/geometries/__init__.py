"""
weakmag geometry package.

Geometries register themselves via the @register decorator in registry.py.
See registry.py for details on how to add a new scheme.
"""

# Import scheme modules for their side effects (they register themselves).
from . import fiber_coil as _fiber_coil  # noqa: F401
from . import multi_reflection as _multi_reflection  # noqa: F401
from . import registry
from . import single_pass as _single_pass  # noqa: F401
from .base import FaradayGeometry
from .fiber_coil import FiberCoil
from .multi_reflection import MultiReflection
from .registry import REGISTRY, geometry_from_mapping, register
from .single_pass import SinglePass

__all__ = [
    "REGISTRY",
    "FaradayGeometry",
    "FiberCoil",
    "MultiReflection",
    "SinglePass",
    "geometry_from_mapping",
    "register",
    "registry",
]
