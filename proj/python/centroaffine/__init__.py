"""Integrable dynamics on centroaffine polygons: moduli coordinates, the
c-relation and its Lax map, spectral integrals, recutting, and the center."""

from centroaffine._core import *  # noqa: F401,F403
from centroaffine._core import __doc__ as _core_doc

__all__ = [name for name in dir() if not name.startswith("_")]
