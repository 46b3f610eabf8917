"""Exact Jordan structures, their Kantor-Koecher-Tits algebras and the associated geometries."""

from jordangeo.kernels import BACKEND
from jordangeo.rings import parse_ring

__version__ = "0.1.0"
__all__ = ["BACKEND", "parse_ring", "__version__"]
