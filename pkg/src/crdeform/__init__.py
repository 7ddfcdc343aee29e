"""Exact infinitesimal deformation theory for polynomial CR maps.

The package works over ``Q(sqrt d)[i]`` throughout.  Hypersurfaces are given
by real polynomials ``rho(Z, Zbar)``, maps by holomorphic polynomials, and
every question (does ``H`` map ``M`` into ``M'``, is a section an
infinitesimal deformation, is a jet curve tangent to order ``k``) is decided
by exact reduction modulo ``rho``.
"""

__version__ = "0.1.0"

from .exact import CScalar, QuadExt, RadicandMismatch, sqrt  # noqa: E402
from .geometry import (  # noqa: E402
    GeometryError,
    HoloMap,
    Hypersurface,
    PolyVectorField,
    VectorSection,
    maps_into,
    sphere,
)
from .poly import MPoly, poly_reduce  # noqa: E402

__all__ = [
    "__version__",
    "CScalar",
    "QuadExt",
    "RadicandMismatch",
    "sqrt",
    "GeometryError",
    "HoloMap",
    "Hypersurface",
    "PolyVectorField",
    "VectorSection",
    "maps_into",
    "sphere",
    "MPoly",
    "poly_reduce",
]
