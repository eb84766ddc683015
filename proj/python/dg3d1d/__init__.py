"""Python front end to the dg3d1d C++ library."""

from ._dg3d1d import (
    GeometryError,
    InvalidArgument,
    SolverError,
    dissipation,
    heat,
    mms3d,
    mms_network,
    read_network,
)

__all__ = [
    "GeometryError",
    "InvalidArgument",
    "SolverError",
    "dissipation",
    "heat",
    "mms3d",
    "mms_network",
    "read_network",
]
