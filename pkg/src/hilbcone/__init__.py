"""Exact divisor classes, Severi classes, and cone restrictions on Hilbert
schemes of points of rational and K3 surfaces."""

__version__ = "0.1.0"

from .nslattice import (
    SurfaceClass,
    SurfaceLattice,
    arithmetic_genus,
    blow_up,
    chi,
    make_hirzebruch,
    make_k3,
    make_p2,
    pair,
)

__all__ = [
    "SurfaceClass",
    "SurfaceLattice",
    "arithmetic_genus",
    "blow_up",
    "chi",
    "make_hirzebruch",
    "make_k3",
    "make_p2",
    "pair",
]
