"""Grassmann and Lagrangian pair geometries and their checks."""

from jordangeo.geometry.core import (
    GrasCoPoint,
    GrasPoint,
    Grassmann,
    Lagrangian,
    NotTransversal,
    PairGeometry,
    ProjectiveMap,
    chart,
    inner_dilation,
    parse_geometry,
    pi_minus,
    pi_plus,
    sigma_sum,
    transversal,
    unchart,
)

__all__ = [
    "GrasCoPoint",
    "GrasPoint",
    "Grassmann",
    "Lagrangian",
    "NotTransversal",
    "PairGeometry",
    "ProjectiveMap",
    "chart",
    "inner_dilation",
    "parse_geometry",
    "pi_minus",
    "pi_plus",
    "sigma_sum",
    "transversal",
    "unchart",
]
