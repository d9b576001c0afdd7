"""
Models package for sphere_lagrange.
Contains exact number types, space data and result records.
"""

from sphere_lagrange.models.boundary_field import BoundaryField
from sphere_lagrange.models.exceptions import InvariantViolationError, OverlapDetectedError, UsageError
from sphere_lagrange.models.k_element import (
    ImagQuadElement,
    InfinityElement,
    KElement,
    RationalElement,
    Sqrt2Class,
    Sqrt2RationalElement,
    parse_element,
)
from sphere_lagrange.models.quad_ext import SQRT2, SQRT3, QuadExt, sqrt_rational
from sphere_lagrange.models.space_spec import SpaceCase, SpaceSpec, SpherePoint

__all__ = [
    "SQRT2",
    "SQRT3",
    "BoundaryField",
    "ImagQuadElement",
    "InfinityElement",
    "InvariantViolationError",
    "KElement",
    "OverlapDetectedError",
    "QuadExt",
    "RationalElement",
    "SpaceCase",
    "SpaceSpec",
    "SpherePoint",
    "Sqrt2Class",
    "Sqrt2RationalElement",
    "UsageError",
    "parse_element",
    "sqrt_rational",
]
