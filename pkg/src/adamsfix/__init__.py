"""Fixed points of the Adams-series map Psi_t on class functions of finite groups."""

from .fixpoints import (
    CyclotomicClassFunction,
    FixedPointGroup,
    brute_force_fixed_points,
    is_fixed_point,
    solve_fixed_points,
)
from .groups import FiniteGroupModel

__all__ = [
    "CyclotomicClassFunction",
    "FiniteGroupModel",
    "FixedPointGroup",
    "brute_force_fixed_points",
    "is_fixed_point",
    "solve_fixed_points",
]
