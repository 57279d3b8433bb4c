"""Generalised multi-sequence shift-register synthesis by F[x]-module minimisation."""

from .ff import NEG_INF, Field, Poly, lagrange_interpolate
from .instance import (
    ALGORITHMS,
    MgLfsrInstance,
    Solution,
    build_basis,
    is_member,
    is_solution,
    new_instance,
    solve,
)
from .polymat import PolyMatrix, WeightProfile

__all__ = [
    "ALGORITHMS",
    "NEG_INF",
    "Field",
    "MgLfsrInstance",
    "Poly",
    "PolyMatrix",
    "Solution",
    "WeightProfile",
    "build_basis",
    "is_member",
    "is_solution",
    "lagrange_interpolate",
    "new_instance",
    "solve",
]
