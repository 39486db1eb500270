"""Exact desk-scale computations for slice-rank and triple-product bounds on finite groups."""

from .groups import (
    Group,
    Subgroup,
    build_abelian,
    build_cyclic,
    build_symmetric,
    build_unitriangular,
    direct_product,
    parse_group_spec,
)

__all__ = [
    "Group",
    "Subgroup",
    "build_abelian",
    "build_cyclic",
    "build_symmetric",
    "build_unitriangular",
    "direct_product",
    "parse_group_spec",
]
__version__ = "0.1.0"
