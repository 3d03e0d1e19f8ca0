"""Permutation groups and exact character theory."""

from .characters import (
    ClassFunction,
    character_table,
    decompose,
    induce,
    inner_product,
    render_table,
    restrict,
    table_by_label,
)
from .groups import (
    PermGroup,
    SubgroupEmbedding,
    build_group,
    dihedral_subgroups,
    index_two_subgroup_count,
    square_centralizer_check,
)
from .quad import QuadValue

__all__ = [
    "ClassFunction",
    "PermGroup",
    "QuadValue",
    "SubgroupEmbedding",
    "build_group",
    "character_table",
    "decompose",
    "dihedral_subgroups",
    "index_two_subgroup_count",
    "induce",
    "inner_product",
    "render_table",
    "restrict",
    "square_centralizer_check",
    "table_by_label",
]
