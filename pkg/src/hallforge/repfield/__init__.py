"""Quiver representations over prime fields."""

from .quiver import (
    Arrow,
    CapExceeded,
    QuiverSpec,
    Representation,
    ScenarioError,
    aut_order_bruteforce,
    change_basis,
    count_subreps,
    direct_sum,
    ext_dim,
    ext_dim_cocycle,
    ext_dim_euler,
    hom_dim,
    hom_space,
    iter_subreps,
    middle_term,
    random_conjugate,
)
from .scenario import (
    QuiverScenario,
    a2_dict,
    an_dict,
    bound_square_dict,
    load_bundled,
    scenario_from_dict,
    single_vertex_dict,
)
from .table import IndecomposableTable, IsoClass

__all__ = [
    "Arrow",
    "CapExceeded",
    "IndecomposableTable",
    "IsoClass",
    "QuiverScenario",
    "QuiverSpec",
    "Representation",
    "ScenarioError",
    "a2_dict",
    "an_dict",
    "aut_order_bruteforce",
    "bound_square_dict",
    "change_basis",
    "count_subreps",
    "direct_sum",
    "ext_dim",
    "ext_dim_cocycle",
    "ext_dim_euler",
    "hom_dim",
    "hom_space",
    "iter_subreps",
    "load_bundled",
    "middle_term",
    "random_conjugate",
    "scenario_from_dict",
    "single_vertex_dict",
]
