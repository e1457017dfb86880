"""Exact configuration sets of groups, bounded configuration catalogs,
amenability weighting systems, decomposition checks, and the Laurent-matrix
groups K, G and H."""

__version__ = "0.1.0"

from .amenability import build_system, solve
from .catalog import catalog, class_data, compare_catalogs, is_normal_set
from .configurations import (
    ConfigurationSet,
    configuration_of,
    configurations,
    stabilized_configurations,
    two_sided_configurations,
)
from .decomposition import DecompositionClaim, pieces_bound, verify_decomposition
from .groups import (
    FreeGroup,
    GroupView,
    RepresentativePair,
    ball,
    build_group,
    closure,
    eval_word,
    generating_tuple,
    named_group,
)
from .partitions import Partition, atoms, is_refinement, meet, pullback_partition, similar

__all__ = [
    "ConfigurationSet",
    "DecompositionClaim",
    "FreeGroup",
    "GroupView",
    "Partition",
    "RepresentativePair",
    "atoms",
    "ball",
    "build_group",
    "build_system",
    "catalog",
    "class_data",
    "closure",
    "compare_catalogs",
    "configuration_of",
    "configurations",
    "eval_word",
    "generating_tuple",
    "is_normal_set",
    "is_refinement",
    "meet",
    "named_group",
    "pieces_bound",
    "pullback_partition",
    "similar",
    "solve",
    "stabilized_configurations",
    "two_sided_configurations",
    "verify_decomposition",
]
