"""Finite ultrametric spaces attaining equality in the Gomory-Hu inequality."""

from .core import (
    PROFILES,
    UltraSpace,
    diameter,
    is_in_u,
    random_space,
    spectrum,
    validate_ultrametric,
)
from .counting import enumerate_sb_trees, otter_count, realize_space_from_tree
from .gh import (
    gh_distance,
    inflate_point,
    nearby_extremal,
    perturb_to_u,
    sample_neighbors,
    spectrum_separation,
    stability_radius,
)
from .graphs import (
    characterize_u_by_graphs,
    is_complete_bipartite,
    level_graph,
    multipartite_parts,
    strip_isolated,
)
from .trees import (
    Bijection,
    ball_family,
    build_representing_tree,
    canonical_code,
    check_strictly_binary_distinct,
    find_ball_preserving_bijection,
    is_ball_preserving,
    tree_distance,
    trees_isomorphic,
)

__version__ = "0.1.0"
