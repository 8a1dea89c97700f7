"""Tree metric learning: TreeRep, neighbor joining, MST, evaluation and embeddings."""

from ._core import (
    Tree,
    average_distortion,
    delta_hyperbolicity,
    map_score,
    mst,
    neighbor_join,
    optimal_scale,
    poincare_distance,
    random_tree_metric,
    refine,
    sample_hyperboloid,
    sarkar_embed,
    treerep,
)

__all__ = [
    "Tree",
    "average_distortion",
    "delta_hyperbolicity",
    "map_score",
    "mst",
    "neighbor_join",
    "optimal_scale",
    "poincare_distance",
    "random_tree_metric",
    "refine",
    "sample_hyperboloid",
    "sarkar_embed",
    "treerep",
]
