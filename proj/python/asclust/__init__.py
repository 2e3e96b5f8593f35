"""Convex clustering paths with adaptive sieving."""

from ._asclust import (
    Edge,
    ProblemInstance,
    build_knn_graph,
    default_lambda_grid,
    extract_labels,
    gen_two_half_moons,
    kkt_residual,
    label_agreement,
    load_matrix,
    primal_objective,
    solve,
    solve_full,
    solve_path,
)

__all__ = [
    "Edge",
    "ProblemInstance",
    "build_knn_graph",
    "default_lambda_grid",
    "extract_labels",
    "gen_two_half_moons",
    "kkt_residual",
    "label_agreement",
    "load_matrix",
    "primal_objective",
    "solve",
    "solve_full",
    "solve_path",
]
