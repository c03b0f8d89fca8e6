"""Petford-Welsh randomized graph coloring."""
from ._backend import NAME as backend
from .graph import (
    GenerationError,
    Graph,
    GraphError,
    degree_to_p,
    expected_average_degree,
    generate_partite,
    generate_regular,
    read_graph,
    write_graph,
)
from .kernel import (
    Coloring,
    ConflictState,
    basis_from_temperature,
    color_distribution,
    energy,
    neighbor_color_counts,
    recolor,
    sample_color,
    temperature_from_basis,
)
from .solvers import (
    RunResult,
    SolverParams,
    mppw,
    mppw_phase1,
    naive_parallel_pw,
    sequential_pw,
    solve,
)

__all__ = [
    "backend", "Graph", "GraphError", "GenerationError", "generate_partite",
    "generate_regular", "expected_average_degree", "degree_to_p", "read_graph",
    "write_graph", "Coloring", "ConflictState", "energy", "neighbor_color_counts",
    "color_distribution", "sample_color", "recolor", "basis_from_temperature",
    "temperature_from_basis", "SolverParams", "RunResult", "sequential_pw",
    "naive_parallel_pw", "mppw_phase1", "mppw", "solve",
]
