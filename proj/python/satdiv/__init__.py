"""Diverse satisfying assignments for CNF-SAT formulas."""

from ._core import (
    ConfigError,
    DimacsParseError,
    Formula,
    GenerationError,
    RunResult,
    SolverError,
    TrajectoryPoint,
    __version__,
    bitflip_fixset,
    blocking_clause,
    contribution,
    entropy,
    enumerate_models,
    fixset_crossover,
    fixset_mutation,
    generate_satisfiable,
    kruskal_wallis,
    least_contributor,
    max_entropy,
    occurrence_counts,
    parse_dimacs,
    run,
    solve,
)

__all__ = [
    "ConfigError",
    "DimacsParseError",
    "Formula",
    "GenerationError",
    "RunResult",
    "SolverError",
    "TrajectoryPoint",
    "__version__",
    "bitflip_fixset",
    "blocking_clause",
    "contribution",
    "entropy",
    "enumerate_models",
    "fixset_crossover",
    "fixset_mutation",
    "generate_satisfiable",
    "kruskal_wallis",
    "least_contributor",
    "max_entropy",
    "occurrence_counts",
    "parse_dimacs",
    "run",
    "solve",
]
