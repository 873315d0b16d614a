"""Exact k-neighbour TSP solver for Halin graphs (C++ core)."""

from ._halintsp import (
    HalinError,
    brute_solve,
    generate_random,
    generate_wheel,
    reduce_3sat,
    sat_brute,
    solve,
    tour_objective,
    validate,
)

__all__ = [
    "HalinError",
    "brute_solve",
    "generate_random",
    "generate_wheel",
    "reduce_3sat",
    "sat_brute",
    "solve",
    "tour_objective",
    "validate",
]
