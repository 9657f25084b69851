"""Walking point location in convex planar subdivisions."""

from ._core import (
    CelestialError,
    Mesh,
    chord_split_subdivision,
    close_convex_hull,
    delaunay_triangulate,
    hex_grid,
    locate,
    obtuse_fraction,
    orient,
    random_delaunay,
    random_flipped,
    run_batch,
    scaling_experiment,
)

__all__ = [
    "CelestialError",
    "Mesh",
    "chord_split_subdivision",
    "close_convex_hull",
    "delaunay_triangulate",
    "hex_grid",
    "locate",
    "obtuse_fraction",
    "orient",
    "random_delaunay",
    "random_flipped",
    "run_batch",
    "scaling_experiment",
]
