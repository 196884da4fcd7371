"""Triangulated 3-manifolds: normal surfaces, crushing and prime decomposition."""

from ._crushkit import (
    InadmissibleSurface,
    InvariantFailure,
    ParseError,
    PreconditionError,
    Triangulation,
    classify,
    closed_census,
    components,
    crush,
    crush_sequential,
    decompose,
    find_nontrivial_sphere,
    h1,
    invalid_edges,
    is_isomorphic,
    is_orientable,
    is_zero_efficient,
    quad_vertex_surfaces,
    recognize,
    vertex_count,
    vertex_link,
)

__all__ = [
    "InadmissibleSurface",
    "InvariantFailure",
    "ParseError",
    "PreconditionError",
    "Triangulation",
    "classify",
    "closed_census",
    "components",
    "crush",
    "crush_sequential",
    "decompose",
    "find_nontrivial_sphere",
    "h1",
    "invalid_edges",
    "is_isomorphic",
    "is_orientable",
    "is_zero_efficient",
    "quad_vertex_surfaces",
    "recognize",
    "vertex_count",
    "vertex_link",
]
