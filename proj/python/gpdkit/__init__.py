"""Finite groupoids, self-similar actions, and Fell bundles."""

from _gpdkit import (  # noqa: F401
    Document,
    ParseError,
    StructureError,
    __version__,
    algebra,
    check,
    dr,
    equiv,
    example,
    example_names,
    fell_bimodule,
    groupoid_size,
    parse,
    product,
    quotient,
    run_cli,
    validate_groupoid,
)

__all__ = [
    "Document",
    "ParseError",
    "StructureError",
    "__version__",
    "algebra",
    "check",
    "dr",
    "equiv",
    "example",
    "example_names",
    "fell_bimodule",
    "groupoid_size",
    "parse",
    "product",
    "quotient",
    "run_cli",
    "validate_groupoid",
]
