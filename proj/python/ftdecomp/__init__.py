"""Python bindings for the ftdecomp core library.

Documents (catalogs, databases, models, graphs, reports) are plain dicts in
the same shape as the JSON files the command-line tool reads and writes.
"""

from ._core import (
    FtdecompError,
    __version__,
    analyze,
    default_catalog,
    evaluate,
    generate_url,
    instability,
    load_catalog,
    load_database,
    metrics,
    render_card,
    round_tenths,
    slug,
    update_weight,
    validate_catalog,
    weights_view,
)

__all__ = [
    "FtdecompError",
    "__version__",
    "analyze",
    "default_catalog",
    "evaluate",
    "generate_url",
    "instability",
    "load_catalog",
    "load_database",
    "metrics",
    "render_card",
    "round_tenths",
    "slug",
    "update_weight",
    "validate_catalog",
    "weights_view",
]
