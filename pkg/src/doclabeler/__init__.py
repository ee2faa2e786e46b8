"""doclabeler: semi-automatic annotation workbench for born-digital PDF catalogs."""

__version__ = "0.1.0"

from .model import (  # noqa: F401
    EvalReport,
    LabelSchema,
    Page,
    Project,
    Provenance,
    Quad,
    SchemaLabel,
    Segment,
    Split,
    TypeMetrics,
    UNLABELED,
    default_schema,
    load_project,
    save_project,
    validate_project,
)
