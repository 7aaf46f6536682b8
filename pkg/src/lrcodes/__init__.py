"""Locally repairable codes: construction, exhaustive verification, repair."""

__version__ = "0.1.0"

from .gf import F4, FieldSpec, field_make, field_of_order  # noqa: E402
from .linalg import FieldMatrix, circuits, parity_check, rank  # noqa: E402
from .construction import (  # noqa: E402
    CodeParams,
    LinearLrcCode,
    build,
    build_with_replication,
    construct,
    feasibility,
    minimum_guaranteed_q,
    verify_selection_property,
)
from .analysis import (  # noqa: E402
    CodeReport,
    analyze,
    d_opt,
    min_distance_bruteforce,
    min_distance_circuits,
    predicted_distance,
    sweep,
)
from .f4family import OperatorMatrix, family_matrix, verify_family  # noqa: E402

__all__ = [
    "F4", "FieldSpec", "field_make", "field_of_order",
    "FieldMatrix", "circuits", "parity_check", "rank",
    "CodeParams", "LinearLrcCode", "build", "build_with_replication", "construct",
    "feasibility", "minimum_guaranteed_q", "verify_selection_property",
    "CodeReport", "analyze", "d_opt", "min_distance_bruteforce", "min_distance_circuits",
    "predicted_distance", "sweep",
    "OperatorMatrix", "family_matrix", "verify_family",
]
