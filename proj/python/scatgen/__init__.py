"""Scatterplot generation from target scagnostic measures."""

from ._scatgen import (
    clone_targets,
    compute_scagnostics,
    generate,
    gsa_minimize,
    loss,
    measure_names,
    rmse,
)

__all__ = [
    "clone_targets",
    "compute_scagnostics",
    "generate",
    "gsa_minimize",
    "loss",
    "measure_names",
    "rmse",
]
