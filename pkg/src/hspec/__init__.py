"""Hilbert-transform pairs, principal-value transforms and spectral integrals."""

from .catalog import CatalogFamily, DecayClass, Family, TransformPair, combine, resolve
from .errors import GridTooSmall, HspecError, NonConvergenceWarning, PreconditionFailed
from .hilbert import GridFunction, PvWindow, hilbert_grid, hilbert_grid_error, hilbert_pv
from .quadrature import Mapping, QuadratureSpec, integrate
from .special import dawson_like
from .spectral import SpectralReport, locate_peaks, spectral_density, spectral_integral
from .experiments import (
    SweepResult,
    TableComparison,
    TableRow,
    detect_threshold,
    reproduce_all,
    run_example,
    sum_decomposition,
    sweep_alpha,
)

__all__ = [
    "CatalogFamily", "DecayClass", "Family", "TransformPair", "combine", "resolve",
    "GridTooSmall", "HspecError", "NonConvergenceWarning", "PreconditionFailed",
    "GridFunction", "PvWindow", "hilbert_grid", "hilbert_grid_error", "hilbert_pv",
    "Mapping", "QuadratureSpec", "integrate", "dawson_like",
    "SpectralReport", "locate_peaks", "spectral_density", "spectral_integral",
    "SweepResult", "TableComparison", "TableRow", "detect_threshold", "reproduce_all",
    "run_example", "sum_decomposition", "sweep_alpha",
]
