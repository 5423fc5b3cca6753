"""Parameter sweeps and reproduction of the published spectral-integral values."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .catalog import CatalogFamily, Family, combine, resolve
from .errors import PreconditionFailed
from .quadrature import QuadratureSpec
from .spectral import SpectralReport, spectral_integral

# deviation from 1 beyond which the identity counts as failed
IDENTITY_TOL = 0.01

# quadrature used for threshold bisection; far below the indicator scale
THRESHOLD_QUAD = QuadratureSpec(abs_tol=1e-8, rel_tol=1e-8)

EXAMPLE_FAMILIES = {1: Family.SQRT, 2: Family.LORENTZIAN, 3: Family.RATIONAL_PEAK}


def example_closed_form(n: int, alpha: float) -> float:
    """Exact spectral integral of worked examples 1-3."""
    if n in (1, 2):
        return 1.0
    if n == 3:
        return alpha / (2.0 + alpha)
    raise ValueError(f"example number must be 1, 2 or 3, got {n!r}")


@dataclass
class TableRow:
    label: str
    paper_value: float
    computed_value: float
    tolerance: float
    err_estimate: float = 0.0
    converged: bool = True
    # rows that only record a claim do not decide the overall verdict
    gating: bool = True

    @property
    def abs_diff(self) -> float:
        return abs(self.computed_value - self.paper_value)

    @property
    def passed(self) -> bool:
        return self.converged and self.abs_diff <= self.tolerance


@dataclass
class TableComparison:
    title: str
    rows: list[TableRow] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.rows if r.gating)


@dataclass
class SweepResult:
    family: CatalogFamily
    points: list[tuple[float, float, float]] = field(default_factory=list)
    threshold_bracket: Optional[tuple[float, float]] = None
    converged: list[bool] = field(default_factory=list)


def _integral(template: CatalogFamily, alpha: float, quad: QuadratureSpec) -> SpectralReport:
    return spectral_integral(resolve(template.with_alpha(alpha)), quad)


def run_example(n: int, alphas: Iterable[float], quad: QuadratureSpec = QuadratureSpec(),
                tolerance: Optional[float] = None) -> TableComparison:
    """Compare computed integrals of example ``n`` with their closed forms.

    Each row's tolerance is the quadrature error estimate unless an explicit
    ``tolerance`` is given.
    """
    closed = example_closed_form(n, 1.0)  # validates n
    table = TableComparison(f"Example {n}: {EXAMPLE_FAMILIES[n].value}")
    for alpha in alphas:
        closed = example_closed_form(n, alpha)
        rep = spectral_integral(resolve(CatalogFamily(EXAMPLE_FAMILIES[n], alpha)), quad)
        tol = rep.err_estimate if tolerance is None else tolerance
        table.rows.append(TableRow(f"I(alpha={alpha:g})", closed, rep.integral, tol,
                                   rep.err_estimate, rep.converged))
    return table


def sweep_alpha(family: CatalogFamily, alphas: Sequence[float],
                quad: QuadratureSpec = QuadratureSpec(),
                identity_tol: float = IDENTITY_TOL) -> SweepResult:
    """Spectral integral at each ``alpha``; records the first switch from
    ``|I - 1| <= identity_tol`` to ``|I - 1| > identity_tol``."""
    alphas = [float(a) for a in alphas]
    if any(a <= 0 for a in alphas):
        raise ValueError("alphas must be positive")
    if any(b <= a for a, b in zip(alphas, alphas[1:])):
        raise ValueError("alphas must be strictly increasing")
    result = SweepResult(family)
    for alpha in alphas:
        rep = _integral(family, alpha, quad)
        result.points.append((alpha, rep.integral, rep.err_estimate))
        result.converged.append(rep.converged)
    for (a0, i0, _), (a1, i1, _) in zip(result.points, result.points[1:]):
        if abs(i0 - 1.0) <= identity_tol < abs(i1 - 1.0):
            result.threshold_bracket = (a0, a1)
            break
    return result


def detect_threshold(family: CatalogFamily, alpha_lo: float, alpha_hi: float,
                     bracket_width: float = 0.01, quad: QuadratureSpec = THRESHOLD_QUAD,
                     identity_tol: float = IDENTITY_TOL) -> tuple[float, float]:
    """Bisect on ``|I(alpha) - 1| > identity_tol`` down to ``bracket_width``.

    Raises :class:`PreconditionFailed` unless the identity holds at
    ``alpha_lo`` and fails at ``alpha_hi``.
    """
    if not (0 < alpha_lo < alpha_hi) or not bracket_width > 0:
        raise ValueError("need 0 < alpha_lo < alpha_hi and a positive bracket width")

    def fails(alpha):
        return abs(_integral(family, alpha, quad).integral - 1.0) > identity_tol

    if fails(alpha_lo) or not fails(alpha_hi):
        raise PreconditionFailed(
            f"[{alpha_lo:g}, {alpha_hi:g}] does not straddle a failure of the identity")
    lo, hi = alpha_lo, alpha_hi
    while hi - lo > bracket_width:
        mid = 0.5 * (lo + hi)
        if fails(mid):
            hi = mid
        else:
            lo = mid
    return lo, hi


def sum_decomposition(f1: CatalogFamily, f2: CatalogFamily,
                      quad: QuadratureSpec = QuadratureSpec()) -> SpectralReport:
    """Spectral integral of ``f1 + f2``, whose transform is ``g1 + g2``."""
    return spectral_integral(combine(resolve(f1), resolve(f2)), quad)


# Published values -------------------------------------------------------------

EXAMPLE_ALPHAS = (0.01, 0.1, 1.0, 10.0, 100.0)

# (alpha, printed value, tolerance = half a unit in the last printed digit,
# 9-digit entries 1e-6, 0.999476 widened to 5e-4 as in the acceptance list)
RECTANGLE_TABLE = (
    (1e-5, 0.999999680, 1e-6),
    (0.1, 0.999476, 5e-4),
    (0.5, 0.955, 5e-4),
    (0.65, 0.8644, 5e-4),
    (1.0, 0.6225, 5e-4),
    (5.0, 0.1112, 5e-4),
    (10.0, 0.0540, 5e-4),
)
TRIANGLE_TABLE = (
    (0.5, 1.0, 1e-6),
    (1.0, 1.0, 1e-6),
    (2.0, 1.0, 1e-6),
    (2.26, 1.0, 1e-6),
    (2.27, 0.6945, 1e-2),
    (3.0, 0.2799, 5e-3),
)
GAUSSIAN_ALPHAS = (0.0001, 1.0, 40.0)
VALLEY_POINTS = tuple((a, b) for a in (0.001, 1.0, 10.0) for b in (0.001, 1.0, 10.0)) + ((9999.0, 1.0),)
THRESHOLD_SEARCH = (2.0, 3.0, 0.01)
# published threshold lies between 2.26 (holds) and 2.27 (fails)
THRESHOLD_PUBLISHED_MID = 2.265
THRESHOLD_TOL = 0.03
SUM_LORENTZIAN_ALPHAS = (0.01, 0.1, 1.0)
SUM_CLAIM_TOL = 1e-3


def _identity_table(title, families, quad, tol=1e-6):
    table = TableComparison(title)
    for fam in families:
        rep = spectral_integral(resolve(fam), quad)
        label = f"I(alpha={fam.alpha:g}" + (f", b={fam.b:g})" if fam.b is not None else ")")
        table.rows.append(TableRow(label, 1.0, rep.integral, tol, rep.err_estimate, rep.converged))
    return table


def _valued_table(title, family_id, entries, quad):
    table = TableComparison(title)
    for alpha, printed, tol in entries:
        rep = spectral_integral(resolve(CatalogFamily(family_id, alpha)), quad)
        table.rows.append(TableRow(f"I({alpha:g})", printed, rep.integral, tol,
                                   rep.err_estimate, rep.converged))
    return table


def sum_claim_table(quad: QuadratureSpec = QuadratureSpec()) -> TableComparison:
    """Rectangle (alpha=1) plus a small Lorentzian, against the predicted 1.

    The prediction is recorded, not relied on: rows are non-gating and say
    whether the computation agrees.
    """
    table = TableComparison("Sum decomposition: rectangle(1) + lorentzian(a)")
    rect = CatalogFamily(Family.RECTANGLE, 1.0)
    for a in SUM_LORENTZIAN_ALPHAS:
        rep = sum_decomposition(rect, CatalogFamily(Family.LORENTZIAN, a), quad)
        table.rows.append(TableRow(f"I(rect 1 + lorentzian {a:g})", 1.0, rep.integral,
                                   SUM_CLAIM_TOL, rep.err_estimate, rep.converged, gating=False))
    return table


def threshold_table(quad: QuadratureSpec = THRESHOLD_QUAD) -> TableComparison:
    lo, hi, width = THRESHOLD_SEARCH
    a_lo, a_hi = detect_threshold(CatalogFamily(Family.TRIANGLE, 1.0), lo, hi, width, quad)
    table = TableComparison(f"Triangle threshold bracket [{a_lo:.6f}, {a_hi:.6f}]")
    table.rows.append(TableRow("bracket midpoint", THRESHOLD_PUBLISHED_MID, 0.5 * (a_lo + a_hi),
                               THRESHOLD_TOL))
    return table


def reproduce_all(quad: QuadratureSpec = QuadratureSpec()) -> list[TableComparison]:
    """Every published value as a table of pass/fail rows. Never raises for
    a failed comparison; failures are rows."""
    tables = [run_example(n, EXAMPLE_ALPHAS, quad) for n in (1, 2, 3)]
    tables.append(_identity_table(
        "Gaussian", [CatalogFamily(Family.GAUSSIAN, a) for a in GAUSSIAN_ALPHAS], quad))
    tables.append(_identity_table(
        "Valley", [CatalogFamily(Family.VALLEY, a, b) for a, b in VALLEY_POINTS], quad))
    tables.append(_valued_table("Rectangle", Family.RECTANGLE, RECTANGLE_TABLE, quad))
    tables.append(_valued_table("Triangle (peak)", Family.TRIANGLE, TRIANGLE_TABLE, quad))
    tables.append(threshold_table())
    tables.append(sum_claim_table(quad))
    return tables


def all_passed(tables: Iterable[TableComparison]) -> bool:
    return all(t.passed for t in tables)


def is_monotone_decreasing(values: Sequence[float]) -> bool:
    return all(b < a for a, b in zip(values, values[1:])) and not any(map(math.isnan, values))
