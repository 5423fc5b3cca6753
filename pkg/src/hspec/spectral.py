"""Spectral density S(x) = f / ((x - g)^2 + f^2) / pi and its integral.

For nonnegative ``f`` the density is nonnegative and looks like a
Lorentzian of width ~ f(r) around each root ``r`` of ``x = g(x)``.  Those
roots are located first and used to seed the adaptive partition, so narrow
peaks (small ``alpha``, or roots close to a support edge) are not missed.

Roots where ``f(r) = 0`` ("delta roots") carry no integrable mass; they are
reported together with the weight ``1 / |1 - g'(r)|`` a Lorentzian of
vanishing width would have there.  For every catalog pair the integral plus
the delta weights adds up to 1, which is a useful independent check.
"""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from scipy.optimize import brentq

from .catalog import DecayClass, TransformPair
from .errors import PreconditionFailed
from .quadrature import Mapping, QuadratureSpec, integrate

DELTA_POINT = math.nan
"""Value of :func:`spectral_density` where ``f = 0`` and ``x = g(x)``."""

MIN_HALF_WIDTH = 1e-8
_U_CLAMP = 1e-12


@dataclass
class SpectralReport:
    integral: float
    err_estimate: float
    peaks: list[tuple[float, float]] = field(default_factory=list)
    subdivisions_used: int = 0
    delta_roots: list[float] = field(default_factory=list)
    delta_weights: list[float] = field(default_factory=list)
    converged: bool = True
    min_density: float = 0.0
    label: str = ""

    @property
    def sum_rule(self) -> float:
        """Integral plus the weights of the delta roots."""
        return self.integral + math.fsum(self.delta_weights)


def _raw_density(pair, x):
    f = np.asarray(pair.f(x), dtype=float)
    g = np.asarray(pair.g(x), dtype=float)
    d = x - g
    with np.errstate(over="ignore", invalid="ignore", divide="ignore"):
        # (f/h)/h with h = hypot(d, f): no underflow of d^2 + f^2 near narrow peaks
        h = np.hypot(d, f)
        s = (f / h) / h / math.pi
    s = np.where(np.isinf(g), 0.0, s)
    s = np.where((f == 0.0) & (d != 0.0), 0.0, s)
    return s


def spectral_density(pair: TransformPair, x):
    """Evaluate ``S(x)`` for scalars or arrays.

    Where ``g`` is infinite the limit value 0 is returned; where ``f = 0``
    and ``x = g(x)`` the density is undefined and :data:`DELTA_POINT` (NaN)
    is returned.
    """
    x = np.asarray(x, dtype=float)
    s = _raw_density(pair, x)
    return float(s) if s.ndim == 0 else s


def _integrand_density(pair, x):
    # delta points are a null set for the integral
    s = _raw_density(pair, x)
    return np.where(np.isnan(s), 0.0, s)


# Root location ----------------------------------------------------------------

def _special_points(pair):
    pts = set(pair.singular_points) | set(pair.kinks)
    if pair.support is not None:
        pts |= set(pair.support)
    return sorted(pts)


def _scan_grid(pair, radius):
    pos = [np.linspace(0.0, min(radius, 50.0), 20001),
           np.geomspace(1e-12, radius, 4001)]
    for p in _special_points(pair):
        offs = np.geomspace(1e-15, 1.0, 400)
        pos.append(np.abs(p) + offs)
        pos.append(np.abs(p) - offs)
    half = np.concatenate(pos)
    half = half[(half >= 0) & (half <= radius)]
    grid = np.unique(np.concatenate([-half, half]))
    return grid


def _h(pair, x):
    return x - np.asarray(pair.g(x), dtype=float)


def locate_peaks(pair: TransformPair, search_radius: float) -> list[tuple[float, float]]:
    """Roots of ``x - g(x) = 0`` in ``[-search_radius, search_radius]``.

    A dense scan (clustered near the origin, support edges and singular
    points) brackets sign changes, which are then refined with Brent's
    method to full double precision. Brackets that straddle a pole of ``g``
    are discarded. Returns ``(location, half_width)`` with
    ``half_width = max(f(r), 1e-8)``; delta roots are included.
    """
    if not search_radius > 0:
        raise ValueError("search_radius must be positive")
    x = _scan_grid(pair, float(search_radius))
    h = _h(pair, x)
    ok = np.isfinite(h)
    x, h = x[ok], h[ok]

    roots = list(x[h == 0.0])
    sgn = np.sign(h)
    idx = np.flatnonzero(sgn[:-1] * sgn[1:] < 0)
    func = lambda t: float(_h(pair, t))  # noqa: E731
    for i in idx:
        a, b = x[i], x[i + 1]
        r = brentq(func, a, b, xtol=1e-300, rtol=4 * np.finfo(float).eps, maxiter=500)
        # reject jumps through a pole of g
        if abs(func(r)) > 1e-8 * (1.0 + abs(r)):
            continue
        roots.append(r)

    if not roots:
        return []
    roots = np.unique(np.asarray(roots, dtype=float))
    widths = np.maximum(np.asarray(pair.f(roots), dtype=float), MIN_HALF_WIDTH)
    return [(float(r), float(w)) for r, w in _merge_clusters(roots, widths, pair.f)]


def _merge_clusters(roots, widths, f):
    """Collapse runs of roots closer than 1/8 of their width.

    Near a multiple root rounding noise in ``x - g(x)`` produces many
    spurious sign changes; they all describe one peak. Runs are only merged
    among roots of the same kind (``f > 0`` or ``f = 0``). The middle root of
    each run is kept.
    """
    kinds = np.asarray(f(roots), dtype=float) > 0
    runs = [[0]]
    for i in range(1, len(roots)):
        j = runs[-1][-1]
        close = roots[i] - roots[j] < min(widths[i], widths[j]) / 8.0
        if close and kinds[i] == kinds[j]:
            runs[-1].append(i)
        else:
            runs.append([i])
    return [(roots[run[len(run) // 2]], widths[run[len(run) // 2]]) for run in runs]


def default_search_radius(pair: TransformPair) -> float:
    """Radius that contains every root of ``x = g(x)``.

    Any root satisfies ``|r| = |g(r)|``, so twice the largest ``|g|`` seen on
    a broad sample is enough; the floor of 10 covers support edges.
    """
    if pair.decay_class is DecayClass.NON_DECAYING:
        # |g| grows without bound; only the origin and |x| ~ scale^2 matter
        return max(10.0, 10.0 * pair.scale ** 2)
    x = np.concatenate([np.linspace(-20, 20, 4001), np.geomspace(20, 1e8, 400),
                        -np.geomspace(20, 1e8, 400)])
    g = np.abs(np.asarray(pair.g(x), dtype=float))
    gmax = float(np.max(g[np.isfinite(g)]))
    return max(10.0, 2.0 * gmax)


def _slope(pair, r):
    """Derivative of g at r, or inf if the difference quotients blow up."""
    others = [abs(r - p) for p in _special_points(pair) if abs(r - p) > 0]
    reach = min([1e-3 * max(1.0, abs(r))] + [0.25 * d for d in others])
    steps = reach * np.array([1.0, 1e-1, 1e-2, 1e-3])
    quot = np.array([(float(pair.g(r + s)) - float(pair.g(r - s))) / (2 * s) for s in steps])
    if not np.all(np.isfinite(quot)):
        return math.inf
    mag = np.abs(quot)
    if mag[-1] > 2.0 * mag[-2] and mag[-2] > 2.0 * mag[-3]:
        return math.inf
    return float(quot[-1])


def delta_weight(pair: TransformPair, r: float) -> float:
    """Weight ``1/|1 - g'(r)|`` of a root where ``f(r) = 0``."""
    slope = _slope(pair, r)
    if not math.isfinite(slope):
        return 0.0
    return 1.0 / abs(1.0 - slope)


# Integration ------------------------------------------------------------------

def _peak_seeds(r, w, span):
    pts = [r + w * k / 8.0 for k in range(-8, 9)]
    s = 2.0 * w
    while s < span:
        pts += [r - s, r + s]
        s *= 2.0
    s = w / 2.0
    for _ in range(40):
        pts += [r - s, r + s]
        s /= 2.0
    return pts


def _edge_cluster(p):
    offs = 2.0 ** -np.arange(1, 52)
    return list(p - offs) + list(p + offs)


def _x_breakpoints(pair, peaks, span):
    pts = []
    for r, w in peaks:
        pts += _peak_seeds(r, w, span)
    for p in _special_points(pair):
        pts += [p] + _edge_cluster(p)
    return np.asarray(pts, dtype=float)


def _resolve_mapping(pair, quad):
    mapping = quad.mapping
    if mapping is None:
        mapping = Mapping.SUPPORT_ONLY if pair.compact else Mapping.TAN_FULL_LINE
    if mapping is Mapping.SUPPORT_ONLY and not pair.compact:
        raise PreconditionFailed("SUPPORT_ONLY mapping needs a pair with compact support")
    return mapping


class _HybridMap:
    """Coordinate ``v`` that is ``x`` itself on ``[-core, core]`` and
    ``tan``-compressed beyond, so the real line maps onto a finite interval.

    Peaks live inside the core, where node positions carry no ``tan``
    rounding noise; only the smooth tails are compressed.
    """

    def __init__(self, core):
        self.core = core
        self.base = math.atan(core)
        self.end = core + (math.pi / 2 - self.base) - _U_CLAMP

    def to_x(self, v):
        av = np.abs(v)
        out = np.tan(self.base + (av - self.core))
        return np.where(av <= self.core, v, np.copysign(out, v))

    def jacobian(self, x):
        return np.where(np.abs(x) <= self.core, 1.0, 1.0 + x * x)

    def from_x(self, x):
        ax = np.abs(x)
        out = self.core + np.arctan(ax) - self.base
        return np.where(ax <= self.core, x, np.copysign(out, x))


def spectral_integral(pair: TransformPair, quad: QuadratureSpec = QuadratureSpec(),
                      search_radius: Optional[float] = None) -> SpectralReport:
    """Integrate ``S`` over the real line.

    * compact pairs (``SUPPORT_ONLY``): only the support is integrated, since
      ``S`` vanishes wherever ``f`` does;
    * full-line pairs (``TAN_FULL_LINE``): the identity on a core interval
      holding every root, ``tan`` compression outside it, clamped ``1e-12``
      short of the ends of the mapped range;
    * non-decaying pairs (square-root family): first ``x = scale^2 y^2``,
      which turns the slowly decaying density into an ``O(1/y^2)``
      integrand in ``y``, then the same mapping for ``y``.

    The partition is pre-seeded at every root of ``x = g(x)`` with 16
    intervals across ``r +- half_width`` plus geometric refinement in and
    out of the peak.
    """
    mapping = _resolve_mapping(pair, quad)
    radius = search_radius if search_radius is not None else default_search_radius(pair)
    roots = locate_peaks(pair, radius)
    fvals = [float(pair.f(r)) for r, _ in roots]
    peaks = [(r, w) for (r, w), fv in zip(roots, fvals) if fv > 0]
    deltas = [r for (r, _), fv in zip(roots, fvals) if fv == 0]
    weights = [delta_weight(pair, r) for r in deltas]

    nondecaying = pair.decay_class is DecayClass.NON_DECAYING
    half = quad.exploit_symmetry or nondecaying
    xs = _x_breakpoints(pair, peaks, radius)

    if mapping is Mapping.SUPPORT_ONLY:
        def integrand(x):
            return _integrand_density(pair, x)

        vs = xs
        lo, hi = pair.support
    else:
        s2 = pair.scale ** 2
        if nondecaying:
            # breakpoints and roots move to y = sqrt(|x|)/scale
            xs = np.sqrt(np.abs(xs) / s2)
            extent = [math.sqrt(abs(r) / s2) for r, _ in roots]
        else:
            extent = [abs(r) for r, _ in roots]
        hmap = _HybridMap(max([1.0] + [e + 2.0 for e in extent]))

        def integrand(v):
            y = hmap.to_x(v)
            jac = hmap.jacobian(y)
            if nondecaying:
                return _integrand_density(pair, s2 * y * y) * (2.0 * s2 * np.abs(y)) * jac
            return _integrand_density(pair, y) * jac

        vs = np.concatenate([hmap.from_x(xs), [-hmap.core, hmap.core]])
        lo, hi = -hmap.end, hmap.end

    if half:
        lo = max(lo, 0.0)
        # the doubled result must still meet the caller's absolute tolerance
        quad = dataclasses.replace(quad, abs_tol=quad.abs_tol / 2.0)
    base = np.linspace(lo, hi, 17)
    vs = vs[(vs > lo) & (vs < hi)]
    result = integrate(integrand, np.concatenate([base, vs]), quad)
    value, err = result.value, result.err_estimate
    if mapping is not Mapping.SUPPORT_ONLY:
        # the clamped slivers at the ends of the mapped range, where the
        # mapped integrand is close to constant
        ends = [hi] if half else [lo, hi]
        sliver = _U_CLAMP * float(np.sum(integrand(np.array(ends))))
        value += sliver
        err += abs(sliver)

    # a peak narrower than the seeding floor may be invisible to every
    # sample; its mass is then unaccounted for, so do not claim convergence
    converged = result.converged
    for (r, _), fv in zip(roots, fvals):
        if 0 < fv < MIN_HALF_WIDTH and (not half or r >= 0):
            converged = False
            err += delta_weight(pair, r) / (2.0 if half and r == 0 else 1.0)

    factor = 2.0 if half else 1.0
    return SpectralReport(
        integral=factor * value,
        err_estimate=factor * err,
        peaks=peaks,
        subdivisions_used=result.subdivisions,
        delta_roots=deltas,
        delta_weights=weights,
        converged=converged,
        min_density=result.min_sample,
        label=pair.label,
    )
