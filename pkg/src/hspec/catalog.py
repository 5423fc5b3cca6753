"""Analytic f/g Hilbert-transform pairs.

Every pair uses the transform convention

    g(x) = (1/pi) PV int f(t) / (x - t) dt

so that ``f = 1/(x^2+1)`` maps to ``g = x/(x^2+1)``.  All ``f`` are even and
nonnegative, all ``g`` are odd, and every ``g`` is linear in the scale
factor ``alpha``.

Evaluators accept scalars or numpy arrays.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np
from scipy.special import xlogy

from .special import dawson_like

Evaluator = Callable[[np.ndarray], np.ndarray]


class Family(str, enum.Enum):
    SQRT = "sqrt"
    LORENTZIAN = "lorentzian"
    RATIONAL_PEAK = "rational_peak"
    GAUSSIAN = "gaussian"
    VALLEY = "valley"
    RECTANGLE = "rectangle"
    TRIANGLE = "triangle"


class DecayClass(str, enum.Enum):
    NON_DECAYING = "non_decaying"
    POLYNOMIAL = "polynomial"
    EXPONENTIAL = "exponential"
    COMPACT = "compact"


# slowest first; used when combining pairs
_DECAY_ORDER = [DecayClass.NON_DECAYING, DecayClass.POLYNOMIAL,
                DecayClass.EXPONENTIAL, DecayClass.COMPACT]


@dataclass(frozen=True)
class CatalogFamily:
    """A catalog family with its parameters.

    ``b`` is required for ``VALLEY`` and must be ``None`` otherwise.
    """

    family_id: Family
    alpha: float
    b: Optional[float] = None

    def __post_init__(self):
        object.__setattr__(self, "family_id", Family(self.family_id))
        validate_parameters(self.family_id, self.alpha, self.b)

    def with_alpha(self, alpha: float) -> "CatalogFamily":
        return CatalogFamily(self.family_id, alpha, self.b)


def validate_parameters(family_id: Family, alpha: float, b: Optional[float]) -> None:
    """Raise ``ValueError`` if ``alpha``/``b`` are not valid for the family."""
    family_id = Family(family_id)
    if not (isinstance(alpha, (int, float)) and math.isfinite(alpha) and alpha > 0):
        raise ValueError(f"alpha must be a finite positive number, got {alpha!r}")
    if family_id is Family.VALLEY:
        if b is None:
            raise ValueError("family 'valley' requires parameter b")
        if not (math.isfinite(b) and b > 0):
            raise ValueError(f"b must be a finite positive number, got {b!r}")
    elif b is not None:
        raise ValueError(f"parameter b is only valid for 'valley', not {family_id.value!r}")


@dataclass(frozen=True)
class TransformPair:
    """A function ``f`` together with its Hilbert transform ``g``.

    ``support`` is ``None`` for the full line, otherwise a closed interval
    outside of which ``f`` is exactly zero. ``singular_points`` lists where
    ``g`` has a logarithmic or removable feature; ``kinks`` lists where ``f``
    itself is not smooth. Both are used as quadrature breakpoints.
    ``scale`` is the characteristic amplitude (``alpha`` for catalog pairs).
    """

    f: Evaluator
    g: Evaluator
    decay_class: DecayClass
    support: Optional[tuple[float, float]] = None
    singular_points: tuple[float, ...] = ()
    kinks: tuple[float, ...] = ()
    scale: float = 1.0
    label: str = ""
    f_parity: str = field(default="even")
    g_parity: str = field(default="odd")

    @property
    def compact(self) -> bool:
        return self.support is not None

    def __add__(self, other: "TransformPair") -> "TransformPair":
        return combine(self, other)


def _as_array(x):
    return np.asarray(x, dtype=float)


def _out(arr):
    return float(arr) if np.ndim(arr) == 0 else arr


def _sqrt_pair(alpha):
    def f(x):
        return _out(alpha * np.sqrt(np.abs(_as_array(x))))

    def g(x):
        x = _as_array(x)
        return _out(-alpha * np.sqrt(np.abs(x)) * np.sign(x))

    return f, g


def _lorentzian_pair(alpha):
    def f(x):
        x = _as_array(x)
        return _out(alpha / (x * x + 1.0))

    def g(x):
        x = _as_array(x)
        return _out(alpha * (x / (x * x + 1.0)))

    return f, g


def _rational_peak_pair(alpha):
    def f(x):
        x = _as_array(x)
        x2 = x * x
        return _out(alpha * (x2 / ((x2 + 1.0) ** 2)))

    def g(x):
        x = _as_array(x)
        x2 = x * x
        return _out(alpha * (x * (x2 - 1.0) / (2.0 * (x2 + 1.0) ** 2)))

    return f, g


def _gaussian_pair(alpha):
    c = math.sqrt(2.0 / math.pi)

    def f(x):
        x = _as_array(x)
        return _out(alpha * np.exp(-0.5 * x * x))

    def g(x):
        return _out(alpha * (c * _as_array(dawson_like(x))))

    return f, g


def _valley_pair(alpha, b):
    def f(x):
        x = _as_array(x)
        x2 = x * x
        return _out(alpha * ((x2 + b) / ((x2 + 1.0) ** 2)))

    def g(x):
        x = _as_array(x)
        x2 = x * x
        return _out(alpha * (x / (2.0 * (x2 + 1.0) ** 2) * (x2 * (b + 1.0) + 3.0 * b - 1.0)))

    return f, g


def _rectangle_pair(alpha):
    def f(x):
        x = _as_array(x)
        return _out(np.where(np.abs(x) <= 1.0, alpha, 0.0))

    def g(x):
        # +-inf at x = +-1 encodes the logarithmic divergence
        # ln|(1+x)/(1-x)| = 2 atanh(x) inside, 2 atanh(1/x) outside; no cancellation
        x = _as_array(x)
        with np.errstate(divide="ignore", over="ignore"):
            arg = np.where(np.abs(x) <= 1.0, x, 1.0 / x)
            unit = 2.0 * np.arctanh(arg) / math.pi
        return _out(alpha * unit)

    return f, g


def _triangle_pair(alpha):
    def f(x):
        x = _as_array(x)
        return _out(alpha * np.maximum(0.0, 1.0 - np.abs(x)))

    def g(x):
        # xlogy(0, .) = 0 gives the continuous limits at x = 0, +-1
        x = _as_array(x)
        # far out the x ln|x| terms cancel; with u = 1/x what is left is
        # 2 atanh(u) + log1p(-u^2)/u
        with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
            near = (xlogy(1.0 + x, np.abs(1.0 + x)) - xlogy(1.0 - x, np.abs(1.0 - x))
                    - xlogy(x, x * x))
            u = 1.0 / x
            far = 2.0 * np.arctanh(u) + np.log1p(-u * u) / u
        unit = np.where(np.abs(x) > 2.0, far, near) / math.pi
        return _out(alpha * unit)

    return f, g


def resolve(family: CatalogFamily) -> TransformPair:
    """Build the closed-form transform pair for a catalog family."""
    fid, alpha, b = family.family_id, float(family.alpha), family.b
    validate_parameters(fid, alpha, b)
    label = f"{fid.value}(alpha={alpha:g}" + (f", b={b:g})" if b is not None else ")")
    common = dict(scale=alpha, label=label)

    if fid is Family.SQRT:
        f, g = _sqrt_pair(alpha)
        return TransformPair(f, g, DecayClass.NON_DECAYING, kinks=(0.0,), **common)
    if fid is Family.LORENTZIAN:
        f, g = _lorentzian_pair(alpha)
        return TransformPair(f, g, DecayClass.POLYNOMIAL, **common)
    if fid is Family.RATIONAL_PEAK:
        f, g = _rational_peak_pair(alpha)
        return TransformPair(f, g, DecayClass.POLYNOMIAL, **common)
    if fid is Family.GAUSSIAN:
        f, g = _gaussian_pair(alpha)
        return TransformPair(f, g, DecayClass.EXPONENTIAL, **common)
    if fid is Family.VALLEY:
        f, g = _valley_pair(alpha, float(b))
        return TransformPair(f, g, DecayClass.POLYNOMIAL, **common)
    if fid is Family.RECTANGLE:
        f, g = _rectangle_pair(alpha)
        return TransformPair(f, g, DecayClass.COMPACT, support=(-1.0, 1.0),
                             singular_points=(-1.0, 1.0), kinks=(-1.0, 1.0), **common)
    if fid is Family.TRIANGLE:
        f, g = _triangle_pair(alpha)
        return TransformPair(f, g, DecayClass.COMPACT, support=(-1.0, 1.0),
                             singular_points=(-1.0, 0.0, 1.0), kinks=(-1.0, 0.0, 1.0),
                             **common)
    raise ValueError(f"unknown family {fid!r}")  # pragma: no cover


def combine(first: TransformPair, second: TransformPair,
            weights: tuple[float, float] = (1.0, 1.0)) -> TransformPair:
    """Pair for ``a f1 + b f2``; its transform is ``a g1 + b g2`` by linearity.

    ``weights = (a, b)``, default plain sum. Kinks, singular points and
    support carry over, so jumps of either ``f`` stay visible to quadrature.
    """
    f1, f2, g1, g2 = first.f, second.f, first.g, second.g
    a, b = (float(w) for w in weights)

    def f(x):
        return _out(a * _as_array(f1(x)) + b * _as_array(f2(x)))

    def g(x):
        return _out(a * _as_array(g1(x)) + b * _as_array(g2(x)))

    if first.compact and second.compact:
        support = (min(first.support[0], second.support[0]),
                   max(first.support[1], second.support[1]))
    else:
        support = None
    decay = min(first.decay_class, second.decay_class, key=_DECAY_ORDER.index)
    return TransformPair(
        f, g, decay,
        support=support,
        singular_points=tuple(sorted(set(first.singular_points) | set(second.singular_points))),
        kinks=tuple(sorted(set(first.kinks) | set(second.kinks))),
        scale=abs(a) * first.scale + abs(b) * second.scale,
        label=(f"{first.label} + {second.label}" if (a, b) == (1.0, 1.0)
               else f"{a:g}*{first.label} + {b:g}*{second.label}"),
    )


def eval_f(pair: TransformPair, x):
    return pair.f(x)


def eval_g(pair: TransformPair, x):
    """Evaluate ``g``; ``+-inf`` marks a logarithmic divergence (rectangle edges)."""
    return pair.g(x)
