"""Command-line interface: ``hspec <command> [options]``.

Commands
    transform   closed-form g next to the numerical principal value
    spectral    spectral integral for one family
    sweep       spectral integral over a list of alphas
    threshold   bisect for the alpha where the identity stops holding
    sum         spectral integral of the sum of two families
    reproduce   every published value, pass/fail per row
    plot        x, f, g, S samples for external plotting

Exit codes: 0 ok, 1 a reproduction row failed, 2 usage, 3 I/O,
4 quadrature did not converge.
"""

from __future__ import annotations

import argparse
import contextlib
import csv
import dataclasses
import io
import json
import math
import sys
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from . import experiments as ex
from .catalog import CatalogFamily, Family, TransformPair, resolve
from .errors import HspecError, PreconditionFailed
from .hilbert import hilbert_pv
from .quadrature import QuadratureSpec
from .spectral import SpectralReport, locate_peaks, spectral_density

EXIT_OK = 0
EXIT_ROWS_FAILED = 1
EXIT_USAGE = 2
EXIT_IO = 3
EXIT_NONCONVERGENT = 4

COMMANDS = ("transform", "spectral", "sweep", "threshold", "sum", "reproduce", "plot")
FORMATS = ("csv", "json", "human")


class UsageError(HspecError):
    pass


def fmt(x: float) -> str:
    """17 significant digits, dot decimal separator regardless of locale."""
    return "%.17g" % x


@dataclass
class RunConfig:
    command: str
    family: Optional[Family] = None
    alpha: Optional[float] = None
    b: Optional[float] = None
    family2: Optional[Family] = None
    alpha2: Optional[float] = None
    b2: Optional[float] = None
    alphas: Optional[list[float]] = None
    xs: Optional[list[float]] = None
    lo: Optional[float] = None
    hi: Optional[float] = None
    width: float = 0.01
    x_min: float = -5.0
    x_max: float = 5.0
    n: int = 1001
    abs_tol: Optional[float] = None
    rel_tol: Optional[float] = None
    output_format: str = "human"
    output_path: Optional[str] = None

    def quad(self) -> QuadratureSpec:
        base = QuadratureSpec()
        return dataclasses.replace(
            base,
            abs_tol=self.abs_tol if self.abs_tol is not None else base.abs_tol,
            rel_tol=self.rel_tol if self.rel_tol is not None else base.rel_tol,
        )

    def catalog_family(self, which: int = 1) -> CatalogFamily:
        if which == 1:
            return CatalogFamily(self.family, self.alpha, self.b)
        return CatalogFamily(self.family2, self.alpha2, self.b2)

    def to_argv(self) -> list[str]:
        """Canonical argv; ``parse_args(cfg.to_argv()) == cfg``."""
        argv = [self.command]
        for name, flag in _VALUE_FLAGS:
            value = getattr(self, name)
            default = _DEFAULTS[name]
            if value is None or value == default:
                continue
            if isinstance(value, Family):
                argv += [flag, value.value]
            elif isinstance(value, list):
                argv += [flag, ",".join(fmt(v) for v in value)]
            elif isinstance(value, float):
                argv += [flag, fmt(value)]
            else:
                argv += [flag, str(value)]
        return argv


_VALUE_FLAGS = (
    ("family", "--family"), ("alpha", "--alpha"), ("b", "--b"),
    ("family2", "--family2"), ("alpha2", "--alpha2"), ("b2", "--b2"),
    ("alphas", "--alphas"), ("xs", "--x"), ("lo", "--lo"), ("hi", "--hi"),
    ("width", "--width"), ("x_min", "--x-min"), ("x_max", "--x-max"), ("n", "--n"),
    ("abs_tol", "--abs-tol"), ("rel_tol", "--rel-tol"),
    ("output_format", "--format"), ("output_path", "--out"),
)
_DEFAULTS = {f.name: f.default for f in dataclasses.fields(RunConfig)}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _float_list(text: str) -> list[float]:
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated list of numbers: {text!r}")


def _family(text: str) -> Family:
    try:
        return Family(text.lower())
    except ValueError:
        names = ", ".join(f.value for f in Family)
        raise argparse.ArgumentTypeError(f"unknown family {text!r} (choose from {names})")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="hspec", description="Hilbert-transform spectral integrals.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--config", help="JSON file with RunConfig fields; flags win")
    p.add_argument("--family", type=_family)
    p.add_argument("--alpha", type=float)
    p.add_argument("--b", type=float)
    p.add_argument("--family2", type=_family)
    p.add_argument("--alpha2", type=float)
    p.add_argument("--b2", type=float)
    p.add_argument("--alphas", type=_float_list)
    p.add_argument("--x", dest="xs", type=_float_list)
    p.add_argument("--lo", type=float)
    p.add_argument("--hi", type=float)
    p.add_argument("--width", type=float)
    p.add_argument("--x-min", dest="x_min", type=float)
    p.add_argument("--x-max", dest="x_max", type=float)
    p.add_argument("--n", type=int)
    p.add_argument("--abs-tol", dest="abs_tol", type=float)
    p.add_argument("--rel-tol", dest="rel_tol", type=float)
    p.add_argument("--format", dest="output_format", choices=FORMATS)
    p.add_argument("--out", dest="output_path")
    return p


def _load_config(path: str) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise UsageError(f"--config: cannot read {path}: {exc}")
    except json.JSONDecodeError as exc:
        raise UsageError(f"--config: invalid JSON: {exc}")
    if not isinstance(data, dict):
        raise UsageError("--config: expected a JSON object")
    known = {f.name for f in dataclasses.fields(RunConfig)}
    unknown = set(data) - known
    if unknown:
        raise UsageError(f"--config: unknown fields {sorted(unknown)}")
    for key in ("family", "family2"):
        if data.get(key) is not None:
            data[key] = _family(data[key])
    return data


def _check_family(cfg, which, needs_alpha=True):
    fam, alpha, b = ((cfg.family, cfg.alpha, cfg.b) if which == 1
                     else (cfg.family2, cfg.alpha2, cfg.b2))
    suffix = "" if which == 1 else "2"
    if fam is None:
        raise UsageError(f"--family{suffix} is required for '{cfg.command}'")
    if needs_alpha and alpha is None:
        raise UsageError(f"--alpha{suffix} is required for '{cfg.command}'")
    if alpha is not None and not (math.isfinite(alpha) and alpha > 0):
        raise UsageError(f"--alpha{suffix}: must be positive, got {alpha:g}")
    if fam is Family.VALLEY:
        if b is None:
            raise UsageError(f"--b{suffix} is required for family 'valley'")
        if not b > 0:
            raise UsageError(f"--b{suffix}: must be positive, got {b:g}")
    elif b is not None:
        raise UsageError(f"--b{suffix} only applies to family 'valley'")


def _validate(cfg: RunConfig) -> None:
    c = cfg.command
    if c in ("transform", "spectral", "plot"):
        _check_family(cfg, 1)
    elif c == "sum":
        _check_family(cfg, 1)
        _check_family(cfg, 2)
    elif c in ("sweep", "threshold"):
        _check_family(cfg, 1, needs_alpha=False)
    if c == "sweep":
        if not cfg.alphas:
            if cfg.alpha is None:
                raise UsageError("--alphas is required for 'sweep'")
            cfg.alphas = [cfg.alpha]
        if any(not a > 0 for a in cfg.alphas):
            raise UsageError("--alphas: every alpha must be positive")
        if any(b <= a for a, b in zip(cfg.alphas, cfg.alphas[1:])):
            raise UsageError("--alphas: must be strictly increasing")
    if c == "threshold":
        if cfg.lo is None or cfg.hi is None:
            raise UsageError("--lo and --hi are required for 'threshold'")
        if not 0 < cfg.lo < cfg.hi:
            raise UsageError("--lo/--hi: need 0 < lo < hi")
        if not cfg.width > 0:
            raise UsageError("--width: must be positive")
    if c == "plot":
        if cfg.n < 2:
            raise UsageError("--n: need at least 2 points")
        if not cfg.x_min < cfg.x_max:
            raise UsageError("--x-min/--x-max: need x_min < x_max")
    for name in ("abs_tol", "rel_tol"):
        v = getattr(cfg, name)
        if v is not None and not v > 0:
            raise UsageError(f"--{name.replace('_', '-')}: must be positive")


def parse_args(argv: Sequence[str]) -> RunConfig:
    """Parse and validate; raises :class:`UsageError` naming the bad flag."""
    ns = build_parser().parse_args(list(argv))
    values = _load_config(ns.config) if ns.config else {}
    for key, value in vars(ns).items():
        if key != "config" and value is not None:
            values[key] = value
    cfg = RunConfig(**values)
    _validate(cfg)
    return cfg


# Output -----------------------------------------------------------------------

def plot_rows(pair: TransformPair, x_min: float, x_max: float, n: int) -> np.ndarray:
    """Sample points for a plot, 8x denser inside every located peak.

    Returns an ``(m, 4)`` array of ``x, f, g, S``. A symmetric range gives a
    symmetric set of abscissae.
    """
    x = np.linspace(x_min, x_max, n)
    step = (x_max - x_min) / (n - 1) / 8.0
    extra = []
    radius = max(abs(x_min), abs(x_max))
    for r, w in locate_peaks(pair, radius):
        a, b = max(r - w, x_min), min(r + w, x_max)
        if a < b:
            extra.append(np.arange(a, b, step))
    pts = np.concatenate([x] + extra)
    if x_min == -x_max:
        pts = np.concatenate([pts, -pts])
    pts = np.unique(pts)
    pts = pts[(pts >= x_min) & (pts <= x_max)]
    # delta points carry no continuous density; plot them as 0, not NaN
    dens = np.nan_to_num(spectral_density(pair, pts), nan=0.0)
    return np.column_stack([pts, pair.f(pts), pair.g(pts), dens])


def emit_plot(pair: TransformPair, x_min: float, x_max: float, n: int, stream=None) -> None:
    """Write CSV ``x,f,g,S`` rows."""
    stream = stream or sys.stdout
    w = csv.writer(stream, lineterminator="\n")
    w.writerow(["x", "f", "g", "S"])
    for row in plot_rows(pair, x_min, x_max, n):
        w.writerow([fmt(v) for v in row])


def _json_default(o):
    # numpy scalars (np.bool_, np.float64 inside containers) are not JSON types
    if isinstance(o, np.generic):
        return o.item()
    raise TypeError(f"{type(o).__name__} is not JSON serializable")


def _report_dict(result):
    if isinstance(result, SpectralReport):
        d = dataclasses.asdict(result)
        d["sum_rule"] = result.sum_rule
        return d
    if isinstance(result, ex.SweepResult):
        return {
            "family": result.family.family_id.value,
            "b": result.family.b,
            "points": [{"alpha": a, "integral": i, "err": e} for a, i, e in result.points],
            "threshold_bracket": result.threshold_bracket,
            "converged": result.converged,
        }
    if isinstance(result, ex.TableComparison):
        return {
            "title": result.title,
            "passed": result.passed,
            "rows": [dict(label=r.label, paper_value=r.paper_value, computed_value=r.computed_value,
                          abs_diff=r.abs_diff, tolerance=r.tolerance, err_estimate=r.err_estimate,
                          converged=r.converged, gating=r.gating, passed=r.passed)
                     for r in result.rows],
        }
    if isinstance(result, list):
        return [_report_dict(r) for r in result]
    if isinstance(result, dict):
        return result
    raise TypeError(f"cannot emit {type(result).__name__}")


def _csv_rows(result):
    if isinstance(result, ex.SweepResult):
        yield ["alpha", "integral", "err"]
        for a, i, e in result.points:
            yield [fmt(a), fmt(i), fmt(e)]
    elif isinstance(result, SpectralReport):
        yield ["integral", "err", "converged", "subdivisions", "sum_rule"]
        yield [fmt(result.integral), fmt(result.err_estimate), str(result.converged),
               str(result.subdivisions_used), fmt(result.sum_rule)]
    elif isinstance(result, (ex.TableComparison, list)):
        tables = result if isinstance(result, list) else [result]
        yield ["table", "label", "paper_value", "computed_value", "abs_diff", "tolerance", "passed"]
        for t in tables:
            for r in t.rows:
                yield [t.title, r.label, fmt(r.paper_value), fmt(r.computed_value),
                       fmt(r.abs_diff), fmt(r.tolerance), str(r.passed)]
    elif isinstance(result, dict):
        keys = list(result)
        yield keys
        yield [fmt(result[k]) if isinstance(result[k], float) else str(result[k]) for k in keys]
    else:
        raise TypeError(f"cannot emit {type(result).__name__}")


def _human(result, out):
    if isinstance(result, SpectralReport):
        print(f"{result.label}", file=out)
        print(f"  integral       {result.integral:.12f}  (+- {result.err_estimate:.2e})", file=out)
        print(f"  converged      {result.converged}  ({result.subdivisions_used} subdivisions)",
              file=out)
        for r, w in result.peaks:
            print(f"  peak           x = {r:+.10f}  half-width {w:.3e}", file=out)
        for r, w in zip(result.delta_roots, result.delta_weights):
            print(f"  delta root     x = {r:+.10f}  weight {w:.10f}", file=out)
        print(f"  integral + delta weights = {result.sum_rule:.12f}", file=out)
    elif isinstance(result, ex.SweepResult):
        print(f"{'alpha':>14}  {'integral':>18}  {'err':>10}", file=out)
        for a, i, e in result.points:
            print(f"{a:14.6g}  {i:18.12f}  {e:10.2e}", file=out)
        if result.threshold_bracket:
            print(f"identity fails between alpha = {result.threshold_bracket[0]:g} "
                  f"and {result.threshold_bracket[1]:g}", file=out)
    elif isinstance(result, (ex.TableComparison, list)):
        tables = result if isinstance(result, list) else [result]
        for t in tables:
            print(f"== {t.title}", file=out)
            for r in t.rows:
                flag = "ok  " if r.passed else ("FAIL" if r.gating else "DIFF")
                print(f"  [{flag}] {r.label:34s} published {r.paper_value:<14.10g} "
                      f"computed {r.computed_value:<18.12g} |diff| {r.abs_diff:.2e} "
                      f"(tol {r.tolerance:.1e})", file=out)
    elif isinstance(result, dict):
        for k, v in result.items():
            print(f"{k:>12}  {v}", file=out)
    else:
        raise TypeError(f"cannot emit {type(result).__name__}")


def emit_report(result, output_format: str = "human", stream=None) -> None:
    stream = stream or sys.stdout
    if output_format == "json":
        json.dump(_report_dict(result), stream, indent=2, default=_json_default)
        stream.write("\n")
    elif output_format == "csv":
        w = csv.writer(stream, lineterminator="\n")
        for row in _csv_rows(result):
            w.writerow(row)
    elif output_format == "human":
        _human(result, stream)
    else:
        raise ValueError(f"unknown format {output_format!r}")


# Dispatch ---------------------------------------------------------------------

def _transform(cfg):
    pair = resolve(cfg.catalog_family())
    xs = cfg.xs or list(np.linspace(-3.0, 3.0, 13))
    rows = {"x": [], "g_closed": [], "g_pv": [], "err": []}
    converged = True
    for x in xs:
        rows["x"].append(float(x))
        rows["g_closed"].append(float(pair.g(x)))
        try:
            res = hilbert_pv(pair, x, quad=cfg.quad())
            rows["g_pv"].append(res.value)
            rows["err"].append(res.err_estimate)
            converged &= res.converged
        except ValueError:
            rows["g_pv"].append(math.nan)
            rows["err"].append(math.nan)
    return rows, converged


def _emit_transform(rows, fmt_name, out):
    if fmt_name == "json":
        json.dump(rows, out, indent=2, default=_json_default)
        out.write("\n")
        return
    keys = list(rows)
    if fmt_name == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(keys)
        for vals in zip(*rows.values()):
            w.writerow([fmt(v) for v in vals])
    else:
        print("".join(f"{k:>22}" for k in keys), file=out)
        for vals in zip(*rows.values()):
            print("".join(f"{v:22.15g}" for v in vals), file=out)


def run(cfg: RunConfig, out) -> int:
    quad = cfg.quad()
    c = cfg.command
    if c == "transform":
        rows, converged = _transform(cfg)
        _emit_transform(rows, cfg.output_format, out)
        return EXIT_OK if converged else EXIT_NONCONVERGENT
    if c == "plot":
        pair = resolve(cfg.catalog_family())
        if cfg.output_format == "csv" or cfg.output_format == "human":
            emit_plot(pair, cfg.x_min, cfg.x_max, cfg.n, out)
        else:
            data = plot_rows(pair, cfg.x_min, cfg.x_max, cfg.n)
            json.dump({k: data[:, i].tolist() for i, k in enumerate("xfgS")}, out, default=_json_default)
            out.write("\n")
        return EXIT_OK
    if c == "spectral":
        rep = spectral_integral_for(cfg, quad)
        emit_report(rep, cfg.output_format, out)
        return EXIT_OK if rep.converged else EXIT_NONCONVERGENT
    if c == "sum":
        rep = ex.sum_decomposition(cfg.catalog_family(1), cfg.catalog_family(2), quad)
        emit_report(rep, cfg.output_format, out)
        return EXIT_OK if rep.converged else EXIT_NONCONVERGENT
    if c == "sweep":
        template = CatalogFamily(cfg.family, cfg.alphas[0], cfg.b)
        res = ex.sweep_alpha(template, cfg.alphas, quad)
        emit_report(res, cfg.output_format, out)
        return EXIT_OK if all(res.converged) else EXIT_NONCONVERGENT
    if c == "threshold":
        template = CatalogFamily(cfg.family, cfg.lo, cfg.b)
        tq = dataclasses.replace(ex.THRESHOLD_QUAD, abs_tol=cfg.abs_tol or ex.THRESHOLD_QUAD.abs_tol,
                                 rel_tol=cfg.rel_tol or ex.THRESHOLD_QUAD.rel_tol)
        lo, hi = ex.detect_threshold(template, cfg.lo, cfg.hi, cfg.width, tq)
        emit_report({"alpha_lo": lo, "alpha_hi": hi}, cfg.output_format, out)
        return EXIT_OK
    if c == "reproduce":
        tables = ex.reproduce_all(quad)
        emit_report(tables, cfg.output_format, out)
        if not all(r.converged for t in tables for r in t.rows):
            return EXIT_NONCONVERGENT
        return EXIT_OK if ex.all_passed(tables) else EXIT_ROWS_FAILED
    raise UsageError(f"unknown command {c!r}")  # pragma: no cover


def spectral_integral_for(cfg: RunConfig, quad: QuadratureSpec) -> SpectralReport:
    from .spectral import spectral_integral

    return spectral_integral(resolve(cfg.catalog_family()), quad)


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    try:
        cfg = parse_args(argv)
    except UsageError as exc:
        print(f"hspec: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    buf = io.StringIO()
    try:
        code = run(cfg, buf)
    except PreconditionFailed as exc:
        print(f"hspec: {exc}", file=sys.stderr)
        return EXIT_USAGE

    try:
        if cfg.output_path:
            with open(cfg.output_path, "w", encoding="utf-8", newline="") as fh:
                fh.write(buf.getvalue())
        else:
            with contextlib.suppress(BrokenPipeError):
                sys.stdout.write(buf.getvalue())
    except OSError as exc:
        print(f"hspec: cannot write output: {exc}", file=sys.stderr)
        return EXIT_IO
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
