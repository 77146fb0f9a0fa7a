"""Command-line front-end: experiment orchestration and CSV/JSON emission.

Design contract: exit 0 on success (and all-pass for ``verify``), exit 1 on
a failed verification check, exit 2 on configuration or IO errors.  Output
files are written atomically (temp file + rename) and floats are printed
with 17 significant digits so every CSV round-trips to identical doubles.

The environment variable GRAUERT_THREADS caps grid parallelism.  All
kernels in this implementation are pure and the grids are evaluated in
deterministic point order on a single thread, so any accepted value yields
byte-identical output; the variable is validated and recorded.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import tempfile

import numpy as np

from .curvature import holo_sectional_curvature, sup_sectional_curvature
from .density import grauert_curvature, u_jet
from .divisors import (
    CompactGrid,
    DivisorFamily,
    curvature_gap,
    liminf_check,
    sup_metric_gap,
)
from .errors import GrauertError
from .foliation import VectorField, divisor_approach, geometric_path, leaf_curvature
from .holomorphic import HoloMap
from .metric import metric_det, metric_eval, metric_matrix
from .verify import DEFAULT_SEED, SUITES, run_suite

FLOAT_FMT = "%.17g"


class ConfigError(Exception):
    """Invalid configuration, arguments, or input files (exit code 2)."""


def _threads() -> int:
    raw = os.environ.get("GRAUERT_THREADS", "1")
    try:
        v = int(raw)
    except ValueError as exc:
        raise ConfigError(f"GRAUERT_THREADS={raw!r} is not an integer") from exc
    if v < 1:
        raise ConfigError(f"GRAUERT_THREADS={v} must be >= 1")
    return v


def _fmt(x: float) -> str:
    return FLOAT_FMT % float(x)


def _parse_complex(tok: str) -> complex:
    try:
        return complex(tok.replace(" ", ""))
    except ValueError as exc:
        raise ConfigError(f"cannot parse complex number {tok!r}") from exc


def _parse_vector(toks: list[str]) -> list[complex]:
    return [_parse_complex(t) for t in toks]


def _load_json(path: str) -> dict:
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read JSON file {path}: {exc}") from exc


def _reject_unknown(obj: dict, allowed: set[str], what: str) -> None:
    extra = set(obj) - allowed
    if extra:
        raise ConfigError(f"unknown keys {sorted(extra)} in {what}")


def _load_map(path: str) -> HoloMap:
    obj = _load_json(path)
    if "num" in obj:
        _reject_unknown(obj, {"num", "den"}, path)
    else:
        _reject_unknown(obj, {"n", "terms"}, path)
    try:
        return HoloMap.from_json(obj)
    except (KeyError, ValueError, TypeError) as exc:
        raise ConfigError(f"bad map descriptor {path}: {exc}") from exc


def _load_field(path: str) -> VectorField:
    obj = _load_json(path)
    _reject_unknown(obj, {"components"}, path)
    try:
        return VectorField.from_json(obj)
    except (KeyError, ValueError, TypeError) as exc:
        raise ConfigError(f"bad field descriptor {path}: {exc}") from exc


def _load_family(path: str) -> DivisorFamily:
    obj = _load_json(path)
    _reject_unknown(obj, {"f0", "fj", "J"}, path)
    try:
        return DivisorFamily.from_json(obj)
    except (KeyError, ValueError, TypeError) as exc:
        raise ConfigError(f"bad family descriptor {path}: {exc}") from exc


def _load_grid(path: str) -> CompactGrid:
    obj = _load_json(path)
    _reject_unknown(obj, {"box", "resolution", "delta"}, path)
    try:
        return CompactGrid.from_json(obj)
    except (KeyError, ValueError, TypeError) as exc:
        raise ConfigError(f"bad grid descriptor {path}: {exc}") from exc


def _emit(text: str, out: str | None) -> None:
    """Print to stdout, or write atomically to ``out``."""
    if out is None:
        sys.stdout.write(text)
        return
    d = os.path.dirname(os.path.abspath(out))
    try:
        fd, tmp = tempfile.mkstemp(dir=d, prefix=".grauertlab-")
        try:
            with os.fdopen(fd, "w", newline="") as fh:
                fh.write(text)
            os.replace(tmp, out)
        except BaseException:
            os.unlink(tmp)
            raise
    except OSError as exc:
        raise ConfigError(f"cannot write {out}: {exc}") from exc


def emit_grid(rows: list[dict], schema: list[str], out: str | None) -> None:
    """CSV with header, RFC-4180 quoting, LF endings, round-trip floats."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(schema)
    for row in rows:
        if set(row) != set(schema):
            raise ConfigError(f"row keys {sorted(row)} do not match schema {schema}")
        w.writerow(
            [_fmt(row[c]) if isinstance(row[c], float) else row[c] for c in schema]
        )
    _emit(buf.getvalue(), out)


def _emit_json(obj: dict, out: str | None) -> None:
    _emit(json.dumps(obj, indent=2, sort_keys=True) + "\n", out)


# -- subcommands -------------------------------------------------------------

def _cmd_u_table(a) -> int:
    if a.points < 2 or not 0 < a.t_min < a.t_max:
        raise ConfigError("need points >= 2 and 0 < t-min < t-max")
    rows = []
    for t in np.geomspace(a.t_min, a.t_max, a.points):
        j = u_jet(float(t))
        rows.append({"t": j.t, "u": j.u, "up": j.up, "upp": j.upp})
    emit_grid(rows, ["t", "u", "up", "upp"], a.out)
    return 0


def _cmd_kg_grid(a) -> int:
    if not 0 < a.rmin < a.rmax or a.angles < 1 or a.radii < 1:
        raise ConfigError("need 0 < rmin < rmax, angles >= 1, radii >= 1")
    rows = []
    for r in np.geomspace(a.rmin, a.rmax, a.radii):
        for q in range(a.angles):
            z = r * np.exp(2j * np.pi * q / a.angles)
            rows.append({"re": float(z.real), "im": float(z.imag),
                         "Kg": grauert_curvature(z)})
    emit_grid(rows, ["re", "im", "Kg"], a.out)
    return 0


def _cmd_metric_eval(a) -> int:
    f = _load_map(a.f)
    z = _parse_vector(a.z)
    V = _parse_vector(a.V)
    G = metric_matrix(f, z)
    _emit_json(
        {
            "phi": metric_eval(f, z, V),
            "G": [[[x.real, x.imag] for x in row] for row in G],
            "detG": metric_det(f, z),
        },
        a.out,
    )
    return 0


def _cmd_hsc(a) -> int:
    f = _load_map(a.f)
    K = holo_sectional_curvature(f, _parse_vector(a.p), _parse_vector(a.V))
    _emit_json({"K": K}, a.out)
    return 0


def _cmd_kplus(a) -> int:
    f = _load_map(a.f)
    best, V = sup_sectional_curvature(
        f, _parse_vector(a.p), samples=a.samples, seed=a.seed, return_direction=True
    )
    _emit_json(
        {
            "k_plus": best,
            "direction": [[v.real, v.imag] for v in V],
            "samples": a.samples,
            "seed": a.seed,
        },
        a.out,
    )
    return 0


def _cmd_curvature_grid(a) -> int:
    f = _load_map(a.f)
    grid = _load_grid(a.grid)
    V = _parse_vector(a.V)
    rows = []
    schema = [f"re{i+1}" for i in range(f.n)] + [f"im{i+1}" for i in range(f.n)] + ["K"]
    for p in grid.points(f):
        row = {f"re{i+1}": z.real for i, z in enumerate(p)}
        row.update({f"im{i+1}": z.imag for i, z in enumerate(p)})
        row["K"] = holo_sectional_curvature(f, p, V)
        rows.append(row)
    emit_grid(rows, schema, a.out)
    return 0


def _cmd_leaf_curvature(a) -> int:
    f = _load_map(a.f)
    X = _load_field(a.X)
    K = leaf_curvature(f, X, _parse_vector(a.p), method=a.method)
    _emit_json({"K": K, "method": a.method}, a.out)
    return 0


def _cmd_leaf_approach(a) -> int:
    if a.path != "geometric":
        raise ConfigError(f"unknown path kind {a.path!r}")
    f = _load_map(a.f)
    base = _parse_vector(a.base)
    direction = _parse_vector(a.direction)
    path = geometric_path(base, direction, start=a.start, ratio=a.ratio, steps=a.steps)
    recs = divisor_approach(f, base, path)
    rows = []
    n = f.n
    schema = (["m"] + [f"re{i+1}" for i in range(n)] + [f"im{i+1}" for i in range(n)]
              + ["K", "gap"])
    for r in recs:
        row = {"m": r["m"]}
        row.update({f"re{i+1}": z.real for i, z in enumerate(r["z"])})
        row.update({f"im{i+1}": z.imag for i, z in enumerate(r["z"])})
        row["K"] = r["K"]
        row["gap"] = r["gap"]
        rows.append(row)
    emit_grid(rows, schema, a.out)
    return 0


def _cmd_converge_metric(a) -> int:
    fam = _load_family(a.family)
    grid = _load_grid(a.grid)
    rows = [
        {"j": j, "gap": sup_metric_gap(fam, grid, j), "delta": grid.delta}
        for j in fam.J
    ]
    emit_grid(rows, ["j", "gap", "delta"], a.out)
    return 0


def _cmd_converge_curvature(a) -> int:
    fam = _load_family(a.family)
    grid = _load_grid(a.grid)
    X = _load_field(a.X)
    rows = [
        {"j": j, "gap": curvature_gap(fam, X, grid, j), "delta": grid.delta}
        for j in fam.J
    ]
    emit_grid(rows, ["j", "gap", "delta"], a.out)
    return 0


def _cmd_liminf(a) -> int:
    fam = _load_family(a.family)
    rep = liminf_check(fam, _parse_vector(a.p), _parse_vector(a.V), a.tail)
    _emit_json(
        {
            "K0": rep["K0"],
            "Kj_min": rep["Kj_min"],
            "margin": rep["margin"],
            "seed": a.seed,
        },
        a.out,
    )
    return 0 if rep["passed"] else 1


def _cmd_verify(a) -> int:
    rep = run_suite(a.suite, seed=a.seed)
    _emit_json(rep, a.out)
    return 0 if rep["pass"] else 1


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="grauertlab",
        description="Grauert-metric experiments on complements of principal divisors.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, fn, **kw):
        p = sub.add_parser(name, **kw)
        p.set_defaults(fn=fn)
        p.add_argument("--out", default=None, help="output file (default stdout)")
        return p

    p = add("u-table", _cmd_u_table, help="CSV table of the metric profile u")
    p.add_argument("--t-min", type=float, required=True)
    p.add_argument("--t-max", type=float, required=True)
    p.add_argument("--points", type=int, required=True)

    p = add("kg-grid", _cmd_kg_grid, help="CSV grid of the Grauert curvature")
    p.add_argument("--rmin", type=float, required=True)
    p.add_argument("--rmax", type=float, required=True)
    p.add_argument("--angles", type=int, required=True)
    p.add_argument("--radii", type=int, default=16)

    p = add("metric-eval", _cmd_metric_eval, help="metric value, matrix, determinant")
    p.add_argument("--f", required=True, help="map JSON file")
    p.add_argument("--z", nargs="+", required=True, help="point coordinates")
    p.add_argument("--V", nargs="+", required=True, help="direction coordinates")

    p = add("hsc", _cmd_hsc, help="holomorphic sectional curvature at (p, V)")
    p.add_argument("--f", required=True)
    p.add_argument("--p", nargs="+", required=True)
    p.add_argument("--V", nargs="+", required=True)

    p = add("kplus", _cmd_kplus, help="sampled supremum of sectional curvature")
    p.add_argument("--f", required=True)
    p.add_argument("--p", nargs="+", required=True)
    p.add_argument("--samples", type=int, default=256)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)

    p = add("curvature-grid", _cmd_curvature_grid, help="CSV grid of hsc values")
    p.add_argument("--f", required=True)
    p.add_argument("--grid", required=True, help="grid JSON file")
    p.add_argument("--V", nargs="+", required=True)

    p = add("leaf-curvature", _cmd_leaf_curvature, help="leaf curvature of a field")
    p.add_argument("--f", required=True)
    p.add_argument("--X", required=True, help="vector-field JSON file")
    p.add_argument("--p", nargs="+", required=True)
    p.add_argument("--method", choices=("series", "stencil"), default="series")

    p = add("leaf-approach", _cmd_leaf_approach,
            help="transverse-field curvature along a path into the divisor")
    p.add_argument("--f", required=True)
    p.add_argument("--path", default="geometric")
    p.add_argument("--base", nargs="+", required=True, help="divisor point")
    p.add_argument("--direction", nargs="+", required=True)
    p.add_argument("--start", type=float, default=1.0)
    p.add_argument("--ratio", type=float, default=0.1)
    p.add_argument("--steps", type=int, default=9)

    p = add("converge-metric", _cmd_converge_metric, help="CSV of metric gaps per j")
    p.add_argument("--family", required=True, help="family JSON file")
    p.add_argument("--grid", required=True)

    p = add("converge-curvature", _cmd_converge_curvature,
            help="CSV of leaf-curvature gaps per j")
    p.add_argument("--family", required=True)
    p.add_argument("--grid", required=True)
    p.add_argument("--X", required=True)

    p = add("liminf", _cmd_liminf, help="liminf inequality report")
    p.add_argument("--family", required=True)
    p.add_argument("--p", nargs="+", required=True)
    p.add_argument("--V", nargs="+", required=True)
    p.add_argument("--tail", type=int, required=True)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)

    p = add("verify", _cmd_verify, help="run a bundled verification suite")
    p.add_argument("--suite", choices=sorted(SUITES), required=True)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    return ap


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        _threads()  # validate, even though kernels are single-threaded
        return args.fn(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except GrauertError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
