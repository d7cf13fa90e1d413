"""Command-line driver: tables of closed-form quantities, sweeps, validation and the reproduction report.

Exit codes: 0 success, 1 usage error, 2 validation failure, 3 numerical
tolerance not met (a quadrature reported non-convergence).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import warnings
from concurrent.futures import ProcessPoolExecutor
from functools import partial

import numpy as np

from .config import ConfigError, RunConfig, load_config
from .densities import (
    QuadratureWarning,
    ValidityWarning,
    hall_decompose_2d,
    sigma_perp_3d,
    sigma_sh,
    sigma_sh1,
    spin_current_2d_eq,
    spin_current_2d_noneq,
    spin_current_3d_eq,
    spin_current_3d_noneq,
    spin_density_2d,
    spin_density_3d,
)
from .model import ParamSet

__all__ = [
    "main",
    "build_parser",
    "conductivity2d_row",
    "densities3d_row",
    "run_rows",
    "format_rows",
    "EXIT_OK",
    "EXIT_USAGE",
    "EXIT_VALIDATION",
    "EXIT_TOLERANCE",
]

EXIT_OK, EXIT_USAGE, EXIT_VALIDATION, EXIT_TOLERANCE = 0, 1, 2, 3

# (column, natural units, SI units). Planar densities are per area, bulk ones per volume.
COLUMNS_2D = [
    ("mu_over_m", "1", "1"),
    ("tau", "1/energy", "m (c tau)"),
    ("B_z", "field", "J/(C m) (c B)"),
    ("Omega_z", "energy/hbar", "1/m (Omega/c)"),
    ("sigma_sh", "q", "C"),
    ("sigma_sh1", "q", "C"),
    ("ohm_coeff", "q", "C"),
    ("n_z", "hbar/area", "1/m^2 (times hbar)"),
    ("J_eq_x", "energy/length", "J/m"),
    ("J_eq_y", "energy/length", "J/m"),
    ("J_neq_x", "energy/length", "J/m"),
    ("J_neq_y", "energy/length", "J/m"),
]
COLUMNS_3D = [
    ("axis_x", "1", "1"),
    ("axis_y", "1", "1"),
    ("axis_z", "1", "1"),
    ("n_a", "hbar/volume", "1/m^3 (times hbar)"),
    ("J_eq_x", "energy/area", "J/m^2"),
    ("J_eq_y", "energy/area", "J/m^2"),
    ("J_eq_z", "energy/area", "J/m^2"),
    ("J_neq_x", "energy/area", "J/m^2"),
    ("J_neq_y", "energy/area", "J/m^2"),
    ("J_neq_z", "energy/area", "J/m^2"),
    ("sigma_perp", "q energy/hbar", "C/m"),
]
ECHO = [("param_" + n, "") for n in ("m", "q", "hbar", "mu", "tau", "T", "R", "branch")] + [
    (f"param_{v}_{c}", "") for v in ("B", "Omega", "Efield", "x") for c in "xyz"]


def _echo(params: ParamSet) -> dict:
    out = {f"param_{n}": getattr(params, n) for n in ("m", "q", "hbar", "mu", "tau", "T", "R", "branch")}
    for v in ("B", "Omega", "Efield", "x"):
        for i, c in enumerate("xyz"):
            out[f"param_{v}_{c}"] = float(getattr(params, v)[i])
    return out


def conductivity2d_row(params: ParamSet, grad_mu=None) -> dict:
    """Planar quantities at one configuration; the observation point is x = R rho_hat.

    ``ohm_coeff`` is nan on the pole |tau calB_mu / mu| = 1 and zero without fields.
    """
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", ValidityWarning)
        h = hall_decompose_2d(params)
    J0 = spin_current_2d_eq(params)
    J1 = spin_current_2d_noneq(params, grad_mu)
    row = {
        "mu_over_m": params.mu / params.m,
        "tau": params.tau,
        "B_z": float(params.B[2]),
        "Omega_z": float(params.Omega[2]),
        "sigma_sh": sigma_sh(params),
        "sigma_sh1": sigma_sh1(params),
        "ohm_coeff": h.ohm_coeff if h.ohm_valid else (0.0 if h.a1 == 0 and h.a2 == 0 else float("nan")),
        "n_z": spin_density_2d(params),
        "J_eq_x": J0[0], "J_eq_y": J0[1],
        "J_neq_x": J1[0], "J_neq_y": J1[1],
    }
    return {**{k: float(v) for k, v in row.items()}, **_echo(params)}


def densities3d_row(params: ParamSet, axis=(0.0, 0.0, 1.0), grad_mu=None) -> dict:
    a = np.asarray(axis, dtype=float)
    a = a / np.linalg.norm(a)
    J0 = spin_current_3d_eq(params, a)
    J1 = spin_current_3d_noneq(params, a, grad_mu)
    row = {"axis_x": a[0], "axis_y": a[1], "axis_z": a[2], "n_a": spin_density_3d(params, a),
           "J_eq_x": J0[0], "J_eq_y": J0[1], "J_eq_z": J0[2],
           "J_neq_x": J1[0], "J_neq_y": J1[1], "J_neq_z": J1[2],
           "sigma_perp": sigma_perp_3d(params)}
    return {**{k: float(v) for k, v in row.items()}, **_echo(params)}


def _row_for(kind: str, cfg: RunConfig):
    if kind == "conductivity2d":
        return partial(conductivity2d_row, grad_mu=cfg.grad_mu)
    return partial(densities3d_row, axis=cfg.axis, grad_mu=cfg.grad_mu)


def run_rows(kind: str, cfg: RunConfig, jobs: int = 1) -> list[dict]:
    """Evaluate every sweep point; the pool preserves sweep order."""
    fn = _row_for(kind, cfg)
    points = cfg.points()
    if jobs > 1 and len(points) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(fn, points))
    return [fn(p) for p in points]


def _columns(kind: str, cfg: RunConfig) -> list[tuple[str, str]]:
    table = COLUMNS_2D if kind == "conductivity2d" else COLUMNS_3D
    si = cfg.units == "si"
    cols = [(n, si_u if si else nat) for n, nat, si_u in table]
    if cfg.outputs:
        names = {n for n, _ in cols}
        bad = [o for o in cfg.outputs if o not in names]
        if bad:
            raise ConfigError(f"unknown outputs {bad}; choose from {sorted(names)}")
        cols = [c for c in cols if c[0] in cfg.outputs]
    return cols + ECHO


def _fmt(v) -> str:
    return repr(v) if isinstance(v, int) else f"{v:.17g}"


def format_rows(rows: list[dict], columns: list[tuple[str, str]], fmt: str) -> str:
    if fmt == "json":
        objs = [{n: row[n] for n, _ in columns} for row in rows]
        return json.dumps({"units": {n: u for n, u in columns if u}, "rows": objs}, indent=2) + "\n"
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow([f"{n} [{u}]" if u else n for n, u in columns])
    for row in rows:
        w.writerow([_fmt(row[n]) for n, _ in columns])
    return buf.getvalue()


def _emit(text: str, path: str | None) -> None:
    if path:
        with open(path, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _table(kind: str, args) -> int:
    cfg = load_config(args.config, si_units=args.si_units or None)
    if args.command == "sweep":
        if cfg.sweep is None:
            raise ConfigError("the sweep command needs a 'sweep' entry in the configuration")
        kind = args.kind or cfg.kind or "conductivity2d"
    columns = _columns(kind, cfg)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", QuadratureWarning)
        try:
            rows = run_rows(kind, cfg, args.jobs)
        except ValueError as exc:
            raise ConfigError(str(exc)) from None
    fmt = args.format or cfg.output_format
    _emit(format_rows(rows, columns, fmt), args.out or cfg.output_path)
    if any(issubclass(w.category, QuadratureWarning) for w in caught):
        return EXIT_TOLERANCE
    return EXIT_OK


def _validate(args) -> int:
    from .validation import run_checks

    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", QuadratureWarning)
        results = run_checks(args.level)
    for r in results:
        print(r.line())
    if not all(r.passed for r in results):
        return EXIT_VALIDATION
    if any(issubclass(w.category, QuadratureWarning) for w in caught):
        return EXIT_TOLERANCE
    return EXIT_OK


def _repro(args) -> int:
    from .repro import repro_rows

    rows = [r.as_dict() for r in repro_rows()]
    fmt = args.format or "csv"
    if fmt == "json":
        text = json.dumps(rows, indent=2) + "\n"
    else:
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
        w.writeheader()
        for r in rows:
            w.writerow({k: (_fmt(v) if isinstance(v, float) and k != "reference_value" else v)
                        for k, v in r.items()})
        text = buf.getvalue()
    _emit(text, args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="YAML or JSON run configuration")
    common.add_argument("--format", choices=("csv", "json"), help="output format (default from config, csv)")
    common.add_argument("--out", help="output file (default stdout)")
    common.add_argument("--jobs", type=int, default=1, help="worker processes for sweep points")
    common.add_argument("--si-units", action="store_true", help="read params as SI quantities")

    parser = argparse.ArgumentParser(prog="rotspin", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("conductivity2d", parents=[common], help="planar Hall coefficients, density and currents")
    sub.add_parser("densities3d", parents=[common], help="bulk density, currents and sigma_perp")
    sw = sub.add_parser("sweep", parents=[common], help="run the configured sweep")
    sw.add_argument("--kind", choices=("conductivity2d", "densities3d"))
    val = sub.add_parser("validate", parents=[common], help="run the oracle checks")
    val.add_argument("--level", choices=("quick", "full"), default="quick")
    sub.add_parser("repro-paper", parents=[common], help="reproduction report for the quoted estimates")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    if args.jobs < 1:
        print("error: --jobs must be at least 1", file=sys.stderr)
        return EXIT_USAGE
    try:
        if args.command in ("conductivity2d", "densities3d", "sweep"):
            return _table(args.command, args)
        if args.command == "validate":
            return _validate(args)
        return _repro(args)
    except (ConfigError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
