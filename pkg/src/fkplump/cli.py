"""Command-line interface: solve runs, analysis exports, kernel probes.

Subcommands
-----------
solve
    Run the Petviashvili iteration and write the field file, the
    iteration log CSV and a JSON run manifest.
analyze
    Read a saved field and export cross sections, the symmetry report,
    decay profiles and functional values as data files.
kernel-probe
    Probe symbol integrability for a list of exponents, one CSV row each.
reference
    Sample the explicit alpha = 2 lump and save it as a field file.
convergence-study
    Solve over a sweep of domain half-widths and tabulate errors vs lx.

Exit codes: 0 converged / success, 1 invalid configuration, 2 stopped at
max-iter, 3 diverged.  Configuration can come from a flat "key = value"
file (keys equal to flag names) with flags taking precedence.  CSV output
uses 17 significant digits so doubles round-trip exactly.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import __version__
from .analysis import cross_section, decay_profile, symmetry_report
from .diagnostics import fourier_tail, functionals, residual
from .fieldio import FieldFileError, load_field, save_field
from .grid import SpectralGrid
from .kernels import integrability_probe
from .reference import ExactLumpParams, exact_kp1_lump
from .solver import SeedSpec, SolveStatus, SolverConfig, solve
from .symbols import SymbolParams

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_MAX_ITER = 2
EXIT_DIVERGED = 3


class ConfigError(ValueError):
    pass


def _fmt(x: float) -> str:
    return f"{x:.17g}"


def _write_csv(path: Path, header: list[str], rows: list[list]) -> None:
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(_fmt(v) if isinstance(v, float) else str(v) for v in row))
    path.write_text("\n".join(lines) + "\n", newline="\n")


def _write_keyvalues(path: Path, items: dict[str, float | str]) -> None:
    lines = [f"{k} = {_fmt(v) if isinstance(v, float) else v}" for k, v in items.items()]
    path.write_text("\n".join(lines) + "\n", newline="\n")


# --- option resolution ------------------------------------------------------

_SOLVE_DEFAULTS: dict[str, object] = {
    "alpha": None,  # required
    "c": 1.0,
    "sigma": -1,
    "nu": 2.0,
    "lambda": 2.2e-16,
    "n": 1024,
    "l": 256.0,
    "tol": 1e-5,
    "max-iter": 200,
    "seed": "gaussian",
    "seed-amplitude": None,
    "seed-width": 2.0,
    "allow-supercritical": False,
    "out": ".",
}

_CASTS = {
    "alpha": float,
    "c": float,
    "sigma": int,
    "nu": float,
    "lambda": float,
    "n": int,
    "l": float,
    "tol": float,
    "max-iter": int,
    "seed": str,
    "seed-amplitude": float,
    "seed-width": float,
    "allow-supercritical": lambda s: s if isinstance(s, bool) else s.lower() in ("1", "true", "yes"),
    "out": str,
}


def _read_config_file(path: str) -> dict[str, str]:
    values: dict[str, str] = {}
    for lineno, line in enumerate(Path(path).read_text().splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        if "=" not in stripped:
            raise ConfigError(f"config line {lineno} is not 'key = value': {line!r}")
        key, _, value = stripped.partition("=")
        key = key.strip()
        if key not in _SOLVE_DEFAULTS:
            raise ConfigError(f"unknown config key {key!r} (line {lineno})")
        values[key] = value.strip()
    return values


def _resolve_options(args: argparse.Namespace) -> dict[str, object]:
    """Merge defaults, config file and flags (flags win)."""
    resolved = dict(_SOLVE_DEFAULTS)
    if args.config:
        for key, raw in _read_config_file(args.config).items():
            try:
                resolved[key] = _CASTS[key](raw)
            except ValueError as exc:
                raise ConfigError(f"config key {key!r}: cannot parse {raw!r}") from exc
    for key in _SOLVE_DEFAULTS:
        flag_attr = key.replace("-", "_")
        value = getattr(args, flag_attr, None)
        if value is not None and value is not False:
            resolved[key] = value
    if resolved["alpha"] is None:
        raise ConfigError("missing required key 'alpha'")
    return resolved


def _seed_spec(resolved: dict[str, object]) -> SeedSpec:
    seed = str(resolved["seed"])
    amplitude = resolved["seed-amplitude"]
    width = float(resolved["seed-width"])
    if seed.startswith("file:"):
        return SeedSpec(kind="file", amplitude=amplitude, width=width, path=seed[5:])
    return SeedSpec(kind=seed, amplitude=amplitude, width=width)


def _solver_config(resolved: dict[str, object]) -> SolverConfig:
    try:
        params = SymbolParams(
            alpha=float(resolved["alpha"]),
            c=float(resolved["c"]),
            sigma=int(resolved["sigma"]),
            lam=float(resolved["lambda"]),
        )
        grid = SpectralGrid(
            nx=int(resolved["n"]), ny=int(resolved["n"]),
            lx=float(resolved["l"]), ly=float(resolved["l"]),
        )
        return SolverConfig(
            params=params,
            grid=grid,
            nu=float(resolved["nu"]),
            tol=float(resolved["tol"]),
            max_iter=int(resolved["max-iter"]),
            seed=_seed_spec(resolved),
            allow_supercritical=bool(resolved["allow-supercritical"]),
        )
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


@dataclass
class RunManifest:
    """Resolved configuration, produced files and per-phase timings."""

    config: dict[str, object]
    outputs: list[dict[str, str]]
    timings: dict[str, float]
    software_version: str = __version__

    def write(self, path: Path) -> None:
        payload = {
            "config": self.config,
            "outputs": self.outputs,
            "timings": self.timings,
            "software_version": self.software_version,
        }
        path.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n")


def _write_iteration_log(path: Path, report) -> None:
    rows = [
        [r.iteration, r.iter_error, r.m_factor, r.factor_error, r.residual]
        for r in report.records
    ]
    _write_csv(path, ["iter", "iter_error", "m_factor", "factor_error", "residual"], rows)


def run_solve(args: argparse.Namespace) -> int:
    resolved = _resolve_options(args)
    config = _solver_config(resolved)
    out_dir = Path(str(resolved["out"]))
    out_dir.mkdir(parents=True, exist_ok=True)

    t0 = time.perf_counter()
    field, report = solve(config)
    solve_seconds = time.perf_counter() - t0

    t1 = time.perf_counter()
    field_path = out_dir / "field.fkpl"
    log_path = out_dir / "iterations.csv"
    save_field(field_path, field, config.params.alpha, config.params.c, config.params.sigma)
    _write_iteration_log(log_path, report)
    manifest = RunManifest(
        config={k: resolved[k] for k in sorted(resolved, key=str)},
        outputs=[
            {"path": str(field_path), "role": "field"},
            {"path": str(log_path), "role": "iteration-log"},
        ],
        timings={"solve": solve_seconds, "write": time.perf_counter() - t1},
    )
    manifest.write(out_dir / "manifest.json")

    final = report.final if report.records else None
    print(
        f"status={report.status.value} iterations={report.iterations}"
        + (f" residual={final.residual:.3e}" if final else "")
    )
    if report.status is SolveStatus.CONVERGED:
        return EXIT_OK
    if report.status is SolveStatus.MAX_ITER:
        return EXIT_MAX_ITER
    return EXIT_DIVERGED


_ANALYZE_TASKS = ("sections", "symmetry", "decay", "functionals")


def run_analyze(args: argparse.Namespace) -> int:
    loaded = load_field(args.field)
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    tasks = args.tasks.split(",") if args.tasks else list(_ANALYZE_TASKS)
    for task in tasks:
        if task not in _ANALYZE_TASKS:
            raise ConfigError(f"unknown analyze task {task!r}; choose from {_ANALYZE_TASKS}")
    phi = loaded.field

    if "sections" in tasks:
        for axis in "xy":
            data = cross_section(phi, axis, 0.0)
            _write_csv(
                out_dir / f"cross_section_{axis}.csv",
                ["coordinate", "value"],
                [[float(c), float(v)] for c, v in data],
            )
    if "symmetry" in tasks:
        rep = symmetry_report(phi)
        _write_keyvalues(
            out_dir / "symmetry.txt",
            {"x_defect": rep.x_defect, "y_defect": rep.y_defect},
        )
    if "decay" in tasks:
        summary: dict[str, float] = {}
        for axis in "xy":
            prof = decay_profile(phi, axis)
            _write_csv(
                out_dir / f"decay_{axis}.csv",
                ["radius", "product"],
                [[float(r), float(p)] for r, p in zip(prof.radii, prof.products)],
            )
            summary[f"plateau_{axis}"] = prof.plateau_value
            summary[f"variation_{axis}"] = prof.plateau_rel_variation
        _write_keyvalues(out_dir / "decay.txt", summary)
    if "functionals" in tasks:
        vals = functionals(phi, loaded.alpha)
        params = SymbolParams(alpha=loaded.alpha, c=loaded.c, sigma=int(loaded.sigma))
        _write_keyvalues(
            out_dir / "functionals.txt",
            {
                "l_value": vals.l_value,
                "n_value": vals.n_value,
                "energy_norm": vals.energy_norm,
                "sobolev_ratio": vals.sobolev_ratio,
                "dc_mode": vals.dc_mode,
                "residual": residual(phi, params),
                "fourier_tail": fourier_tail(phi),
            },
        )
    print(f"analyze: wrote {', '.join(tasks)} to {out_dir}")
    return EXIT_OK


def run_kernel_probe(args: argparse.Namespace) -> int:
    try:
        p_values = [float(p) for p in args.p.split(",")]
    except ValueError as exc:
        raise ConfigError(f"cannot parse --p list {args.p!r}") from exc
    if any(p < 1.0 for p in p_values):
        raise ConfigError("--p values must be >= 1")
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    rows = []
    for p in p_values:
        probe = integrability_probe(args.alpha, p, args.which)
        rows.append(
            [
                probe.alpha,
                probe.p,
                probe.which,
                probe.verdict,
                probe.last_increment,
                float(probe.truncation_radii[-1]),
                float(probe.truncated_norms[-1]),
                probe.box_norm,
            ]
        )
    path = out_dir / f"kernel_probe_{args.which}.csv"
    _write_csv(
        path,
        ["alpha", "p", "which", "verdict", "last_increment", "radius", "norm", "box_norm"],
        rows,
    )
    print(f"kernel-probe: wrote {path}")
    return EXIT_OK


def run_reference(args: argparse.Namespace) -> int:
    grid = SpectralGrid(nx=args.n, ny=args.n, lx=args.l, ly=args.l)
    field = exact_kp1_lump(grid, ExactLumpParams(c=args.c))
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    path = out_dir / "exact_lump.fkpl"
    save_field(path, field, alpha=2.0, c=args.c, sigma=-1.0)
    print(f"reference: wrote {path}")
    return EXIT_OK


def run_convergence_study(args: argparse.Namespace) -> int:
    try:
        l_values = [float(v) for v in args.l.split(",")]
    except ValueError as exc:
        raise ConfigError(f"cannot parse --l list {args.l!r}") from exc
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    base_l = l_values[0]
    rows = []
    for l in l_values:
        n = int(round(args.n * l / base_l))  # keep dx fixed across the sweep
        grid = SpectralGrid(nx=n, ny=n, lx=l, ly=l)
        params = SymbolParams(alpha=args.alpha, c=args.c)
        config = SolverConfig(params=params, grid=grid, tol=args.tol)
        field, report = solve(config)
        final = report.final
        if args.alpha == 2.0:
            exact = exact_kp1_lump(grid, ExactLumpParams(c=args.c))
            err = float(np.max(np.abs(field.values - exact.values))) / exact.max_abs()
        else:
            err = float("nan")
        rows.append(
            [
                l,
                n,
                report.iterations,
                report.status.value,
                final.iter_error,
                final.factor_error,
                final.residual,
                err,
            ]
        )
    path = out_dir / "convergence_study.csv"
    _write_csv(
        path,
        ["lx", "nx", "iterations", "status", "iter_error", "factor_error", "residual", "error_vs_exact"],
        rows,
    )
    print(f"convergence-study: wrote {path}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fkplump",
        description="Lump solutions of the fractional KP-I equation by Petviashvili iteration.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    ps = sub.add_parser("solve", help="run the Petviashvili iteration")
    ps.add_argument("--alpha", type=float)
    ps.add_argument("--c", type=float)
    ps.add_argument("--sigma", type=int)
    ps.add_argument("--nu", type=float)
    ps.add_argument("--lambda", dest="lambda_", type=float)
    ps.add_argument("--n", type=int)
    ps.add_argument("--l", type=float)
    ps.add_argument("--tol", type=float)
    ps.add_argument("--max-iter", type=int)
    ps.add_argument("--seed", type=str, help="gaussian | exact-kp1 | file:PATH")
    ps.add_argument("--seed-amplitude", type=float)
    ps.add_argument("--seed-width", type=float)
    ps.add_argument("--allow-supercritical", action="store_true", default=False)
    ps.add_argument("--out", type=str)
    ps.add_argument("--config", type=str, help="flat key = value configuration file")
    ps.set_defaults(func=run_solve)

    pa = sub.add_parser("analyze", help="export analysis data for a saved field")
    pa.add_argument("field", type=str)
    pa.add_argument("--tasks", type=str, default="", help="comma list: sections,symmetry,decay,functionals")
    pa.add_argument("--out", type=str, default=".")
    pa.set_defaults(func=run_analyze)

    pk = sub.add_parser("kernel-probe", help="probe L^p integrability of a kernel symbol")
    pk.add_argument("--alpha", type=float, required=True)
    pk.add_argument("--p", type=str, required=True, help="comma list of exponents")
    pk.add_argument("--which", choices=("m", "h"), default="m")
    pk.add_argument("--out", type=str, default=".")
    pk.set_defaults(func=run_kernel_probe)

    pr = sub.add_parser("reference", help="emit the explicit alpha = 2 lump")
    pr.add_argument("--c", type=float, default=1.0)
    pr.add_argument("--n", type=int, default=1024)
    pr.add_argument("--l", type=float, default=256.0)
    pr.add_argument("--out", type=str, default=".")
    pr.set_defaults(func=run_reference)

    pc = sub.add_parser("convergence-study", help="sweep domain sizes, tabulate errors")
    pc.add_argument("--alpha", type=float, required=True)
    pc.add_argument("--c", type=float, default=1.0)
    pc.add_argument("--n", type=int, default=256, help="node count at the first --l value")
    pc.add_argument("--l", type=str, required=True, help="comma list of half-widths")
    pc.add_argument("--tol", type=float, default=1e-5)
    pc.add_argument("--out", type=str, default=".")
    pc.set_defaults(func=run_convergence_study)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "lambda_", None) is not None:
        setattr(args, "lambda", args.lambda_)
    try:
        return args.func(args)
    except (ConfigError, FieldFileError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
