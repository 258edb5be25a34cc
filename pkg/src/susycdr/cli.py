"""Command-line front end: build, evaluate, verify, and export datasets.

Subcommands
-----------
build     parse a config, construct the system, print a summary
eval      sample P, D, C, R on the configured grid and write one CSV
verify    run the full oracle suite and print a pass/fail table
emit-fig  write the bundled example datasets (two interchanged parameter
          sets of the two-chain-member case at t = 0.3, 1.0, 2.0) plus a
          gnuplot script

Configuration is a single JSON document (see DEFAULT_CONFIG for the
schema); every value written to CSV carries 17 significant digits so the
files round-trip bit-for-bit.

Exit codes: 0 success, 1 verification failure, 2 config or usage error.
"""

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .cdr import (CaseTag, CdrSystem, build_case_a, build_case_b, build_fpe,
                  eval_fields)
from .quantum import OscillatorParams, RadialOscillatorFamily
from .verify import (GridSpec, evolve_oracle, ode_residual,
                     orthonormality_matrix, pde_residual,
                     positive_diffusion_x_max, schrodinger_residual)

__all__ = ["main", "run", "RunConfig", "DEFAULT_CONFIG"]

DEFAULT_CONFIG = {
    "omega": 1.0,
    "ell": 1.0,
    "alpha": 1.0,
    "case": "case_b",
    "n": 3,
    "s": 1,
    "n_prime": 1,
    "s_prime": 3,
    "A": 1.0,
    "B": 3.0,
    "grid": {
        "x_min": 0.2, "x_max": 8.0, "nx": 400,
        "t_min": 0.5, "t_max": 2.5, "nt": 4,
    },
    "tolerances": {
        "schrodinger_rel": 1e-8,
        "ode_abs": 1e-8,
        "pde_rel": 1e-8,
        "orthonormality": 1e-8,
        "evolve_ratio_lo": 3.5,
        "evolve_ratio_hi": 4.5,
    },
}

_FIG_TIMES = (0.3, 1.0, 2.0)
_FIG_GRID = np.linspace(0.02, 10.0, 500)


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    """Validated run configuration: family, case, indices, grid, tolerances."""

    family: RadialOscillatorFamily
    case: CaseTag
    alpha: float
    indices: dict
    coeff_a: float
    coeff_b: float
    grid: GridSpec
    tolerances: dict

    def build(self) -> CdrSystem:
        idx = self.indices
        if self.case is CaseTag.FPE:
            return build_fpe(self.family, idx["s"], idx["n"], self.alpha)
        if self.case is CaseTag.CASE_A:
            return build_case_a(self.family, self.alpha, idx["n"], idx["m"])
        return build_case_b(
            self.family, self.alpha, idx["n"], idx["s"],
            idx["n_prime"], idx["s_prime"], self.coeff_a, self.coeff_b,
        )


def _require(data, key, kind):
    if key not in data:
        raise ConfigError(f"config field '{key}' is required")
    value = data[key]
    if kind is float:
        if not isinstance(value, (int, float)) or isinstance(value, bool):
            raise ConfigError(
                f"config field '{key}' must be a number, got {value!r}"
            )
        return float(value)
    if kind is int:
        if not isinstance(value, int) or isinstance(value, bool):
            raise ConfigError(
                f"config field '{key}' must be an integer, got {value!r}"
            )
        return value
    return value


def parse_config(data: dict) -> RunConfig:
    """Validate a config mapping; raises ConfigError naming the bad field."""
    omega = _require(data, "omega", float)
    ell = _require(data, "ell", float)
    alpha = _require(data, "alpha", float)
    case_name = _require(data, "case", str)
    try:
        case = CaseTag(case_name)
    except ValueError:
        raise ConfigError(
            f"config field 'case' must be one of fpe/case_a/case_b, got {case_name!r}"
        )
    try:
        family = RadialOscillatorFamily(OscillatorParams(omega, ell))
    except ValueError as exc:
        raise ConfigError(f"config: {exc}")

    indices = {}
    if case is CaseTag.FPE:
        indices["s"] = _require(data, "s", int)
        indices["n"] = _require(data, "n", int)
    elif case is CaseTag.CASE_A:
        indices["n"] = _require(data, "n", int)
        indices["m"] = _require(data, "m", int)
    else:
        for key in ("n", "s", "n_prime", "s_prime"):
            indices[key] = _require(data, key, int)
        if indices["n"] + indices["s"] != indices["n_prime"] + indices["s_prime"]:
            raise ConfigError(
                "config: case_b requires the index constraint "
                f"n + s == n_prime + s_prime (got {indices['n']}+{indices['s']}"
                f" != {indices['n_prime']}+{indices['s_prime']})"
            )
    for key, val in indices.items():
        if val < 0:
            raise ConfigError(f"config field '{key}' must be >= 0, got {val}")

    coeff_a = float(data.get("A", 1.0))
    coeff_b = float(data.get("B", 1.0))
    grid_data = dict(DEFAULT_CONFIG["grid"])
    grid_data.update(data.get("grid", {}))
    try:
        grid = GridSpec(
            x_min=float(grid_data["x_min"]), x_max=float(grid_data["x_max"]),
            nx=int(grid_data["nx"]), t_min=float(grid_data["t_min"]),
            t_max=float(grid_data["t_max"]), nt=int(grid_data["nt"]),
        )
    except (ValueError, KeyError) as exc:
        raise ConfigError(f"config field 'grid': {exc}")
    tolerances = dict(DEFAULT_CONFIG["tolerances"])
    tolerances.update(data.get("tolerances", {}))
    return RunConfig(
        family=family, case=case, alpha=alpha, indices=indices,
        coeff_a=coeff_a, coeff_b=coeff_b, grid=grid, tolerances=tolerances,
    )


def _load_config(path: str | None) -> RunConfig:
    if path is None:
        return parse_config(DEFAULT_CONFIG)
    try:
        data = json.loads(Path(path).read_text())
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}")
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config {path} is not valid JSON: {exc}")
    if not isinstance(data, dict):
        raise ConfigError(f"config {path} must hold a JSON object")
    return parse_config(data)


def _fmt(value: float) -> str:
    return format(float(value), ".17g")


def _cmd_build(config: RunConfig) -> int:
    system = config.build()
    e = system.exponents
    (n, s), (n_p, s_p) = system.indices
    print(f"case:        {system.case_tag.value}")
    print(f"family:      omega={system.family.omega:g}, ell={system.family.ell:g}")
    print(f"solution:    n={n}, s={s}, A={system.coeff_a:g}, "
          f"energy={system.energy:g}")
    print(f"diffusion:   n'={n_p}, s'={s_p}, B={system.coeff_b:g}, "
          f"energy={system.sigma_energy:g}")
    print(f"exponents:   alpha={e.alpha:g}, mu={e.mu:g}, gamma={e.gamma:g}, "
          f"delta={e.delta:g}, rho_exp={e.rho_exp:g}")
    return 0


def _cmd_eval(config: RunConfig, out_dir: Path) -> int:
    system = config.build()
    out_dir.mkdir(parents=True, exist_ok=True)
    path = out_dir / "fields.csv"
    xs = config.grid.x_points()
    lines = ["x,t,P,D,C,R"]
    for t in config.grid.t_points():
        p, d, c, r = eval_fields(system, xs, float(t))
        for i, x in enumerate(xs):
            lines.append(
                f"{_fmt(x)},{_fmt(t)},{_fmt(p[i])},{_fmt(d[i])},"
                f"{_fmt(c[i])},{_fmt(r[i])}"
            )
    path.write_text("\n".join(lines) + "\n")
    print(f"wrote {path} ({len(lines) - 1} rows)")
    return 0


def _cmd_verify(config: RunConfig, tol_override: float | None,
                out_dir: Path | None) -> int:
    system = config.build()
    grid = config.grid
    tol = dict(config.tolerances)
    if tol_override is not None:
        for key in ("schrodinger_rel", "ode_abs", "pde_rel", "orthonormality"):
            tol[key] = tol_override

    rows = []
    reports = {}

    rep = schrodinger_residual(system.y_state, grid)
    reports["schrodinger_solution"] = rep
    rows.append(("schrodinger residual (solution)", rep.max_rel,
                 tol["schrodinger_rel"], rep.max_rel <= tol["schrodinger_rel"]))
    rep = schrodinger_residual(system.sigma_state, grid)
    reports["schrodinger_diffusion"] = rep
    rows.append(("schrodinger residual (diffusion)", rep.max_rel,
                 tol["schrodinger_rel"], rep.max_rel <= tol["schrodinger_rel"]))

    rep = ode_residual(system, grid.x_points())
    reports["reduced_equation"] = rep
    rows.append(("reduced-equation residual", rep.max_abs,
                 tol["ode_abs"], rep.max_abs <= tol["ode_abs"]))

    rep = pde_residual(system, grid, mode="analytic")
    reports["pde_analytic"] = rep
    rows.append(("pde residual (analytic)", rep.max_rel,
                 tol["pde_rel"], rep.max_rel <= tol["pde_rel"]))

    worst = 0.0
    for s_idx in {system.y_state.s, system.sigma_state.s}:
        gram = orthonormality_matrix(config.family, s_idx, n_max=4)
        worst = max(worst, float(np.max(np.abs(gram - np.eye(5)))))
    rows.append(("orthonormality deviation", worst,
                 tol["orthonormality"], worst <= tol["orthonormality"]))

    # restrict the stepper to the region where the equation is parabolic
    x_hi = positive_diffusion_x_max(system, t_min=1.0, x_max=grid.x_max)
    evolve_grid = GridSpec(
        x_min=grid.x_min, x_max=x_hi, nx=200,
        t_min=1.0, t_max=2.0, nt=100,
    )
    report = evolve_oracle(system, evolve_grid, t0=1.0, t1=2.0, refinements=2)
    ratio = report.entries[0][2] / report.entries[1][2]
    ok = tol["evolve_ratio_lo"] <= ratio <= tol["evolve_ratio_hi"]
    rows.append(("time-stepper error ratio (2x refinement)", ratio,
                 (tol["evolve_ratio_lo"], tol["evolve_ratio_hi"]), ok))

    width = max(len(r[0]) for r in rows) + 2
    all_ok = True
    for name, value, threshold, ok in rows:
        status = "PASS" if ok else "FAIL"
        all_ok &= ok
        if isinstance(threshold, tuple):
            bound = f"in [{threshold[0]:g}, {threshold[1]:g}]"
        else:
            bound = f"<= {threshold:g}"
        print(f"{name:<{width}} {value:12.3e}  {bound:<18} {status}")
    print("verification:", "PASS" if all_ok else "FAIL")

    if out_dir is not None:
        out_dir.mkdir(parents=True, exist_ok=True)
        payload = {
            "passed": bool(all_ok),
            "residuals": {k: r.as_dict() for k, r in reports.items()},
            "orthonormality_deviation": worst,
            "evolve": {
                "entries": [list(entry) for entry in report.entries],
                "error_ratio": ratio,
            },
        }
        path = out_dir / "verify_report.json"
        path.write_text(json.dumps(payload, indent=2) + "\n")
        print(f"wrote {path}")
    return 0 if all_ok else 1


def _fig_systems():
    family = RadialOscillatorFamily(OscillatorParams(1.0, 1.0))
    primary = build_case_b(family, alpha=1.0, n=3, s=1, n_prime=1, s_prime=3,
                           coeff_a=1.0, coeff_b=3.0)
    interchanged = build_case_b(family, alpha=1.0, n=1, s=3, n_prime=3,
                                s_prime=1, coeff_a=3.0, coeff_b=1.0)
    return (("fig1", primary), ("fig2", interchanged))


_PLOT_SCRIPT = """\
# gnuplot script for the emitted datasets
set datafile separator ','
set key autotitle columnhead
set xlabel 'x'
set terminal pngcairo size 900,700
do for [tag in "fig1 fig2"] {
    do for [field in "P D C R"] {
        set output sprintf('%s_%s.png', tag, field)
        set ylabel field
        plot sprintf('%s_%s.csv', tag, field) using 1:2 with lines dashtype 3, \\
             '' using 1:3 with lines dashtype 2, \\
             '' using 1:4 with lines
    }
}
"""


def _cmd_emit_fig(config: RunConfig, out_dir: Path) -> int:
    out_dir.mkdir(parents=True, exist_ok=True)
    xs = _FIG_GRID
    header = "x," + ",".join(f"t={t:g}" for t in _FIG_TIMES)
    for tag, system in _fig_systems():
        columns = {name: [] for name in "PDCR"}
        for t in _FIG_TIMES:
            p, d, c, r = eval_fields(system, xs, t)
            columns["P"].append(p)
            columns["D"].append(d)
            columns["C"].append(c)
            columns["R"].append(r)
        for name, cols in columns.items():
            lines = [header]
            for i, x in enumerate(xs):
                vals = ",".join(_fmt(col[i]) for col in cols)
                lines.append(f"{_fmt(x)},{vals}")
            (out_dir / f"{tag}_{name}.csv").write_text("\n".join(lines) + "\n")
    (out_dir / "plot_figures.gp").write_text(_PLOT_SCRIPT)
    print(f"wrote 8 CSV files and plot_figures.gp to {out_dir}")
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="susycdr",
        description="Build and verify exactly solvable convection-diffusion-"
                    "reaction systems.",
    )
    parser.add_argument("--config", help="path to a JSON config file")
    parser.add_argument("--out", default=None,
                        help="output directory (eval/emit-fig default: "
                             "susycdr_out; verify writes a JSON report "
                             "only when given)")
    parser.add_argument("--tol", type=float, default=None,
                        help="override the residual/orthonormality tolerances")
    parser.add_argument("command", choices=["build", "eval", "verify", "emit-fig"])
    return parser


def run(argv) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code else 0
    try:
        config = _load_config(args.config)
        out_dir = Path(args.out) if args.out is not None else None
        if args.command == "build":
            return _cmd_build(config)
        if args.command == "eval":
            return _cmd_eval(config, out_dir or Path("susycdr_out"))
        if args.command == "verify":
            return _cmd_verify(config, args.tol, out_dir)
        return _cmd_emit_fig(config, out_dir or Path("susycdr_out"))
    except (ConfigError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main():
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
