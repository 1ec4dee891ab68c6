"""
Command-line interface.

    drumhead solve     --sigma 3.125 --k 0.4 --xi 0.091 --eps 0 --normalize overtone2
    drumhead scan      --axis sigma_k --sigma-range 1:5:41 --k-range 0.2:0.8:31
    drumhead modes     --recipe fig7 --out-dir fig7/
    drumhead benchmark

Settings are resolved as: built-in defaults < --recipe < --config file < flags.
The config file is a JSON object whose keys are flag names (dashes or
underscores); it may be flat or hold one section per subcommand.

Exit codes: 0 ok, 1 benchmark failure, 2 invalid parameters, 3 solver failure.
"""

import argparse
import json
import logging
import sys
from pathlib import Path

import numpy as np

from . import export
from .density import LoadingParams
from .eigensolver import CONVENTIONS, solve_spectrum
from .errors import InvalidParameterError, SolverError
from .harmonicity import scan_eccentricity, scan_sigma, scan_sigma_k, scan_xi
from .modes import export_mode_grid
from .oracle import uniform_reference
from .recipes import RECIPES
from .spectral_disk import build_grid

EXIT_OK, EXIT_BENCHMARK, EXIT_INVALID, EXIT_SOLVER = 0, 1, 2, 3

MODEL_DEFAULTS = {"sigma": 2.57, "k": 0.492, "xi": 0.091, "eps": 0.0, "nr": None, "ntheta": None}
DEFAULTS = {
    "solve": {**MODEL_DEFAULTS, "nmodes": 25, "normalize": "overtone2", "labeling": "auto", "out": None},
    "scan": {
        **MODEL_DEFAULTS,
        "axis": "sigma_k",
        "sigma_range": "1:5:41",
        "k_range": "0.2:0.8:31",
        "eps_range": "0:0.2:11",
        "xi_range": "0.02:0.2:37",
        "nmax": 15,
        "nmodes": None,
        "workers": 1,
        "refine": True,
        "out": None,
    },
    "modes": {**MODEL_DEFAULTS, "count": 20, "normalize": "overtone2", "labeling": "auto", "out_dir": "modes"},
    "benchmark": {"nr": 31, "ntheta": 20, "count": 10, "tol": 1e-8},
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INVALID, f"{self.prog}: error: {message}\n")


def _model_flags(p):
    p.add_argument("--sigma", type=float, help="density contrast (centre/rim density = sigma^2)")
    p.add_argument("--k", type=float, help="radius of the loaded patch")
    p.add_argument("--xi", type=float, help="width of the density transition")
    p.add_argument("--eps", type=float, help="eccentricity of the patch")
    p.add_argument("--nr", type=int, help="odd radial Chebyshev degree")
    p.add_argument("--ntheta", type=int, help="even number of angular points")


def build_parser():
    parser = _Parser(prog="drumhead", description="Eigenmodes of loaded circular drum heads.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    common = dict(argument_default=argparse.SUPPRESS)

    p = sub.add_parser("solve", help="solve one parameter set and write a spectrum report", **common)
    _model_flags(p)
    p.add_argument("--nmodes", type=int)
    p.add_argument("--normalize", choices=CONVENTIONS)
    p.add_argument("--labeling", choices=("auto", "nodal", "continuation"))
    p.add_argument("--out", help="JSON report path")

    p = sub.add_parser("scan", help="parameter sweeps: Q(sigma, k), sigma, eccentricity or xi", **common)
    _model_flags(p)
    p.add_argument("--axis", choices=("sigma_k", "sigma", "eccentricity", "xi"))
    p.add_argument("--sigma-range", dest="sigma_range", metavar="A:B:N")
    p.add_argument("--k-range", dest="k_range", metavar="A:B:N")
    p.add_argument("--eps-range", dest="eps_range", metavar="A:B:N")
    p.add_argument("--xi-range", dest="xi_range", metavar="A:B:N")
    p.add_argument("--nmax", type=int, help="modes summed in Q")
    p.add_argument("--nmodes", type=int, help="modes tabulated in 1-D sweeps")
    p.add_argument("--workers", type=int)
    p.add_argument("--no-refine", dest="refine", action="store_false")
    p.add_argument("--out", help="CSV output path")

    p = sub.add_parser("modes", help="export eigenfunction fields for nodal plots", **common)
    _model_flags(p)
    p.add_argument("--count", type=int)
    p.add_argument("--normalize", choices=CONVENTIONS)
    p.add_argument("--labeling", choices=("auto", "nodal", "continuation"))
    p.add_argument("--out-dir", dest="out_dir")

    p = sub.add_parser("benchmark", help="uniform membrane versus Bessel zeros", **common)
    p.add_argument("--nr", type=int)
    p.add_argument("--ntheta", type=int)
    p.add_argument("--count", type=int)
    p.add_argument("--tol", type=float)

    for p in sub.choices.values():
        p.add_argument("--config", help="JSON file with flag values")
        if p.prog.split()[-1] != "benchmark":
            p.add_argument("--recipe", choices=sorted(RECIPES))
    return parser


def _load_config(path, command):
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise InvalidParameterError(f"cannot read config {path}: {exc}") from exc
    if not isinstance(data, dict):
        raise InvalidParameterError("config file must hold a JSON object")
    section = data.get(command, data)
    return {key.replace("-", "_"): value for key, value in section.items() if not isinstance(value, dict)}


def resolve_settings(command, flags: dict) -> dict:
    settings = dict(DEFAULTS[command])
    config = _load_config(flags["config"], command) if flags.get("config") else {}
    recipe_name = flags.get("recipe", config.get("recipe"))
    if recipe_name is not None:
        if recipe_name not in RECIPES:
            raise InvalidParameterError(f"unknown recipe {recipe_name!r}")
        recipe = dict(RECIPES[recipe_name])
        if recipe.pop("command") != command:
            raise InvalidParameterError(f"recipe {recipe_name!r} belongs to another subcommand")
        settings.update(recipe)
    settings.update(config)
    settings.update(flags)
    unknown = set(settings) - set(DEFAULTS[command]) - {"config", "recipe", "command", "verbose"}
    if unknown:
        raise InvalidParameterError(f"unknown settings: {', '.join(sorted(unknown))}")
    return settings


def parse_range(text) -> np.ndarray:
    try:
        a, b, n = str(text).split(":")
        a, b, n = float(a), float(b), int(n)
    except ValueError as exc:
        raise InvalidParameterError(f"range must look like A:B:N, got {text!r}") from exc
    if n < 1 or (n > 1 and b <= a):
        raise InvalidParameterError(f"bad range {text!r}")
    return np.linspace(a, b, n)


def _params(s) -> LoadingParams:
    return LoadingParams(float(s["sigma"]), float(s["k"]), float(s["xi"]), float(s["eps"]))


def _grid_sizes(s, eps, scan=False):
    nr = s["nr"] if s["nr"] is not None else (49 if scan else 65)
    if s["ntheta"] is not None:
        nt = s["ntheta"]
    elif scan:
        nt = 24 if eps == 0 else 40
    else:
        nt = 30 if eps == 0 else 56
    build_grid(nr, nt)
    return nr, nt


def _print_report(report, out=None):
    out = out or sys.stdout
    print(
        f"sigma={report.params.sigma:g} k={report.params.k:g} xi={report.params.xi:g} "
        f"eps={report.params.epsilon:g} grid=({report.n_r},{report.n_theta}) "
        f"normalize={report.convention} labels={report.labeling}",
        file=out,
    )
    print(f"{'rank':>4} {'mode':>7} {'lambda':>14} {'normalized':>11} {'cents':>8} partner", file=out)
    for rank, (lam, w, (m, n), partner, c) in enumerate(
        zip(report.raw_lambdas, report.normalized, report.labels, report.partners, report.cents_deviation),
        start=1,
    ):
        label = f"psi_{m}{n}" if m is not None else "?"
        print(f"{rank:>4} {label:>7} {lam:14.9f} {w:11.4f} {c:+8.2f} {partner or ''}", file=out)


def cmd_solve(s):
    params = _params(s)
    nr, nt = _grid_sizes(s, params.epsilon)
    report = solve_spectrum(params, nr, nt, int(s["nmodes"]), s["normalize"], s["labeling"])
    _print_report(report)
    if s["out"]:
        export.write_report(report, s["out"])
    return EXIT_OK


def cmd_scan(s):
    axis = s["axis"]
    workers = int(s["workers"])
    nmax = int(s["nmax"])
    out = s["out"] or f"scan_{axis}.csv"
    if axis == "sigma_k":
        eps = float(s["eps"])
        nr, nt = _grid_sizes(s, eps, scan=True)
        qmap = scan_sigma_k(
            parse_range(s["sigma_range"]), parse_range(s["k_range"]), float(s["xi"]), eps,
            nmax, nr, nt, workers=workers, refine=bool(s["refine"]),
        )
        export.write_quality_map(qmap, out)
        sig, k, q = qmap.minimizer
        print(f"minimum Q = {q:.6f} at sigma = {sig:.4f}, k = {k:.4f}")
    elif axis == "sigma":
        eps = float(s["eps"])
        nr, nt = _grid_sizes(s, eps, scan=True)
        nmodes = int(s["nmodes"] or 9)
        sig, freqs, q = scan_sigma(
            parse_range(s["sigma_range"]), float(s["k"]), float(s["xi"]), eps, nmodes, nmax, nr, nt, workers
        )
        header = ["sigma"] + [f"w{i}" for i in range(1, nmodes + 1)] + ["Q"]
        export.write_table(header, [[a, *f, b] for a, f, b in zip(sig, freqs, q)], out)
        i = int(np.argmin(q))
        print(f"minimum Q = {q[i]:.6f} at sigma = {sig[i]:.4f}")
    elif axis == "eccentricity":
        eps_axis = parse_range(s["eps_range"])
        nr, nt = _grid_sizes(s, float(eps_axis[-1]) or 1.0, scan=True)
        nmodes = int(s["nmodes"] or 10)
        eps_axis, lams = scan_eccentricity(
            float(s["sigma"]), float(s["k"]), float(s["xi"]), eps_axis, nmodes, nr, nt, workers
        )
        header = ["epsilon"] + [f"lambda{i}" for i in range(1, nmodes + 1)]
        export.write_table(header, [[e, *row] for e, row in zip(eps_axis, lams)], out)
        spread = np.max(np.abs(lams / lams[0] - 1), axis=0)
        print("max relative change vs first epsilon: " + " ".join(f"{v:.4f}" for v in spread))
    else:
        eps = float(s["eps"])
        nr, nt = _grid_sizes(s, eps, scan=True)
        xis, q = scan_xi(float(s["sigma"]), float(s["k"]), eps, parse_range(s["xi_range"]), nmax, nr, nt, workers)
        export.write_table(["xi", "Q"], zip(xis, q), out)
        i = int(np.argmin(q))
        print(f"minimum Q = {q[i]:.6f} at xi = {xis[i]:.4f}")
    print(f"wrote {out}")
    return EXIT_OK


def cmd_modes(s):
    params = _params(s)
    nr, nt = _grid_sizes(s, params.epsilon)
    count = int(s["count"])
    if count < 1:
        raise InvalidParameterError("count must be >= 1")
    # normalisation needs a few modes even when fewer are exported
    report = solve_spectrum(params, nr, nt, max(count, 4), s["normalize"], s["labeling"])
    grid = build_grid(nr, nt)
    out_dir = Path(s["out_dir"])
    names = []
    for mode in report.modes[:count]:
        name = f"mode_{mode.rank:02d}.csv"
        export.write_mode_csv(export_mode_grid(mode, grid), out_dir / name)
        names.append(name)
    export._write(out_dir / "index.csv", export.mode_index_text(report, names))
    _print_report(report)
    print(f"wrote {len(names)} mode files to {out_dir}")
    return EXIT_OK


def run_benchmark(nr=31, ntheta=20, count=10):
    """Return [(computed, reference, (m, n))] for the uniform membrane."""
    report = solve_spectrum(LoadingParams(1.0, 0.5, 0.1, 0.0), nr, ntheta, count, "none", "nodal")
    ref = uniform_reference(count)
    return [(lam, z, (m, n)) for lam, (z, m, n) in zip(report.raw_lambdas, ref)]


def cmd_benchmark(s):
    rows = run_benchmark(int(s["nr"]), int(s["ntheta"]), int(s["count"]))
    print(f"uniform membrane, grid ({s['nr']}, {s['ntheta']})")
    print(f"{'rank':>4} {'mode':>7} {'computed':>18} {'reference':>18} {'rel.error':>10}")
    worst = 0.0
    for rank, (lam, z, (m, n)) in enumerate(rows, start=1):
        err = abs(lam - z) / z
        worst = max(worst, err)
        print(f"{rank:>4} {'psi_%d%d' % (m, n):>7} {lam:18.12f} {z:18.12f} {err:10.2e}")
    ok = worst < float(s["tol"])
    print(f"max relative error {worst:.3e} ({'PASS' if ok else 'FAIL'}, tolerance {float(s['tol']):.0e})")
    return EXIT_OK if ok else EXIT_BENCHMARK


COMMANDS = {"solve": cmd_solve, "scan": cmd_scan, "modes": cmd_modes, "benchmark": cmd_benchmark}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    flags = {k: v for k, v in vars(args).items() if k not in ("command", "verbose")}
    try:
        settings = resolve_settings(args.command, flags)
        return COMMANDS[args.command](settings)
    except InvalidParameterError as exc:
        print(f"drumhead: invalid parameters: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except SolverError as exc:
        print(f"drumhead: solver failure: {exc}", file=sys.stderr)
        return EXIT_SOLVER


if __name__ == "__main__":
    sys.exit(main())
