"""Command-line front end: figure data generation and cross-validation.

Subcommands
-----------
scan-eta     grid of the modulation factor eta over (xi, theta)
eta-max      eta_max(xi) with theta_opt and chi at the optimum
offdiag      off-diagonal trajectory rho_ud(t) for a boosted spin vs rest
evolve       full single-qubit trajectory, analytic next to oracle columns
concurrence  two-qubit concurrence series with both reference curves
verify       full verification suite; exit 0 iff every check passes

Tables are written as CSV (12 significant digits, '#' comment header
carrying the parameters and seed) or JSON (array of objects). Time grids
are specified on the dimensionless axis gamma*t**2 via --gamma-t2-max
and --points. Exit codes: 0 success, 1 verification/runtime failure,
2 usage error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from typing import Iterable, Sequence

import numpy as np

from . import verify as verify_mod
from .channel import NoiseSpec, Scenario, evolve_elementwise, example_trajectory
from .entangle import concurrence_trajectory
from .oracle import QuadratureSpec, average_quadrature
from .relkin import BoostParams, eta_max, eta_profile
from .spinalg import DensityMatrix

USAGE_ERROR = 2


def _fmt(value) -> str:
    if isinstance(value, bool):
        return str(value)
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return format(float(value), ".12g")
    return str(value)


def write_table(rows: Sequence[dict], path, fmt: str = "csv",
                fieldnames: Sequence[str] | None = None,
                comments: Iterable[str] = ()) -> None:
    """Write homogeneous records as CSV or JSON.

    CSV: optional '#' comment lines, a header of field names, one row per
    record with floats at 12 significant digits and '\\n' line endings.
    JSON: an array of objects with identical keys. ``path`` may be a
    filesystem path or an open text stream.
    """
    if fieldnames is None:
        if not rows:
            raise ValueError("fieldnames are required for an empty table")
        fieldnames = list(rows[0].keys())
    for row in rows:
        if list(row.keys()) != list(fieldnames):
            raise ValueError("records are not homogeneous")

    def _render(stream):
        if fmt == "csv":
            for comment in comments:
                stream.write(f"# {comment}\n")
            stream.write(",".join(fieldnames) + "\n")
            for row in rows:
                stream.write(",".join(_fmt(row[k]) for k in fieldnames) + "\n")
        elif fmt == "json":
            json.dump([{k: row[k] for k in fieldnames} for row in rows], stream, indent=2)
            stream.write("\n")
        else:
            raise ValueError(f"unknown format {fmt!r}")

    if hasattr(path, "write"):
        _render(path)
        return
    try:
        with open(path, "w", encoding="utf-8", newline="") as stream:
            _render(stream)
    except OSError as exc:
        raise OSError(f"cannot write table to {path!r}: {exc}") from exc


class _CliError(Exception):
    """Usage error carrying the offending flag name."""

    def __init__(self, flag: str, message: str):
        super().__init__(f"{flag}: {message}")
        self.flag = flag


def _read_config(path: str) -> dict[str, str]:
    """Parse a 'key = value' file; '#' starts a comment."""
    values: dict[str, str] = {}
    try:
        with open(path, "r", encoding="utf-8") as fh:
            for lineno, raw in enumerate(fh, 1):
                line = raw.split("#", 1)[0].strip()
                if not line:
                    continue
                if "=" not in line:
                    raise _CliError("--config", f"line {lineno} is not 'key = value': {raw.strip()!r}")
                key, value = line.split("=", 1)
                values[key.strip().replace("-", "_")] = value.strip()
    except OSError as exc:
        raise _CliError("--config", str(exc)) from exc
    return values


_FLOAT_KEYS = ("xi", "theta", "phi", "gamma", "mu", "vartheta", "gamma_t2_max",
               "xi_max", "theta_max")
_INT_KEYS = ("points", "nodes", "samples", "seed", "xi_steps", "theta_steps")


def _merge_config(args: argparse.Namespace) -> argparse.Namespace:
    """Fill flag values left at None from the config file, then defaults."""
    config = _read_config(args.config) if getattr(args, "config", None) else {}
    for key, raw in config.items():
        if not hasattr(args, key):
            raise _CliError("--config", f"unknown key {key!r}")
        if getattr(args, key) is not None:
            continue  # explicit flag wins
        try:
            if key in _FLOAT_KEYS:
                setattr(args, key, float(raw))
            elif key in _INT_KEYS:
                setattr(args, key, int(raw))
            else:
                setattr(args, key, raw)
        except ValueError as exc:
            raise _CliError("--config", f"bad value for {key!r}: {raw!r} ({exc})") from exc
    for key, default in getattr(args, "_defaults", {}).items():
        if getattr(args, key) is None:
            setattr(args, key, default)
    return args


def _require(condition: bool, flag: str, message: str) -> None:
    if not condition:
        raise _CliError(flag, message)


def _noise_from_args(args) -> NoiseSpec:
    if args.vartheta is not None and args.gamma is not None:
        raise _CliError("--gamma", "specify either --gamma or --vartheta, not both")
    mu = args.mu if args.mu is not None else 1.0
    _require(mu > 0, "--mu", f"must be > 0, got {mu}")
    if args.vartheta is not None:
        _require(args.vartheta > 0, "--vartheta", f"must be > 0, got {args.vartheta}")
        return NoiseSpec(vartheta=args.vartheta, mu=mu)
    gamma = args.gamma if args.gamma is not None else 1.0
    _require(gamma > 0, "--gamma", f"must be > 0, got {gamma}")
    return NoiseSpec.from_gamma(gamma, mu=mu)


def _scenario_from_args(args) -> Scenario:
    xi = args.xi
    _require(xi is not None and xi >= 0, "--xi", f"must be >= 0, got {xi}")
    theta = args.theta if args.theta is not None else eta_max(xi).theta_opt
    _require(0.0 <= theta <= math.pi, "--theta", f"must lie in [0, pi], got {theta}")
    phi = getattr(args, "phi", None)
    phi = 0.0 if phi is None else phi
    _require(0.0 <= phi < 2.0 * math.pi, "--phi", f"must lie in [0, 2*pi), got {phi}")
    return Scenario(BoostParams(xi=xi, theta=theta, phi=phi), _noise_from_args(args))


def _time_grid(args) -> tuple[np.ndarray, np.ndarray]:
    """(gamma_t2 grid, times) from --gamma-t2-max/--points."""
    g_max = args.gamma_t2_max
    points = args.points
    _require(g_max > 0, "--gamma-t2-max", f"must be > 0, got {g_max}")
    _require(points >= 2, "--points", f"must be >= 2, got {points}")
    gamma = _noise_from_args(args).gamma
    grid = np.linspace(0.0, g_max, points)
    return grid, np.sqrt(grid / gamma)


def _echo_params(args, keys: Sequence[str]) -> list[str]:
    parts = [f"command = {args.command}"]
    parts.extend(f"{k.replace('_', '-')} = {_fmt(getattr(args, k))}" for k in keys
                 if getattr(args, k, None) is not None)
    parts.append(f"seed = {args.seed}")
    return parts


def _cmd_scan_eta(args) -> int:
    _require(args.xi_max > 0, "--xi-max", f"must be > 0, got {args.xi_max}")
    _require(args.xi_steps >= 1, "--xi-steps", f"must be >= 1, got {args.xi_steps}")
    _require(args.theta_steps >= 1, "--theta-steps", f"must be >= 1, got {args.theta_steps}")
    _require(0 < args.theta_max <= math.pi, "--theta-max", f"must lie in (0, pi], got {args.theta_max}")
    xis = np.linspace(0.0, args.xi_max, args.xi_steps)
    thetas = np.linspace(0.0, args.theta_max, args.theta_steps)
    rows = [
        {"xi": float(xi), "theta": float(theta), "eta": eta_profile(float(xi), float(theta))}
        for xi in xis
        for theta in thetas
    ]
    comments = _echo_params(args, ("xi_max", "xi_steps", "theta_steps", "theta_max"))
    write_table(rows, args.out, args.format, comments=comments)
    return 0


def _cmd_eta_max(args) -> int:
    _require(args.xi_max > 0, "--xi-max", f"must be > 0, got {args.xi_max}")
    _require(args.xi_steps >= 2, "--xi-steps", f"must be >= 2, got {args.xi_steps}")
    rows = []
    for xi in np.linspace(0.0, args.xi_max, args.xi_steps):
        opt = eta_max(float(xi))
        rows.append(
            {"xi": float(xi), "eta_max": opt.eta_max, "theta_opt": opt.theta_opt,
             "chi_at_opt": opt.chi_at_opt}
        )
    write_table(rows, args.out, args.format,
                comments=_echo_params(args, ("xi_max", "xi_steps")))
    return 0


def _cmd_offdiag(args) -> int:
    s = _scenario_from_args(args)
    args.theta = s.boost.theta  # echo the resolved angle
    grid, times = _time_grid(args)
    rest = Scenario(BoostParams(xi=0.0), s.noise)
    rows = []
    for g_t2, t in zip(grid, times):
        _, boosted = example_trajectory(s, float(t))
        _, at_rest = example_trajectory(rest, float(t))
        rows.append(
            {"gamma_t2": float(g_t2), "rho_ud_boosted": boosted.real, "rho_ud_rest": at_rest.real}
        )
    comments = _echo_params(args, ("xi", "theta", "gamma", "mu", "vartheta",
                                   "gamma_t2_max", "points"))
    write_table(rows, args.out, args.format, comments=comments)
    return 0


def _cmd_evolve(args) -> int:
    s = _scenario_from_args(args)
    args.theta = s.boost.theta  # echo the resolved angle
    _require(args.nodes >= 2, "--nodes", f"must be >= 2, got {args.nodes}")
    quad = QuadratureSpec(nodes=args.nodes)
    try:
        bloch = [float(x) for x in args.bloch.split(",")]
        if len(bloch) != 3:
            raise ValueError("need exactly three components")
        if np.linalg.norm(bloch) > 1.0 + 1e-12:
            raise ValueError("Bloch vector must have norm <= 1")
    except ValueError as exc:
        raise _CliError("--bloch", str(exc)) from exc
    rx, ry, rz = bloch
    rho0 = DensityMatrix(0.5 * np.array([[1 + rz, rx - 1j * ry], [rx + 1j * ry, 1 - rz]]))
    grid, times = _time_grid(args)
    rows = []
    worst = 0.0
    for g_t2, t in zip(grid, times):
        ana = evolve_elementwise(rho0, s, float(t)).matrix
        num = average_quadrature(rho0, s, float(t), quad).matrix
        worst = max(worst, float(np.abs(ana - num).max()))
        rows.append(
            {
                "gamma_t2": float(g_t2),
                "rho_uu_analytic": ana[0, 0].real,
                "rho_uu_oracle": num[0, 0].real,
                "re_rho_ud_analytic": ana[0, 1].real,
                "re_rho_ud_oracle": num[0, 1].real,
                "im_rho_ud_analytic": ana[0, 1].imag,
                "im_rho_ud_oracle": num[0, 1].imag,
            }
        )
    comments = _echo_params(args, ("xi", "theta", "phi", "gamma", "mu", "vartheta",
                                   "gamma_t2_max", "points", "nodes", "bloch"))
    comments.append(f"max_analytic_oracle_diff = {_fmt(worst)}")
    write_table(rows, args.out, args.format, comments=comments)
    return 0


def _cmd_concurrence(args) -> int:
    s = _scenario_from_args(args)
    args.theta = s.boost.theta  # echo the resolved angle
    _require(args.nodes >= 2, "--nodes", f"must be >= 2, got {args.nodes}")
    grid, times = _time_grid(args)
    series = concurrence_trajectory(s, times, QuadratureSpec(nodes=args.nodes))
    rows = [
        {
            "gamma_t2": float(g_t2),
            "concurrence": float(c),
            "reference_rest": float(rr),
            "reference_boosted": float(rb),
        }
        for g_t2, c, rr, rb in zip(grid, series.values, series.reference_rest,
                                   series.reference_boosted)
    ]
    comments = _echo_params(args, ("xi", "theta", "gamma", "mu", "vartheta",
                                   "gamma_t2_max", "points", "nodes"))
    write_table(rows, args.out, args.format, comments=comments)
    return 0


def _cmd_verify(args) -> int:
    results = verify_mod.run_checks(seed=args.seed)
    report = verify_mod.format_report(results, seed=args.seed)
    if args.out is not sys.stdout:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(report)
    else:
        sys.stdout.write(report)
    return 0 if all(r.passed for r in results) else 1


def _add_common(p: argparse.ArgumentParser, defaults: dict) -> None:
    p.add_argument("--config", help="key = value file; explicit flags override its entries")
    p.add_argument("--seed", type=int, default=None, help="seed for randomized checks (default 42)")
    p.add_argument("--out", default=None, help="output path (default: stdout)")
    p.add_argument("--format", choices=("csv", "json"), default=None, help="table format (default csv)")
    defaults.update({"seed": 42, "format": "csv"})


def _add_noise_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--gamma", type=float, default=None,
                   help="dephasing rate 2*vartheta^2*mu^2 (default 1; exclusive with --vartheta)")
    p.add_argument("--mu", type=float, default=None, help="magnetic moment (default 1)")
    p.add_argument("--vartheta", type=float, default=None, help="field standard deviation")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spinboost",
        description="Decoherence of a boosted spin-1/2 in Gaussian magnetic noise",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    defaults_by_cmd: dict[str, dict] = {}

    p = sub.add_parser("scan-eta", help="eta over a (xi, theta) grid")
    d = defaults_by_cmd["scan-eta"] = {}
    p.add_argument("--xi-max", dest="xi_max", type=float, default=None)
    p.add_argument("--xi-steps", dest="xi_steps", type=int, default=None)
    p.add_argument("--theta-steps", dest="theta_steps", type=int, default=None)
    p.add_argument("--theta-max", dest="theta_max", type=float, default=None)
    _add_common(p, d)
    d.update({"xi_max": 3.0, "xi_steps": 60, "theta_steps": 90, "theta_max": math.pi / 2})
    p.set_defaults(func=_cmd_scan_eta)

    p = sub.add_parser("eta-max", help="eta_max, theta_opt and chi over a xi grid")
    d = defaults_by_cmd["eta-max"] = {}
    p.add_argument("--xi-max", dest="xi_max", type=float, default=None)
    p.add_argument("--xi-steps", dest="xi_steps", type=int, default=None)
    _add_common(p, d)
    d.update({"xi_max": 10.0, "xi_steps": 101})
    p.set_defaults(func=_cmd_eta_max)

    p = sub.add_parser("offdiag", help="rho_ud(t) boosted vs rest (coherent initial state)")
    d = defaults_by_cmd["offdiag"] = {}
    p.add_argument("--xi", type=float, default=None)
    p.add_argument("--theta", type=float, default=None, help="default: theta maximising eta")
    p.add_argument("--gamma-t2-max", dest="gamma_t2_max", type=float, default=None)
    p.add_argument("--points", type=int, default=None)
    _add_noise_flags(p)
    _add_common(p, d)
    d.update({"xi": 2.5, "gamma_t2_max": 4.0, "points": 200})
    p.set_defaults(func=_cmd_offdiag)

    p = sub.add_parser("evolve", help="single-qubit trajectory, analytic + oracle columns")
    d = defaults_by_cmd["evolve"] = {}
    p.add_argument("--xi", type=float, default=None)
    p.add_argument("--theta", type=float, default=None, help="default: theta maximising eta")
    p.add_argument("--phi", type=float, default=None)
    p.add_argument("--gamma-t2-max", dest="gamma_t2_max", type=float, default=None)
    p.add_argument("--points", type=int, default=None)
    p.add_argument("--nodes", type=int, default=None)
    p.add_argument("--bloch", default=None, help="initial Bloch vector 'x,y,z' (default 1,0,0)")
    _add_noise_flags(p)
    _add_common(p, d)
    d.update({"xi": 2.5, "phi": 0.0, "gamma_t2_max": 4.0, "points": 200,
              "nodes": 201, "bloch": "1,0,0"})
    p.set_defaults(func=_cmd_evolve)

    p = sub.add_parser("concurrence", help="two-qubit concurrence under the common bath")
    d = defaults_by_cmd["concurrence"] = {}
    p.add_argument("--xi", type=float, default=None)
    p.add_argument("--theta", type=float, default=None, help="default: theta maximising eta")
    p.add_argument("--gamma-t2-max", dest="gamma_t2_max", type=float, default=None)
    p.add_argument("--points", type=int, default=None)
    p.add_argument("--nodes", type=int, default=None)
    _add_noise_flags(p)
    _add_common(p, d)
    d.update({"xi": 2.5, "gamma_t2_max": 1.0, "points": 50, "nodes": 201})
    p.set_defaults(func=_cmd_concurrence)

    p = sub.add_parser("verify", help="run the verification suite")
    d = defaults_by_cmd["verify"] = {}
    _add_common(p, d)
    p.set_defaults(func=_cmd_verify)

    parser.set_defaults(_defaults_by_cmd=defaults_by_cmd)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits with 2 on usage errors already; normalize others
        return USAGE_ERROR if exc.code not in (0,) else 0
    args._defaults = args._defaults_by_cmd.get(args.command, {})
    try:
        args = _merge_config(args)
        if args.out is None:
            args.out = sys.stdout
        return args.func(args)
    except _CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    except (ValueError,) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
