"""Command-line front end for the weak KAM pipeline.

Subcommands: ``critical`` (Mane value), ``regularize`` (converge and
smooth a critical sub-solution, emit CSV/JSON), ``aubry`` (ensemble,
flagged set, lift), ``flow-check`` (graph-break scaling of the cosine
seed), ``selftest`` (acceptance suite).

Outputs are deterministic for a fixed config and seed: JSON is written
with sorted keys, CSV floats with 12 significant digits, and wall-clock
timings go to stderr only.  Exit codes: 0 success, 1 config error, 2
critical-value estimate flagged as non-converged, 3 computation error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from typing import Dict, List, Optional, Sequence

import numpy as np

from . import acceptance
from .aubry import aubry_points, calibration_residual, ensemble_subsolution
from .errors import ConfigError, WeakKAMError
from .flow import graph_break_time, integrate, variational_consistency
from .hamiltonian import HamiltonianSpec, eval_h
from .laxoleinik import GridFunction, critical_value, evolve
from .regularize import lasry_lions, small_s_search

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_UNCONVERGED = 2
EXIT_COMPUTE = 3

# fixed horizon for converging the descending semigroup before smoothing
CONVERGE_HORIZON = 4.0

CSV_HEADER = "x,u,du,residual,second_diff"

_DEFAULTS: Dict[str, object] = {
    "hamiltonian": "pendulum",
    "P": 0.0,
    "V": None,
    "grid_n": 512,
    "h": 0.01,
    "c": "critical",
    "t": 0.1,
    "s": "auto",
    "members": 16,
    "seed": 0,
    "epsilon": None,
    "out": None,
    "json": None,
    "filter": None,
    "tolerance_scale": 1.0,
}

_COERCERS = {
    "hamiltonian": str,
    "P": float,
    "V": str,
    "grid_n": int,
    "h": float,
    "c": str,
    "t": float,
    "s": str,
    "members": int,
    "seed": int,
    "epsilon": float,
    "out": str,
    "json": str,
    "filter": str,
    "tolerance_scale": float,
}


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on bad flags by default; the exit-code contract
    # reserves 2 for flagged non-convergence, so remap to 1
    def error(self, message):
        self.exit(EXIT_CONFIG, f"{self.prog}: error: {message}\n")


def _read_config_file(path: str) -> Dict[str, object]:
    out: Dict[str, object] = {}
    try:
        with open(path, "r", encoding="utf-8") as fh:
            lines = fh.readlines()
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}")
    for lineno, raw in enumerate(lines, 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(
                f"{path}:{lineno}: expected key=value, got {line!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        if key not in _DEFAULTS:
            raise ConfigError(f"{path}:{lineno}: unknown key {key!r}")
        out[key] = value
    return out


def _merge_config(args: argparse.Namespace) -> argparse.Namespace:
    file_values = _read_config_file(args.config) if args.config else {}
    merged: Dict[str, object] = dict(_DEFAULTS)
    merged.update(file_values)
    for key in _DEFAULTS:
        cli_val = getattr(args, key, None)
        if cli_val is not None:
            merged[key] = cli_val
    for key, value in merged.items():
        if value is None:
            continue
        try:
            if key == "c" and str(value) != "critical":
                value = float(value)
            elif key == "s" and str(value) != "auto":
                value = float(value)
            elif key in ("c", "s"):
                value = str(value)
            else:
                value = _COERCERS[key](value)
        except (TypeError, ValueError):
            raise ConfigError(f"bad value for {key}: {value!r}")
        merged[key] = value
    ns = argparse.Namespace(**merged)
    ns.command = args.command
    return ns


def _build_spec(cfg: argparse.Namespace) -> HamiltonianSpec:
    name = cfg.hamiltonian
    if name == "pendulum":
        return HamiltonianSpec.tilted_pendulum(cfg.P)
    if name == "free":
        return HamiltonianSpec.mechanical(
            lambda x: np.zeros_like(np.asarray(x, dtype=float)),
            lambda x: np.zeros_like(np.asarray(x, dtype=float)))
    if name == "mechanical":
        if cfg.V is None:
            raise ConfigError(
                "--V is required for --hamiltonian mechanical "
                "(comma-separated cosine coefficients)")
        try:
            coeffs = [float(tok) for tok in str(cfg.V).split(",")]
        except ValueError:
            raise ConfigError(f"bad --V value: {cfg.V!r}")
        ks = np.arange(1, len(coeffs) + 1)
        a = np.asarray(coeffs)

        def pot(x):
            x = np.asarray(x, dtype=float)
            return np.sum(a[:, None]
                          * np.cos(2 * np.pi * ks[:, None] * x[None, :]),
                          axis=0) if x.ndim else float(
                np.sum(a * np.cos(2 * np.pi * ks * x)))

        def dpot(x):
            x = np.asarray(x, dtype=float)
            if x.ndim:
                return np.sum(-2 * np.pi * (a * ks)[:, None]
                              * np.sin(2 * np.pi * ks[:, None]
                                       * x[None, :]), axis=0)
            return float(np.sum(-2 * np.pi * a * ks
                                * np.sin(2 * np.pi * ks * x)))

        return HamiltonianSpec.mechanical(pot, dpot)
    raise ConfigError(f"unknown hamiltonian {name!r} "
                      "(choose pendulum, free, or mechanical)")


def _config_echo(cfg: argparse.Namespace) -> Dict[str, object]:
    # output paths route I/O without affecting the computation, so they
    # stay out of the echo and identical runs emit identical bytes
    return {key: getattr(cfg, key) for key in _DEFAULTS
            if key not in ("out", "json")}


def _resolve_level(spec, cfg):
    # returns (level, converged or None when the level was given)
    if cfg.c == "critical":
        res = critical_value(spec, cfg.grid_n, cfg.h)
        return res.alpha, res
    return float(cfg.c), None


def _emit_json(payload: Dict[str, object], cfg: argparse.Namespace) -> None:
    text = json.dumps(payload, sort_keys=True, indent=2) + "\n"
    if cfg.json:
        with open(cfg.json, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _emit_csv(path: str, columns: Sequence[np.ndarray]) -> None:
    rows = np.column_stack(columns)
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(CSV_HEADER + "\n")
        for row in rows:
            fh.write(",".join(f"{v:.12g}" for v in row) + "\n")


def _log(message: str) -> None:
    sys.stderr.write(message + "\n")


def cmd_critical(cfg: argparse.Namespace) -> int:
    t0 = time.perf_counter()
    spec = _build_spec(cfg)
    res = critical_value(spec, cfg.grid_n, cfg.h)
    payload = {
        "command": "critical",
        "alpha": float(res.alpha),
        "converged": bool(res.converged),
        "history": [float(v) for v in res.history],
        "runtime": {"iterations": len(res.history), "grid_n": cfg.grid_n},
        "config": _config_echo(cfg),
    }
    _emit_json(payload, cfg)
    _log(f"critical: alpha={res.alpha:.6g} converged={res.converged} "
         f"in {time.perf_counter() - t0:.2f}s")
    return EXIT_OK if res.converged else EXIT_UNCONVERGED


def cmd_regularize(cfg: argparse.Namespace) -> int:
    t0 = time.perf_counter()
    spec = _build_spec(cfg)
    level, cv = _resolve_level(spec, cfg)
    u = evolve(spec, GridFunction.zeros(cfg.grid_n), CONVERGE_HORIZON,
               cfg.h, level)
    u = GridFunction(cfg.grid_n, u.values - u.mean())
    if cfg.s == "auto":
        reg = small_s_search(spec, u, cfg.t, level)
    else:
        reg = lasry_lions(spec, u, cfg.t, float(cfg.s), level,
                          check_input=False)
    w = reg.w
    du = w.gradient()
    if cfg.out:
        _emit_csv(cfg.out, (w.nodes, w.values, du,
                            level - eval_h(spec, w.nodes, du),
                            w.second_differences()))
    payload = {
        "command": "regularize",
        "alpha": float(level),
        "level_was_estimated": cv is not None,
        "converged": bool(cv.converged) if cv is not None else True,
        "t": float(reg.t_used),
        "s": float(reg.s_used),
        "k_plus": float(reg.k_plus),
        "k_minus": float(reg.k_minus),
        "sup_dist": float(reg.sup_dist_to_input),
        "pass": bool(reg.report.passed),
        "config": _config_echo(cfg),
    }
    _emit_json(payload, cfg)
    _log(f"regularize: t={reg.t_used:g} s={reg.s_used:g} "
         f"pass={reg.report.passed} in {time.perf_counter() - t0:.2f}s")
    if cv is not None and not cv.converged:
        return EXIT_UNCONVERGED
    return EXIT_OK


def cmd_aubry(cfg: argparse.Namespace) -> int:
    t0 = time.perf_counter()
    spec = _build_spec(cfg)
    level, cv = _resolve_level(spec, cfg)
    wbar = ensemble_subsolution(spec, level, n_members=cfg.members,
                                seed=cfg.seed, n=cfg.grid_n, h=cfg.h)
    est = aubry_points(spec, wbar, level, cfg.epsilon)
    pts = est.points
    invariance = max(acceptance._lift_flow_gap(spec, est, 0.1),
                     acceptance._lift_flow_gap(spec, est, -0.1))
    du = wbar.gradient()
    i = pts[int(np.argmin(np.abs(wbar.nodes[pts] - 0.5)))]
    traj = integrate(spec, float(wbar.nodes[i]), float(du[i]), 1.0)
    calib = calibration_residual(spec, wbar, traj, level)
    if cfg.out:
        _emit_csv(cfg.out, (wbar.nodes[pts], wbar.values[pts],
                            est.lift[:, 1], est.strictness.values[pts],
                            wbar.second_differences()[pts]))
    payload = {
        "command": "aubry",
        "alpha": float(level),
        "level_was_estimated": cv is not None,
        "converged": bool(cv.converged) if cv is not None else True,
        "count": int(len(pts)),
        "coverage": float(len(pts) / wbar.n),
        "epsilon": float(est.epsilon),
        "invariance_residual": float(invariance),
        "calibration_residual": float(calib),
        "config": _config_echo(cfg),
    }
    _emit_json(payload, cfg)
    _log(f"aubry: {len(pts)} flagged in {time.perf_counter() - t0:.2f}s")
    if cv is not None and not cv.converged:
        return EXIT_UNCONVERGED
    return EXIT_OK


def cmd_flow_check(cfg: argparse.Namespace) -> int:
    t0 = time.perf_counter()
    eps = cfg.epsilon if cfg.epsilon is not None else 0.05
    if eps <= 0:
        raise ConfigError("--epsilon must be positive for flow-check")
    spec = HamiltonianSpec.mechanical(
        lambda x: np.zeros_like(np.asarray(x, dtype=float)),
        lambda x: np.zeros_like(np.asarray(x, dtype=float)))

    def seed(amplitude):
        return GridFunction.from_callable(
            lambda x: amplitude * np.cos(2 * np.pi * x) / (2 * np.pi),
            cfg.grid_n)

    s0 = graph_break_time(spec, seed(eps), 5.0)
    s0_doubled = graph_break_time(spec, seed(2 * eps), 5.0)
    vres = variational_consistency(spec, seed(eps), 0.5 * s0, 0.0)
    payload = {
        "command": "flow-check",
        "epsilon": float(eps),
        "s0": float(s0),
        "s0_doubled_amplitude": float(s0_doubled),
        "ratio": float(s0 / s0_doubled),
        "closed_form": float(1.0 / (2.0 * np.pi * eps)),
        "variational_residual": float(vres),
        "config": _config_echo(cfg),
    }
    _emit_json(payload, cfg)
    _log(f"flow-check: s0={s0:.4f} in {time.perf_counter() - t0:.2f}s")
    return EXIT_OK


def _parse_filter(raw: Optional[str]) -> Optional[List[int]]:
    if raw is None:
        return None
    name_to_number = {v: k for k, v in acceptance.CRITERION_NAMES.items()}
    numbers = []
    for tok in str(raw).split(","):
        tok = tok.strip()
        if not tok:
            continue
        if tok.isdigit():
            numbers.append(int(tok))
        elif tok in name_to_number:
            numbers.append(name_to_number[tok])
        else:
            raise ConfigError(f"unknown criterion in --filter: {tok!r}")
    if not numbers:
        raise ConfigError("--filter selected no criteria")
    return numbers


def cmd_selftest(cfg: argparse.Namespace) -> int:
    numbers = _parse_filter(cfg.filter)
    results = acceptance.run_all(numbers, cfg.tolerance_scale)
    for res in results:
        sys.stdout.write(res.line + "\n")
    failed = [res for res in results if not res.passed]
    payload = {
        "command": "selftest",
        "tolerance_scale": float(cfg.tolerance_scale),
        "criteria": {
            str(res.number): {
                "name": res.name,
                "passed": res.passed,
                "detail": res.detail,
            } for res in results
        },
        "failed": [res.name for res in failed],
        "config": _config_echo(cfg),
    }
    if cfg.json:
        _emit_json(payload, cfg)
    if failed:
        names = ", ".join(f"{res.number} [{res.name}]" for res in failed)
        sys.stdout.write(f"FAILED criteria: {names}\n")
        return EXIT_COMPUTE
    sys.stdout.write("all criteria passed\n")
    return EXIT_OK


def _build_parser() -> _Parser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="flat key=value config file; "
                        "flags override its entries")
    common.add_argument("--hamiltonian",
                        help="pendulum (default), free, or mechanical")
    common.add_argument("--P", type=float,
                        help="momentum shift for the pendulum family")
    common.add_argument("--V", help="comma-separated cosine coefficients "
                        "of the potential (mechanical only)")
    common.add_argument("--grid-n", dest="grid_n", type=int,
                        help="grid size, a power of two (default 512)")
    common.add_argument("--h", type=float,
                        help="semigroup time step (default 0.01)")
    common.add_argument("--c", help="level, or 'critical' to estimate")
    common.add_argument("--t", type=float,
                        help="convexifying time for regularization")
    common.add_argument("--s", help="concavifying time, or 'auto' to "
                        "search")
    common.add_argument("--members", type=int,
                        help="ensemble size (default 16)")
    common.add_argument("--seed", type=int,
                        help="ensemble random seed (default 0)")
    common.add_argument("--epsilon", type=float,
                        help="strictness threshold (aubry) or cosine "
                        "amplitude (flow-check)")
    common.add_argument("--out", help="CSV output path")
    common.add_argument("--json", help="JSON summary path (default: "
                        "stdout)")
    common.add_argument("--filter", help="selftest: comma-separated "
                        "criterion numbers or names")
    common.add_argument("--tolerance-scale", dest="tolerance_scale",
                        type=float, help="selftest: scale every "
                        "tolerance (1.0 = contractual)")

    parser = _Parser(prog="weakkam",
                     description="numerical weak KAM toolkit")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("critical", parents=[common],
                   help="estimate the critical value")
    sub.add_parser("regularize", parents=[common],
                   help="converge and smooth a critical sub-solution")
    sub.add_parser("aubry", parents=[common],
                   help="estimate the Aubry set from an ensemble")
    sub.add_parser("flow-check", parents=[common],
                   help="graph-break scaling of the cosine seed")
    sub.add_parser("selftest", parents=[common],
                   help="run the acceptance suite")
    return parser


_COMMANDS = {
    "critical": cmd_critical,
    "regularize": cmd_regularize,
    "aubry": cmd_aubry,
    "flow-check": cmd_flow_check,
    "selftest": cmd_selftest,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _merge_config(args)
        return _COMMANDS[args.command](cfg)
    except ConfigError as exc:
        _log(f"config error: {exc}")
        return EXIT_CONFIG
    except WeakKAMError as exc:
        _log(f"computation error: {exc}")
        return EXIT_COMPUTE


if __name__ == "__main__":
    sys.exit(main())
