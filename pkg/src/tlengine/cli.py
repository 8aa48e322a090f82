"""Command-line interface.

Subcommands:
  verify    run the full oracle-equivalence and identity suite
  spectrum  dump the closed-form spectra, one row per quanta number
  simulate  run a multi-cycle trajectory and stream per-cycle observables
  table1    print the eight interaction monomials with their flow arrows

Configuration is a flat key=value file (one assignment per line, '#'
comments) plus command-line overrides; flags win over the file.  Exit
codes: 0 success, 1 check failure, 2 invalid configuration.
"""
from __future__ import annotations

import argparse
import dataclasses
import os
import sys

import numpy as np

from . import energy, fock, output, sectors, simulate, smatrix, verify
from .output import FORMATS, Table
from .params import FINITE, STRONG_LIMIT, CycleParams

PARAM_FIELDS = tuple(f.name for f in dataclasses.fields(CycleParams))

_LEVELS = {"g": fock.LEVEL_G, "e": fock.LEVEL_E, "f": fock.LEVEL_F}


class ConfigError(Exception):
    """Invalid configuration; maps to exit code 2."""


@dataclasses.dataclass
class RunConfig:
    params: CycleParams
    quanta_bound: int = 8
    n_cycles: int = 100
    initial: str = "product:0,g,0"
    out: str | None = None
    fmt: str = "csv"
    seed: int = 12345
    draws: int = 100
    spectrum_draws: int = 25
    tol_operator: float = verify.DEFAULT_TOL_OPERATOR
    tol_trajectory: float = verify.DEFAULT_TOL_TRAJECTORY
    plot: bool = False
    explicit_bound: bool = False

    def __post_init__(self):
        if self.quanta_bound < 1:
            raise ConfigError("quanta_bound must be >= 1")
        if self.n_cycles < 0:
            raise ConfigError("cycles must be >= 0")
        if self.fmt not in FORMATS:
            raise ConfigError(f"format must be one of {FORMATS}")


def _parse_float(key: str, text: str) -> float:
    try:
        return float(text)
    except ValueError:
        raise ConfigError(f"{key} must be a number, got {text!r}") from None


def _parse_int(key: str, text: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise ConfigError(f"{key} must be an integer, got {text!r}") from None


def read_config_file(path: str) -> dict[str, str]:
    """Flat key=value lines; blank lines and '#' comments are skipped."""
    try:
        with open(path, encoding="utf-8") as handle:
            lines = handle.readlines()
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from None
    values = {}
    for lineno, raw in enumerate(lines, 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected key=value, got {line!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        if not key:
            raise ConfigError(f"{path}:{lineno}: empty key")
        values[key] = value
    return values


_CONFIG_KEYS = set(PARAM_FIELDS) | {
    "quanta_bound", "cycles", "initial", "out", "format", "seed", "draws",
    "spectrum_draws", "tol_operator", "tol_trajectory", "plot",
}


def build_run_config(args: argparse.Namespace) -> RunConfig:
    values: dict[str, str] = {}
    if args.config is not None:
        values = read_config_file(args.config)
        unknown = set(values) - _CONFIG_KEYS
        if unknown:
            raise ConfigError(f"unknown config keys: {', '.join(sorted(unknown))}")

    def pick(key: str, flag_value):
        return flag_value if flag_value is not None else values.get(key)

    param_kwargs = {}
    for name in PARAM_FIELDS:
        raw = pick(name, getattr(args, name))
        if raw is None:
            continue
        if name == "pulse_mode":
            if str(raw) not in (STRONG_LIMIT, FINITE):
                raise ConfigError(
                    f"pulse_mode must be {STRONG_LIMIT!r} or {FINITE!r}, got {raw!r}"
                )
            param_kwargs[name] = str(raw)
        elif name in ("tau_a", "tau_b") and str(raw).lower() == "none":
            param_kwargs[name] = None
        else:
            param_kwargs[name] = raw if isinstance(raw, float) else _parse_float(name, raw)
    try:
        params = CycleParams(**param_kwargs)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None

    def pick_typed(key, flag_value, parse, default):
        raw = pick(key, flag_value)
        if raw is None:
            return default
        return raw if not isinstance(raw, str) else parse(key, raw)

    bound = pick("quanta_bound", args.quanta_bound)
    plot_raw = pick("plot", True if getattr(args, "plot", False) else None)
    if isinstance(plot_raw, str):
        if plot_raw.lower() not in ("true", "false", "0", "1"):
            raise ConfigError(f"plot must be a boolean, got {plot_raw!r}")
        plot_raw = plot_raw.lower() in ("true", "1")
    return RunConfig(
        params=params,
        quanta_bound=(8 if bound is None
                      else bound if isinstance(bound, int)
                      else _parse_int("quanta_bound", bound)),
        n_cycles=pick_typed("cycles", args.cycles, _parse_int, 100),
        initial=str(pick("initial", getattr(args, "initial", None)) or "product:0,g,0"),
        out=pick("out", args.out),
        fmt=str(pick("format", args.format) or "csv"),
        seed=pick_typed("seed", args.seed, _parse_int, 12345),
        draws=pick_typed("draws", getattr(args, "draws", None), _parse_int, 100),
        spectrum_draws=pick_typed("spectrum_draws",
                                  getattr(args, "spectrum_draws", None), _parse_int, 25),
        tol_operator=pick_typed("tol_operator", getattr(args, "tol_operator", None),
                                _parse_float, verify.DEFAULT_TOL_OPERATOR),
        tol_trajectory=pick_typed("tol_trajectory",
                                  getattr(args, "tol_trajectory", None),
                                  _parse_float, verify.DEFAULT_TOL_TRAJECTORY),
        plot=bool(plot_raw),
        explicit_bound=bound is not None,
    )


def parse_initial_spec(text: str, seed: int):
    """Initial-state specs:
      product:m,LEVEL,k
      transfer:n,SIGN,k          SIGN is + or -
      superposition:AMP*m,LEVEL,k;...   AMP is a complex literal
      sector_random:n            seeded Haar-like draw inside H_n
    LEVEL is one of g, e, f."""
    kind, _, body = text.partition(":")
    try:
        if kind == "product":
            m, level, k = body.split(",")
            return ("product", int(m), _LEVELS[level.strip()], int(k))
        if kind == "transfer":
            n, sign, k = body.split(",")
            sign = sign.strip()
            if sign not in ("+", "-"):
                raise ValueError
            return ("transfer_eigvec", int(n), +1 if sign == "+" else -1, int(k))
        if kind == "superposition":
            components = []
            for chunk in body.split(";"):
                amp, _, occ = chunk.partition("*")
                m, level, k = occ.split(",")
                components.append((complex(amp), (int(m), _LEVELS[level.strip()], int(k))))
            return ("superposition", components)
        if kind == "sector_random":
            return ("sector_random", int(body), seed)
    except (ValueError, KeyError):
        raise ConfigError(f"malformed initial-state spec {text!r}") from None
    raise ConfigError(f"unknown initial-state kind {kind!r}")


def make_state(spec, params: CycleParams, quanta_bound: int) -> np.ndarray:
    if spec[0] == "sector_random":
        _, n, seed = spec
        if n > quanta_bound:
            raise ConfigError("sector_random sector exceeds the quanta bound")
        idx = sectors.sector_indices(sectors.sector_basis(n), quanta_bound, quanta_bound)
        rng = np.random.default_rng(seed)
        dim = (quanta_bound + 1) * fock.ENGINE_DIM * (quanta_bound + 1)
        state = np.zeros(dim, dtype=complex)
        state[idx] = rng.normal(size=len(idx)) + 1j * rng.normal(size=len(idx))
        return state / np.linalg.norm(state)
    try:
        return simulate.make_initial_state(spec, params, quanta_bound)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None


def _plot_path(out: str) -> str:
    return os.path.splitext(out)[0] + ".png"


def cmd_verify(config: RunConfig) -> int:
    results = verify.run_all(
        params=config.params,
        draws=config.draws,
        spectrum_draws=config.spectrum_draws,
        seed=config.seed,
        quanta_bound=config.quanta_bound if config.explicit_bound else None,
        tol_operator=config.tol_operator,
        tol_trajectory=config.tol_trajectory,
    )
    for result in results:
        print(result)
    failures = [r for r in results if not r.passed]
    if config.out is not None:
        table = Table(
            ("check", "deviation[1]", "tolerance[1]", "status"),
            tuple((r.name, r.deviation, r.tolerance, "pass" if r.passed else "fail")
                  for r in results),
        )
        output.write(table, config.out, config.fmt)
    if failures:
        print(f"FAILED: {failures[0].name}", file=sys.stderr)
        return 1
    print(f"all {len(results)} checks passed")
    return 0


def spectrum_table(config: RunConfig) -> Table:
    params, n_max = config.params, config.quanta_bound
    s = smatrix.compose_cycle(params, n_max, check=False)
    scale = 2.0 * (params.mu - params.delta)
    rows = []
    for n in range(n_max + 1):
        cold = smatrix.dressed_coefficients("cold", n, params)
        warm = smatrix.dressed_coefficients("warm", n, params)
        entry = energy.transfer_spectrum(n, params)
        work_plus, work_minus = energy.pulse_work_spectrum(n, params)
        phases = np.sort(np.angle(sectors.sector_spectrum(s, n, n_max, n_max)))
        rows.append((
            n,
            cold.splitting, cold.angle, warm.splitting, warm.angle,
            entry.rho_plus, entry.rho_minus,
            scale * work_plus, scale * work_minus,
            ";".join(output.format_cell(float(p)) for p in phases),
        ))
    return Table(
        ("n", "lambda_n[hbar=1]", "theta_n[rad]", "xi_n[hbar=1]", "phi_n[rad]",
         "rho_plus[quanta]", "rho_minus[quanta]",
         "work_plus[hbar=1]", "work_minus[hbar=1]", "sector_eigenphases[rad]"),
        tuple(rows),
    )


def cmd_spectrum(config: RunConfig) -> int:
    table = spectrum_table(config)
    text = output.write(table, config.out, config.fmt)
    if config.out is None:
        sys.stdout.write(text)
    if config.plot:
        if config.out is None:
            raise ConfigError("--plot requires --out to anchor the figure path")
        from . import report
        report.plot_spectrum(table, _plot_path(config.out))
    return 0


def simulate_table(config: RunConfig) -> Table:
    spec = parse_initial_spec(config.initial, config.seed)
    state = make_state(spec, config.params, config.quanta_bound)
    records = simulate.run(state, config.params, config.quanta_bound, config.n_cycles)
    columns = (
        "cycle", "cold_energy[hbar=1]", "warm_energy[hbar=1]",
        "p_g[1]", "p_e[1]", "p_f[1]", "total_quanta[quanta]",
        "entropy_cold[nat]", "entropy_engine[nat]", "entropy_warm[nat]",
        "return_amplitude[1]",
    )
    return Table(columns, tuple(tuple(r.as_row()) for r in records))


def cmd_simulate(config: RunConfig) -> int:
    table = simulate_table(config)
    text = output.write(table, config.out, config.fmt)
    if config.out is None:
        sys.stdout.write(text)
    if config.plot:
        if config.out is None:
            raise ConfigError("--plot requires --out to anchor the figure path")
        from . import report
        report.plot_trajectory(table, _plot_path(config.out))
    return 0


def cmd_table1(config: RunConfig) -> int:
    try:
        labels = energy.classify_flows(config.params.with_(pulse_mode=STRONG_LIMIT))
    except AssertionError as exc:
        print(f"flow classification mismatch: {exc}", file=sys.stderr)
        return 1
    width = max(len(label.term) for label in labels)
    print(f"{'term'.ljust(width)}  cold  warm")
    for label in labels:
        cold, warm = label.arrows
        print(f"{label.term.ljust(width)}  {cold:^4}  {warm:^4}")
    if config.out is not None:
        table = Table(
            ("term", "cold_flow", "warm_flow"),
            tuple((label.term, *label.arrows) for label in labels),
        )
        output.write(table, config.out, config.fmt)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tlengine",
        description="Three-level engine cycle: verification, spectra, simulation.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p: argparse.ArgumentParser):
        p.add_argument("--config", metavar="PATH", help="flat key=value config file")
        p.add_argument("--quanta-bound", type=int, dest="quanta_bound", metavar="INT")
        p.add_argument("--cycles", type=int, metavar="INT")
        p.add_argument("--out", metavar="PATH")
        p.add_argument("--format", choices=FORMATS)
        p.add_argument("--seed", type=int, metavar="INT")
        for name in PARAM_FIELDS:
            flag = "--" + name.replace("_", "-")
            if name == "pulse_mode":
                p.add_argument(flag, dest=name, choices=(STRONG_LIMIT, FINITE))
            else:
                p.add_argument(flag, dest=name, type=float, metavar="X")

    p_verify = sub.add_parser("verify", help="run every oracle and identity check")
    add_common(p_verify)
    p_verify.add_argument("--draws", type=int, metavar="INT")
    p_verify.add_argument("--spectrum-draws", type=int, dest="spectrum_draws",
                          metavar="INT")
    p_verify.add_argument("--tol-operator", type=float, dest="tol_operator", metavar="X")
    p_verify.add_argument("--tol-trajectory", type=float, dest="tol_trajectory",
                          metavar="X")

    p_spectrum = sub.add_parser("spectrum", help="closed-form spectra per quanta number")
    add_common(p_spectrum)
    p_spectrum.add_argument("--plot", action="store_true",
                            help="render a figure next to the output file")

    p_simulate = sub.add_parser("simulate", help="multi-cycle trajectory")
    add_common(p_simulate)
    p_simulate.add_argument("--initial", metavar="SPEC",
                            help="e.g. product:0,g,0 | transfer:1,+,0 | sector_random:2")
    p_simulate.add_argument("--plot", action="store_true",
                            help="render a figure next to the output file")

    p_table1 = sub.add_parser("table1", help="interaction-term flow directions")
    add_common(p_table1)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    commands = {
        "verify": cmd_verify,
        "spectrum": cmd_spectrum,
        "simulate": cmd_simulate,
        "table1": cmd_table1,
    }
    try:
        config = build_run_config(args)
        return commands[args.command](config)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
