"""Command line front end: spectrum, wavefunction, coherent and verify subcommands.

Every subcommand writes a CSV (or JSON) table to --out or stdout.  Exit codes:
0 success, 1 verification failure, 2 invalid configuration.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass, fields

import numpy as np

from .coherent import EvolvedCoherentState, coherent_evolved
from .defects import (
    Component,
    DefectConfig,
    DefectKind,
    QuantumNumbers,
    bargmann_index,
    centrifugal_parameter,
    coupling_parameter,
    energy_squared,
)
from .radial import Form, mode_for, sturmian_eval
from .special import integrate_halfline

EXIT_OK, EXIT_FAILED, EXIT_INVALID = 0, 1, 2


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    defect: str = "string"
    alpha: float = 1.0
    mass: float = 1.0
    omega: float = 1.0
    flux_ratio: float = 0.0
    torsion: float = 0.0
    kz: float = 0.0
    hbar: float = 1.0
    l_max: int = 2
    nr_max: int = 2
    component: str = "both"
    xi_re: float = 0.4
    xi_im: float = 0.2
    tau_max: float = 1.0
    tau_steps: int = 5
    rho_min: float = 0.05
    rho_max: float = 6.0
    rho_steps: int = 60
    format: str = "csv"
    out: str | None = None
    seed: int = 12345

    def validate(self):
        if self.defect not in {k.value for k in DefectKind}:
            raise ConfigError(f"unknown defect {self.defect!r}")
        if self.component not in {"upper", "lower", "both"}:
            raise ConfigError(f"unknown component {self.component!r}")
        if self.format not in {"csv", "json"}:
            raise ConfigError(f"unknown format {self.format!r}")
        if self.l_max < 0 or self.nr_max < 0:
            raise ConfigError("l_max and nr_max must be nonnegative")
        if not 0 < self.rho_min < self.rho_max:
            raise ConfigError("need 0 < rho_min < rho_max")
        if self.rho_steps < 1 or self.tau_steps < 1:
            raise ConfigError("rho_steps and tau_steps must be positive")
        if self.tau_max < 0:
            raise ConfigError("tau_max must be nonnegative")
        if not abs(self.xi) < 1:
            raise ConfigError(f"|xi| must be < 1, got {abs(self.xi)}")
        try:
            self.defect_config()
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc

    @property
    def xi(self) -> complex:
        return complex(self.xi_re, self.xi_im)

    def defect_config(self) -> DefectConfig:
        return DefectConfig(DefectKind(self.defect), self.alpha, self.mass, self.omega,
                            self.flux_ratio, self.torsion, self.hbar)

    def components(self) -> list[Component]:
        if self.component == "both":
            return [Component.UPPER, Component.LOWER]
        return [Component(self.component)]

    def rho_grid(self) -> np.ndarray:
        return np.linspace(self.rho_min, self.rho_max, self.rho_steps)

    def tau_grid(self) -> np.ndarray:
        if self.tau_steps == 1:
            return np.zeros(1)
        return np.linspace(0.0, self.tau_max, self.tau_steps)


_FIELD_TYPES = {f.name: f.type for f in fields(RunConfig)}


def _coerce(name: str, raw: str):
    kind = _FIELD_TYPES[name]
    try:
        if kind == "float":
            return float(raw)
        if kind == "int":
            return int(raw)
    except ValueError as exc:
        raise ConfigError(f"bad value for {name}: {raw!r}") from exc
    return raw


def read_config_file(path: str) -> dict:
    """Parse ``key = value`` lines; keys use flag spelling with '-' or '_'."""
    values = {}
    try:
        text = open(path, encoding="utf-8").read()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected key = value")
        key, raw = (s.strip() for s in line.split("=", 1))
        key = key.replace("-", "_")
        if key not in _FIELD_TYPES:
            raise ConfigError(f"{path}:{lineno}: unknown key {key!r}")
        values[key] = _coerce(key, raw)
    return values


def fmt(x) -> str:
    if isinstance(x, (bool, np.bool_)):
        return str(bool(x)).lower()
    if isinstance(x, (float, np.floating)):
        return format(float(x), ".17g")
    return str(x)


def write_table(header: list[str], rows: list[list], cfg: RunConfig, stream) -> None:
    if cfg.format == "json":
        data = [dict(zip(header, row)) for row in rows]
        text = json.dumps({"columns": header, "rows": data}, indent=1, default=float) + "\n"
    else:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(header)
        for row in rows:
            w.writerow([fmt(v) for v in row])
        text = buf.getvalue()
    stream.write(text)


SPECTRUM_HEADER = ["kind", "component", "n_r", "l", "lambda_centrifugal", "lambda_coupling",
                   "k_bargmann", "E2", "E_plus", "E_minus"]


def cmd_spectrum(cfg: RunConfig):
    dc = cfg.defect_config()
    rows = []
    for comp in cfg.components():
        for n_r in range(cfg.nr_max + 1):
            for l in range(cfg.l_max + 1):
                qn = QuantumNumbers(n_r, l, cfg.kz, comp)
                lam_c = centrifugal_parameter(dc, qn)
                e2 = energy_squared(dc, qn)
                e = math.sqrt(e2) if e2 >= 0 else math.nan
                rows.append([dc.kind.value, comp.value, n_r, l, lam_c,
                             coupling_parameter(dc, qn), bargmann_index(lam_c), e2, e, -e])
    return SPECTRUM_HEADER, rows


WAVEFUNCTION_HEADER = ["component", "n_r", "l", "k_bargmann", "rho", "F", "chi"]


def cmd_wavefunction(cfg: RunConfig):
    """Samples of F and chi per mode, each mode closed by a 'norm' footer row."""
    dc = cfg.defect_config()
    rho = cfg.rho_grid()
    rows = []
    for comp in cfg.components():
        for n_r in range(cfg.nr_max + 1):
            for l in range(cfg.l_max + 1):
                qn = QuantumNumbers(n_r, l, cfg.kz, comp)
                fmode = mode_for(dc, qn, Form.F)
                cmode = mode_for(dc, qn, Form.CHI)
                f = sturmian_eval(fmode, rho)
                chi = sturmian_eval(cmode, rho)
                key = [comp.value, n_r, l, fmode.k]
                rows.extend(key + [r, a, b] for r, a, b in zip(rho, f, chi))
                norm_f = integrate_halfline(lambda r: sturmian_eval(fmode, r) ** 2,
                                            scale=dc.m_omega)
                norm_chi = integrate_halfline(lambda r: sturmian_eval(cmode, r) ** 2 * r,
                                              scale=dc.m_omega)
                rows.append(key + ["norm", norm_f, norm_chi])
    return WAVEFUNCTION_HEADER, rows


COHERENT_HEADER = ["component", "l", "k_bargmann", "tau", "rho", "re_chi", "im_chi", "abs2_chi",
                   "norm"]


def coherent_norm(state: EvolvedCoherentState) -> float:
    return integrate_halfline(lambda r: abs(coherent_evolved(state, r)) ** 2 * r,
                              scale=state.m_omega)


def cmd_coherent(cfg: RunConfig):
    dc = cfg.defect_config()
    rho = cfg.rho_grid()
    rows = []
    for comp in cfg.components():
        for l in range(cfg.l_max + 1):
            k = bargmann_index(centrifugal_parameter(dc, QuantumNumbers(0, l, cfg.kz, comp)))
            base = EvolvedCoherentState(cfg.xi, k, dc.m_omega, 0.0, dc.hbar)
            for tau in cfg.tau_grid():
                state = base.at(float(tau))
                vals = coherent_evolved(state, rho)
                norm = coherent_norm(state)
                rows.extend([comp.value, l, k, float(tau), r, v.real, v.imag, abs(v) ** 2, norm]
                            for r, v in zip(rho, vals))
    return COHERENT_HEADER, rows


VERIFY_HEADER = ["check", "residual", "threshold", "passed"]


def cmd_verify(cfg: RunConfig, casimir_offset: float = 0.0):
    from .verify import run_checks

    report = run_checks(cfg, casimir_offset=casimir_offset)
    rows = [[c["check"], c["residual"], c["threshold"], c["passed"]] for c in report["checks"]]
    return VERIFY_HEADER, rows, report


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    g = common.add_argument_group("configuration")
    g.add_argument("--defect", choices=[k.value for k in DefectKind])
    g.add_argument("--alpha", type=float)
    g.add_argument("--mass", type=float)
    g.add_argument("--omega", type=float)
    g.add_argument("--flux-ratio", type=float, help="e Phi_B / 2 pi")
    g.add_argument("--torsion", type=float, help="J^z (dislocation only)")
    g.add_argument("--kz", type=float, help="momentum along z")
    g.add_argument("--hbar", type=float)
    g.add_argument("--l-max", type=int)
    g.add_argument("--nr-max", type=int)
    g.add_argument("--component", choices=["upper", "lower", "both"])
    g.add_argument("--xi-re", type=float)
    g.add_argument("--xi-im", type=float)
    g.add_argument("--tau-max", type=float)
    g.add_argument("--tau-steps", type=int)
    g.add_argument("--rho-min", type=float)
    g.add_argument("--rho-max", type=float)
    g.add_argument("--rho-steps", type=int)
    g.add_argument("--format", choices=["csv", "json"])
    g.add_argument("--out", metavar="PATH")
    g.add_argument("--config", metavar="PATH", help="key = value file; flags override it")
    g.add_argument("--seed", type=int)

    parser = argparse.ArgumentParser(
        prog="dirac-defect",
        description="Dirac oscillator with topological defects: spectra, radial states, "
                    "su(1,1) coherent states and verification.")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("spectrum", parents=[common], help="energy spectrum table")
    sub.add_parser("wavefunction", parents=[common], help="radial eigenfunction samples")
    sub.add_parser("coherent", parents=[common], help="coherent state over a (tau, rho) grid")
    v = sub.add_parser("verify", parents=[common], help="run all numerical checks")
    v.add_argument("--casimir-offset", type=float, default=0.0, help=argparse.SUPPRESS)
    return parser


def resolve_config(args: argparse.Namespace) -> RunConfig:
    values = {}
    if args.config:
        values.update(read_config_file(args.config))
    for name in _FIELD_TYPES:
        flag = getattr(args, name, None)
        if flag is not None:
            values[name] = flag
    if args.command == "verify" and "format" not in values:
        values["format"] = "json"
    cfg = RunConfig(**values)
    cfg.validate()
    return cfg


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = resolve_config(args)
    except ConfigError as exc:
        print(f"dirac-defect: invalid configuration: {exc}", file=sys.stderr)
        return EXIT_INVALID

    status = EXIT_OK
    report = None
    if args.command == "spectrum":
        header, rows = cmd_spectrum(cfg)
    elif args.command == "wavefunction":
        header, rows = cmd_wavefunction(cfg)
    elif args.command == "coherent":
        header, rows = cmd_coherent(cfg)
    else:
        header, rows, report = cmd_verify(cfg, args.casimir_offset)
        if not report["passed"]:
            status = EXIT_FAILED

    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8", newline="") as fh:
            _emit(args.command, header, rows, cfg, fh, report)
    else:
        _emit(args.command, header, rows, cfg, sys.stdout, report)
    return status


def _emit(command, header, rows, cfg, stream, report):
    if command == "verify" and cfg.format == "json":
        stream.write(json.dumps(report, indent=1) + "\n")
    else:
        write_table(header, rows, cfg, stream)


if __name__ == "__main__":
    sys.exit(main())
