"""Command-line front end: deterministic CSV/JSON emission for sweeps and maps.

    nmsqueeze {spectrum|propagate|squeeze|scaling|husimi} --config FILE [flags]

Flags override config-file values. Floats are written as shortest
round-trip decimals (scientific below 1e-4), files end lines with LF, and
identical configurations produce byte-identical outputs. Exit codes:
0 success, 1 argument/config error, 2 numerical failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, fields
from pathlib import Path

import numpy as np

from . import collective, husimi, propagator, spectrum, squeezing
from .channel_oracle import KrausPair
from .errors import CapacityError, ConfigError, DomainError, NumericsError
from .spectral import SpectralModel


@dataclass(frozen=True)
class RunConfig:
    model: str = "oat"
    n: int = 100
    theta: str | float = "auto"
    omega0: float = 1.0
    eta: float = 0.03
    s: float = 1.0
    omega_c: float = 50.0
    t_max: float = 400.0
    dt: float | None = None
    grid_theta: int = 101
    grid_phi: int = 101
    output_dir: str = "out"
    convention: str = "paper"
    # sweep controls
    eta_min: float = 0.005
    eta_max: float = 0.05
    eta_steps: int = 10
    n_list: tuple[int, ...] = (100, 1000, 10000)
    times: tuple[float, ...] = (0.0, 400.0)

    def validate(self) -> "RunConfig":
        if self.model not in ("oat", "tat"):
            raise ConfigError(f"model must be oat|tat, got {self.model!r}")
        if self.n < 2:
            raise ConfigError("n must be >= 2")
        if self.theta != "auto":
            try:
                object.__setattr__(self, "theta", float(self.theta))
            except (TypeError, ValueError):
                raise ConfigError(f"theta must be 'auto' or a number, got {self.theta!r}")
        if not self.t_max > 0:
            raise ConfigError("t_max must be positive")
        if self.dt is not None and not self.dt > 0:
            raise ConfigError("dt must be positive")
        if self.convention not in squeezing.CONVENTIONS:
            raise ConfigError(f"convention must be paper|exact, got {self.convention!r}")
        if self.grid_theta < 3 or self.grid_phi < 3:
            raise ConfigError("grid_theta and grid_phi must be >= 3")
        # SpectralModel validates the physical-parameter invariants
        try:
            self.spectral_model()
        except DomainError as exc:
            raise ConfigError(str(exc)) from exc
        return self

    def spectral_model(self) -> SpectralModel:
        return SpectralModel(eta=self.eta, s=self.s, omega_c=self.omega_c, omega0=self.omega0)


def load_config(path: str | None, overrides: dict) -> RunConfig:
    data: dict = {}
    if path is not None:
        try:
            with open(path, encoding="utf-8") as fh:
                data = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config {path}: {exc}") from exc
        if not isinstance(data, dict):
            raise ConfigError("config file must hold a JSON object")
    known = {f.name for f in fields(RunConfig)}
    unknown = set(data) - known
    if unknown:
        raise ConfigError(f"unknown config keys: {sorted(unknown)}")
    merged = {**data, **{k: v for k, v in overrides.items() if v is not None}}
    for key in ("n_list", "times"):
        if key in merged and merged[key] is not None:
            merged[key] = tuple(merged[key])
    try:
        cfg = RunConfig(**merged)
    except TypeError as exc:
        raise ConfigError(str(exc)) from exc
    return cfg.validate()


def _fmt(x) -> str:
    if x is None:
        return ""
    if isinstance(x, (bool, np.bool_)):
        return str(int(x))
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    v = float(x)
    if v == 0.0:
        v = 0.0  # normalize -0.0
    return repr(v)


def _write_csv(path: Path, header: list[str], rows) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    lines = [",".join(header)]
    lines.extend(",".join(_fmt(x) for x in row) for row in rows)
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write("\n".join(lines) + "\n")


def _max_workers() -> int:
    raw = os.environ.get("NMSQZ_THREADS", "")
    try:
        val = int(raw)
    except ValueError:
        val = 0
    return max(1, val) if val > 0 else 1


def _resolved_theta(cfg: RunConfig) -> float:
    if cfg.theta == "auto":
        theta, _ = collective.optimize_theta(cfg.n, cfg.model, u_mod2=1.0)
        return theta
    return float(cfg.theta)


def cmd_spectrum(cfg: RunConfig) -> Path:
    etas = np.linspace(cfg.eta_min, cfg.eta_max, cfg.eta_steps)

    def scan(eta: float):
        model = SpectralModel(eta=float(eta), s=cfg.s, omega_c=cfg.omega_c, omega0=cfg.omega0)
        report = spectrum.find_bound_state(model)
        if report.exists and not report.threshold_degenerate:
            return (eta, report.e_b, report.z_residue)
        return (eta, None, None)

    workers = _max_workers()
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(scan, etas))
    else:
        rows = [scan(e) for e in etas]
    out = Path(cfg.output_dir) / "spectrum.csv"
    _write_csv(out, ["eta", "e_b", "z"], rows)
    return out


def cmd_propagate(cfg: RunConfig) -> Path:
    traj = propagator.solve_volterra(cfg.spectral_model(), cfg.t_max, cfg.dt)
    rows = zip(
        traj.t_grid,
        traj.u.real,
        traj.u.imag,
        np.abs(traj.u),
        np.where(traj.valid_rate, traj.gamma, 0.0),
        np.where(traj.valid_rate, traj.omega_shift, 0.0),
        traj.valid_rate,
    )
    out = Path(cfg.output_dir) / "propagator.csv"
    _write_csv(out, ["t", "re_u", "im_u", "abs_u", "gamma", "omega_shift", "valid_rate"], rows)
    return out


def cmd_squeeze(cfg: RunConfig) -> Path:
    theta = _resolved_theta(cfg)
    traj = propagator.solve_volterra(cfg.spectral_model(), cfg.t_max, cfg.dt)
    u_mod2 = np.abs(traj.u) ** 2
    if cfg.model == "oat":
        xi2 = [squeezing.xi2_oat(cfg.n, theta, um2, cfg.convention) for um2 in u_mod2]
    else:
        moments = collective.initial_moments(collective.tat_state(cfg.n, theta))
        xi2 = [squeezing.xi2_tat(cfg.n, moments, um2, cfg.convention) for um2 in u_mod2]
    out = Path(cfg.output_dir) / "squeeze.csv"
    _write_csv(out, ["t", "xi2"], zip(traj.t_grid, xi2))
    return out


def cmd_scaling(cfg: RunConfig) -> Path:
    if cfg.model != "oat":
        raise ConfigError("scaling implements the one-axis steady-state law; use model=oat")
    model = cfg.spectral_model()
    if cfg.eta == 0.0:
        u_mod2, z = 1.0, 1.0  # ideal decoherence-free reference
    else:
        traj = propagator.solve_volterra(model, cfg.t_max, cfg.dt)
        u_mod2 = float(np.abs(traj.u[-1]) ** 2)
        report = spectrum.find_bound_state(model)
        z = report.z_residue if (report.exists and not report.threshold_degenerate) else 0.0
    rows = []
    for n in cfg.n_list:
        _, xi2_num = collective.optimize_theta(int(n), "oat", u_mod2=u_mod2)
        xi2_formula = squeezing.xi2_oat_steady_asymptote(int(n), z)
        rows.append((int(n), xi2_num, xi2_formula, z))
    out = Path(cfg.output_dir) / "scaling.csv"
    _write_csv(out, ["n", "xi2_inf_numeric", "xi2_inf_formula", "z"], rows)
    return out


def cmd_husimi(cfg: RunConfig) -> list[Path]:
    theta = _resolved_theta(cfg)
    state = (
        collective.oat_state(cfg.n, theta)
        if cfg.model == "oat"
        else collective.tat_state(cfg.n, theta)
    )
    times = list(cfg.times)
    model = cfg.spectral_model()
    if cfg.eta == 0.0:
        u_at = {t: 1.0 + 0.0j for t in times}
    else:
        traj = propagator.solve_volterra(model, max(max(times), propagator.default_dt(model)), cfg.dt)
        idx = [int(round(t / traj.dt)) for t in times]
        u_at = {t: complex(traj.u[i]) for t, i in zip(times, idx)}
    outputs = []
    outdir = Path(cfg.output_dir)
    for k, t in enumerate(times):
        grid = husimi.husimi_q(
            state, KrausPair(u_at[t]), n_theta=cfg.grid_theta, n_phi=cfg.grid_phi,
        )
        th_col = np.repeat(grid.thetas, len(grid.phis))
        ph_col = np.tile(grid.phis, len(grid.thetas))
        rows = zip(th_col, ph_col, grid.q_raw.ravel(), grid.q_normalized.ravel())
        csv_path = outdir / f"husimi_t{k}.csv"
        _write_csv(csv_path, ["theta", "phi", "q_raw", "q_normalized"], rows)
        sidecar = {
            "t": t,
            "u_re": u_at[t].real,
            "u_im": u_at[t].imag,
            "symmetric_weight": grid.symmetric_weight,
            "anisotropy": husimi.transverse_anisotropy(grid),
        }
        json_path = outdir / f"husimi_t{k}.json"
        with open(json_path, "w", encoding="utf-8", newline="") as fh:
            json.dump(sidecar, fh, indent=2, sort_keys=True)
            fh.write("\n")
        outputs.extend([csv_path, json_path])
    return outputs


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="nmsqueeze", description=__doc__, exit_on_error=False)
    sub = parser.add_subparsers(dest="command", required=True)
    for name in ("spectrum", "propagate", "squeeze", "scaling", "husimi"):
        p = sub.add_parser(name, exit_on_error=False)
        p.add_argument("--config", default=None)
        p.add_argument("--eta", type=float, default=None)
        p.add_argument("--n", type=int, default=None)
        p.add_argument("--theta", default=None)
        p.add_argument("--model", choices=("oat", "tat"), default=None)
        p.add_argument("--t-max", dest="t_max", type=float, default=None)
        p.add_argument("--dt", type=float, default=None)
        p.add_argument("--out", dest="output_dir", default=None)
        p.add_argument("--convention", choices=squeezing.CONVENTIONS, default=None)
        p.add_argument("--omega0", type=float, default=None)
        p.add_argument("--s", type=float, default=None)
        p.add_argument("--omega-c", dest="omega_c", type=float, default=None)
        if name == "spectrum":
            p.add_argument("--eta-min", dest="eta_min", type=float, default=None)
            p.add_argument("--eta-max", dest="eta_max", type=float, default=None)
            p.add_argument("--eta-steps", dest="eta_steps", type=int, default=None)
        if name == "scaling":
            p.add_argument("--n-list", dest="n_list", default=None)
        if name == "husimi":
            p.add_argument("--times", default=None)
            p.add_argument("--grid-theta", dest="grid_theta", type=int, default=None)
            p.add_argument("--grid-phi", dest="grid_phi", type=int, default=None)
    return parser


_COMMANDS = {
    "spectrum": cmd_spectrum,
    "propagate": cmd_propagate,
    "squeeze": cmd_squeeze,
    "scaling": cmd_scaling,
    "husimi": cmd_husimi,
}


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except argparse.ArgumentError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except SystemExit as exc:  # argparse exits with 2 on usage errors; --help is 0
        return 0 if exc.code == 0 else 1
    overrides = {k: v for k, v in vars(args).items() if k not in ("command", "config")}
    if overrides.get("n_list") is not None:
        overrides["n_list"] = tuple(int(x) for x in str(overrides["n_list"]).split(","))
    if overrides.get("times") is not None:
        overrides["times"] = tuple(float(x) for x in str(overrides["times"]).split(","))
    try:
        cfg = load_config(args.config, overrides)
        _COMMANDS[args.command](cfg)
    except (ConfigError, DomainError, CapacityError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except NumericsError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
