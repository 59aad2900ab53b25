"""
Command-line front end.

    peridispersion dispersion --dim 2 --alpha 0.5 --out disp.csv
    peridispersion evolve --config run.cfg --times 0,1,2
    peridispersion tables
    peridispersion verify

Settings come from an optional ``key = value`` config file, overridden by
flags. Exit codes: 0 success, 1 invalid configuration, 2 numerical failure
(including failed verification checks), 3 I/O error.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass, field, fields, replace
from pathlib import Path
from typing import Optional

import numpy as np

from . import _csv
from .dispersion import (
    MaterialParams,
    dispersion_table,
    high_freq_coefficient,
    large_scale_group_velocity,
    low_freq_coefficient,
)
from .initial_conditions import dipole_initial_condition, gaussian_spectrum
from .oracle import PLANEWAVE_TOL, REALNESS_TOL, ROTATION_TOL, VERIFY_HEADER, verify_matrix
from .quadrature import QuadratureError
from .solver import EvolutionRequest, field_snapshot, write_snapshots
from .special import ELL_MAX_SUPPORTED

EXIT_OK, EXIT_INVALID, EXIT_NUMERICAL, EXIT_IO = 0, 1, 2, 3

IC_KINDS = ("gaussian-radial", "dipole")
TABLE_ALPHAS = (0.9, 0.5, 0.1)
TABLES_HEADER = ("dim", "alpha", "low_freq_coefficient", "high_freq_coefficient", "group_velocity")


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    dim: Optional[int] = None
    kappa: float = 1.0
    rho: float = 1.0
    delta: float = 1.0
    alpha: Optional[float] = None
    sigma: float = 1.0
    times: list = field(default_factory=lambda: [0.0, 1.0, 2.0])
    ic: str = "gaussian-radial"
    lmax: int = 8
    grid_n: int = 200
    grid_rmax: Optional[float] = None
    grid_ntheta: int = 13
    grid_nphi: int = 1
    out: str = "-"

    @property
    def params(self):
        return MaterialParams(self.kappa, self.rho, self.delta, 0.5 if self.alpha is None else self.alpha)

    def resolved_dim(self):
        if self.ic == "dipole":
            return 3 if self.dim is None else self.dim
        return 2 if self.dim is None else self.dim

    def validate(self):
        if self.dim is not None and self.dim not in (1, 2, 3):
            raise ConfigError(f"dim must be 1, 2 or 3, got {self.dim}")
        if self.alpha is not None and not 0.0 < self.alpha < 1.0:
            raise ConfigError(f"alpha must lie in the open interval (0, 1), got {self.alpha}")
        try:
            self.params
        except ValueError as exc:
            raise ConfigError(str(exc)) from None
        if not self.sigma > 0:
            raise ConfigError(f"sigma must be positive, got {self.sigma}")
        if any(t < 0 for t in self.times) or any(b < a for a, b in zip(self.times, self.times[1:])):
            raise ConfigError("times must be nonnegative and sorted nondecreasing")
        if self.ic not in IC_KINDS:
            raise ConfigError(f"ic must be one of {IC_KINDS}, got {self.ic!r}")
        if self.ic == "dipole" and self.resolved_dim() != 3:
            raise ConfigError("the dipole initial condition is three-dimensional; dim must be 3")
        if not 0 <= self.lmax <= ELL_MAX_SUPPORTED:
            raise ConfigError(f"lmax must lie in [0, {ELL_MAX_SUPPORTED}]")
        if self.grid_n < 0 or self.grid_ntheta < 1 or self.grid_nphi < 1:
            raise ConfigError("grid counts must be nonnegative (angular counts at least 1)")
        if self.grid_rmax is not None and not self.grid_rmax > 0:
            raise ConfigError("grid-rmax must be positive")
        return self


def _parse_list(text):
    text = text.strip().strip("[]")
    return [float(v) for v in text.replace(",", " ").split()] if text else []


_CONVERTERS = {
    "dim": int,
    "kappa": float,
    "rho": float,
    "delta": float,
    "alpha": float,
    "sigma": float,
    "times": _parse_list,
    "ic": str,
    "lmax": int,
    "grid_n": int,
    "grid_rmax": float,
    "grid_ntheta": int,
    "grid_nphi": int,
    "out": str,
}


def read_config(path):
    """Parse a ``key = value`` file into a dict of typed settings."""
    settings = {}
    for lineno, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected 'key = value'")
        key, value = (s.strip() for s in line.split("=", 1))
        key = key.replace("-", "_")
        if key not in _CONVERTERS:
            raise ConfigError(f"{path}:{lineno}: unknown key {key!r}")
        try:
            settings[key] = _CONVERTERS[key](value)
        except ValueError:
            raise ConfigError(f"{path}:{lineno}: bad value for {key}: {value!r}") from None
    return settings


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="key = value settings file (flags override it)")
    common.add_argument("--dim", type=int)
    common.add_argument("--alpha", type=float)
    common.add_argument("--delta", type=float)
    common.add_argument("--kappa", type=float)
    common.add_argument("--rho", type=float)
    common.add_argument("--sigma", type=float)
    common.add_argument("--times", type=_parse_list, help="comma-separated times")
    common.add_argument("--ic", choices=IC_KINDS)
    common.add_argument("--lmax", type=int)
    common.add_argument("--grid-n", dest="grid_n", type=int, help="number of radial samples")
    common.add_argument("--grid-rmax", dest="grid_rmax", type=float, help="largest sampled radius")
    common.add_argument("--grid-ntheta", dest="grid_ntheta", type=int)
    common.add_argument("--grid-nphi", dest="grid_nphi", type=int)
    common.add_argument("--out", help="output CSV path, '-' for stdout")

    parser = argparse.ArgumentParser(prog="peridispersion", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("dispersion", parents=[common], help="tabulate omega(xi) over xi*delta in [1e-3, 1e4]")
    sub.add_parser("evolve", parents=[common], help="sample the solution at the requested times")
    sub.add_parser("tables", parents=[common], help="asymptotic coefficients and large-scale group velocity")
    verify = sub.add_parser("verify", parents=[common], help="run the direct-space oracle matrix")
    verify.add_argument("--planewave-tol", type=float, default=PLANEWAVE_TOL, help=argparse.SUPPRESS)
    return parser


def config_from_args(args):
    cfg = RunConfig()
    settings = read_config(args.config) if args.config else {}
    for f in fields(RunConfig):
        value = getattr(args, f.name, None)
        if value is not None:
            settings[f.name] = value
    return replace(cfg, **settings).validate()


def _emit(cfg, write):
    if cfg.out == "-":
        write(sys.stdout)
    else:
        write(Path(cfg.out))


def cmd_dispersion(cfg):
    dim = cfg.resolved_dim()
    n = cfg.grid_n if cfg.grid_n > 0 else 200
    xi = np.logspace(-3, 4, n) / cfg.delta
    table = dispersion_table(dim, cfg.params, xi)
    _emit(cfg, table.to_csv)
    return EXIT_OK


def _default_rmax(cfg, dim):
    t_max = max(cfg.times, default=0.0)
    return 6.0 * cfg.sigma + large_scale_group_velocity(dim, cfg.params) * t_max


def cmd_evolve(cfg):
    dim = cfg.resolved_dim()
    rmax = cfg.grid_rmax or _default_rmax(cfg, dim)
    radii = np.linspace(0.0, rmax, cfg.grid_n)
    if cfg.ic == "dipole":
        theta = np.linspace(0.0, np.pi, cfg.grid_ntheta)
        phi = 2.0 * np.pi * np.arange(cfg.grid_nphi) / cfg.grid_nphi
        angles = [(th, ph) for th in theta for ph in phi]
        req = EvolutionRequest(
            3, cfg.params, cfg.times, radii, multipoles=dipole_initial_condition(cfg.sigma), angles=angles, ell_max=cfg.lmax
        )
    else:
        spectra = (gaussian_spectrum(cfg.sigma, dim), None)
        req = EvolutionRequest(dim, cfg.params, cfg.times, radii, spectra=spectra)
    snaps = field_snapshot(req)
    _emit(cfg, lambda target: write_snapshots(snaps, target, anisotropic=req.anisotropic))
    return EXIT_OK


def tables_rows(dims, alphas, kappa=1.0, rho=1.0, delta=1.0):
    rows = []
    for dim in dims:
        for alpha in alphas:
            p = MaterialParams(kappa, rho, delta, alpha)
            rows.append(
                (dim, alpha, low_freq_coefficient(dim, p), high_freq_coefficient(dim, p), large_scale_group_velocity(dim, p))
            )
    return rows


def cmd_tables(cfg):
    dims = (cfg.dim,) if cfg.dim is not None else (1, 2, 3)
    alphas = (cfg.alpha,) if cfg.alpha is not None else TABLE_ALPHAS
    rows = tables_rows(dims, alphas, cfg.kappa, cfg.rho, cfg.delta)
    _emit(cfg, lambda target: _csv.write_rows(target, TABLES_HEADER, rows))
    return EXIT_OK


def cmd_verify(cfg, planewave_tol=PLANEWAVE_TOL):
    dims = (cfg.dim,) if cfg.dim is not None else (1, 2, 3)
    alphas = (cfg.alpha,) if cfg.alpha is not None else (0.1, 0.5, 0.9)
    rows = verify_matrix(
        dims, alphas, kappa=cfg.kappa, rho=cfg.rho, delta=cfg.delta,
        planewave_tol=planewave_tol, realness_tol=REALNESS_TOL, rotation_tol=ROTATION_TOL,
    )
    _emit(cfg, lambda target: _csv.write_rows(target, VERIFY_HEADER, rows))
    failed = [r for r in rows if not r[-1]]
    if failed:
        print(f"{len(failed)} verification check(s) failed:", file=sys.stderr)
        print(_csv.to_string(VERIFY_HEADER, failed), end="", file=sys.stderr)
        return EXIT_NUMERICAL
    return EXIT_OK


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = config_from_args(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except OSError as exc:
        print(f"error: cannot read config {exc.filename}: {exc.strerror}", file=sys.stderr)
        return EXIT_IO
    try:
        if args.command == "dispersion":
            return cmd_dispersion(cfg)
        if args.command == "evolve":
            return cmd_evolve(cfg)
        if args.command == "tables":
            return cmd_tables(cfg)
        return cmd_verify(cfg, planewave_tol=args.planewave_tol)
    except OSError as exc:
        print(f"error: cannot write {exc.filename}: {exc.strerror}", file=sys.stderr)
        return EXIT_IO
    except (QuadratureError, FloatingPointError, np.linalg.LinAlgError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
