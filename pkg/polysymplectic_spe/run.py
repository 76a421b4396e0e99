#!/usr/bin/env python3
"""
Polysymplectic SPE - Command Line Runner.

=======================================

Drives the polysymplectic integrator, the pseudo-spectral baseline and the
diagnostics harness from a key=value configuration file.

Usage:
    spe-run simulate --config run.cfg
    spe-run soliton --config run.cfg
    spe-run convergence --config run.cfg [--fixed-dx]
    spe-run compare --config run.cfg
    spe-run verify [--seed 0] [--cells 10000]

Exit codes:
    0 ok, 2 usage, 3 configuration, 4 numerical failure, 5 I/O.

Environment Variables:
    SCHEME_*, SPECTRAL_*, BENCH_*: numerical settings (see polysymplectic_spe.config)
"""

from __future__ import annotations

import argparse
import logging
import sys
from collections.abc import Sequence
from pathlib import Path

import structlog

# Load environment variables from .env file
from dotenv import load_dotenv

from polysymplectic_spe.config import validate_settings
from polysymplectic_spe.errors import CertificationFailed, ExitCategory, SPEError
from polysymplectic_spe.flows.comparison import compare_schemes
from polysymplectic_spe.flows.convergence import StudyConfig, convergence_study, dt_sweep, richardson_levels
from polysymplectic_spe.flows.reference import certified, initial_field, reference_snapshot
from polysymplectic_spe.flows.verification import verify
from polysymplectic_spe.io.config_file import SimConfig, load_config
from polysymplectic_spe.io.writers import write_report, write_snapshot
from polysymplectic_spe.metrics import sigma_error
from polysymplectic_spe.reports import Scheme
from polysymplectic_spe.scheme.marching import simulate
from polysymplectic_spe.solutions.sakovich import SolitonParams, sakovich_profile
from polysymplectic_spe.spectral.solver import simulate_spectral


log = structlog.get_logger()


def configure_logging(verbose: bool = False) -> None:
    """Structured logging to stderr so stdout carries only results."""
    logging.basicConfig(format="%(message)s", stream=sys.stderr, level=logging.DEBUG if verbose else logging.INFO)
    structlog.configure(
        processors=[
            structlog.stdlib.filter_by_level,
            structlog.stdlib.add_logger_name,
            structlog.stdlib.add_log_level,
            structlog.processors.TimeStamper(fmt="iso"),
            structlog.processors.StackInfoRenderer(),
            structlog.processors.format_exc_info,
            structlog.processors.UnicodeDecoder(),
            structlog.dev.ConsoleRenderer(colors=sys.stderr.isatty()),
        ],
        wrapper_class=structlog.stdlib.BoundLogger,
        context_class=dict,
        logger_factory=structlog.stdlib.LoggerFactory(),
        cache_logger_on_first_use=True,
    )


# =============================================================================
# COMMANDS
# =============================================================================


def _study_config(cfg: SimConfig, scheme: Scheme | None = None) -> StudyConfig:
    return StudyConfig(
        scheme=scheme or cfg.scheme,
        params=SolitonParams(cfg.soliton_m),
        t_final=cfg.t_final,
        x_max=cfg.x_max,
        x_center=cfg.x_center,
        initial=cfg.initial,
        boundary_tol=cfg.boundary_tol,
        dealias=cfg.dealias,
    )


def cmd_simulate(cfg: SimConfig, out: Path) -> None:
    """Run the configured scheme, write snapshots and the run report."""
    grid = cfg.grid()
    params = SolitonParams(cfg.soliton_m)
    periodic = cfg.scheme is Scheme.PSEUDOSPECTRAL
    rows = cfg.snapshot_indices(grid)
    u0 = initial_field(cfg.initial, params, grid, periodic=periodic, x_center=cfg.x_center)

    if periodic:
        snaps, report = simulate_spectral(grid, u0, rows, dealias=cfg.dealias)
    else:
        snaps, report = simulate(grid, u0, rows, boundary_tol=cfg.boundary_tol, check_residuals=True)

    for j, snap in zip(rows, snaps):
        ref = reference_snapshot(cfg.initial, params, grid, snap.t, periodic=periodic, x_center=cfg.x_center)
        report.sigma_by_time[snap.t] = sigma_error(snap, ref.snapshot)
        write_snapshot(out / f"snapshot_j{j}.csv", snap, grid)
    report.metadata.update(soliton_m=cfg.soliton_m, initial=cfg.initial.value, seed=cfg.seed)
    write_report(out / "report.txt", report, timing_path=out / "timing.txt")
    print(f"sigma_final={report.sigma_final!r} snapshots={len(snaps)} output={out}")


def cmd_soliton(cfg: SimConfig, out: Path) -> None:
    """Write the certified exact profile at every requested time."""
    params = SolitonParams(cfg.soliton_m)
    cert = certified(params.m)
    if not cert.passed:
        raise CertificationFailed("soliton transcription failed its residual check", order=cert.observed_order)
    grid = cfg.grid()
    for j in cfg.snapshot_indices(grid):
        snap = sakovich_profile(params, grid, j * grid.dt, cfg.x_center, cfg.boundary_tol)
        write_snapshot(out / f"soliton_j{j}.csv", snap, grid)
    print(f"certified order={cert.observed_order:.3f} output={out}")


def cmd_convergence(cfg: SimConfig, out: Path, fixed_dx: bool) -> None:
    """Richardson study from the configured steps, or a sigma-vs-dt sweep per dx."""
    study = _study_config(cfg)
    dx = cfg.x_max / cfg.n_x
    if fixed_dx:
        dt_values = [cfg.dt / 2**k for k in range(cfg.levels)]
        for k, table in enumerate(dt_sweep(study, [dx, dx / 2], dt_values)):
            write_report(out / f"sweep_{k}.csv", table, timing_path=out / f"sweep_{k}_timing.csv")
            print(f"{table.label}: orders={table.orders()}")
        return
    table = convergence_study(study, richardson_levels(dx, cfg.dt, cfg.levels))
    write_report(out / "convergence.csv", table, timing_path=out / "convergence_timing.csv")
    print(f"orders={table.orders()}")


def cmd_compare(cfg: SimConfig, out: Path) -> None:
    """Head-to-head run; the baseline uses spectral_n_x / spectral_dt."""
    n_spec = cfg.spectral_n_x or 1 << (cfg.n_x - 1).bit_length()
    report = compare_schemes(
        _study_config(cfg),
        polysymplectic_steps=(cfg.x_max / cfg.n_x, cfg.dt),
        spectral_steps=(cfg.x_max / n_spec, cfg.spectral_dt or cfg.dt),
    )
    write_report(out / "comparison.csv", report, timing_path=out / "comparison_timing.csv")
    for row in report.rows:
        print(f"{row.scheme.value}: sigma={row.sigma_final!r} wall_seconds={row.wall_seconds:.3f}")
    print(f"precision_ratio={report.precision_ratio()} speed_ratio={report.speed_ratio()}")


def cmd_verify(seed: int, cells: int) -> int:
    report = verify(seed=seed, cells=cells)
    for line in report.lines():
        print(line)
    return ExitCategory.OK.value if report.passed else ExitCategory.NUMERICAL.value


# =============================================================================
# CLI
# =============================================================================


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spe-run",
        description="Polysymplectic integrator for the short pulse equation",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  spe-run simulate --config soliton.cfg
      March the configured soliton and write snapshots plus report

  spe-run convergence --config soliton.cfg --fixed-dx
      sigma against dt for two fixed dx values

  spe-run verify
      Structural self-test battery
""",
    )
    parser.add_argument("--verbose", "-v", action="store_true", help="Enable debug logging")
    sub = parser.add_subparsers(dest="command", required=True, metavar="{simulate,soliton,convergence,compare,verify}")

    for name, text in (
        ("simulate", "Run one simulation"),
        ("soliton", "Write exact soliton profiles"),
        ("convergence", "Convergence study"),
        ("compare", "Compare both schemes"),
    ):
        p = sub.add_parser(name, help=text)
        p.add_argument("--config", "-c", type=Path, required=True, help="key=value configuration file")
        p.add_argument("--output-dir", "-o", type=Path, default=None, help="Override output_dir from the config")
        if name == "convergence":
            p.add_argument("--fixed-dx", action="store_true", help="Sweep dt at two fixed dx values instead")

    p = sub.add_parser("verify", help="Run the structural test battery")
    p.add_argument("--seed", type=int, default=0, help="Seed of the random draws")
    p.add_argument("--cells", type=int, default=10_000, help="Random cells per cell-level check")
    return parser


def dispatch(args: argparse.Namespace) -> int:
    if args.command == "verify":
        return cmd_verify(args.seed, args.cells)

    cfg = load_config(args.config)
    out = args.output_dir or Path(cfg.output_dir)
    log.info("command_started", command=args.command, config=str(args.config), output=str(out))
    if args.command == "simulate":
        cmd_simulate(cfg, out)
    elif args.command == "soliton":
        cmd_soliton(cfg, out)
    elif args.command == "convergence":
        cmd_convergence(cfg, out, args.fixed_dx)
    else:
        cmd_compare(cfg, out)
    return ExitCategory.OK.value


def main(argv: Sequence[str] | None = None) -> int:
    """CLI entry point; returns the process exit code."""
    load_dotenv()
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code) if isinstance(e.code, int) else ExitCategory.USAGE.value
    configure_logging(args.verbose)

    problems = validate_settings()
    if problems:
        for problem in problems:
            print(f"configuration error: {problem}", file=sys.stderr)
        return ExitCategory.CONFIG.value

    try:
        return dispatch(args)
    except SPEError as e:
        log.error("command_failed", command=args.command, error=str(e), category=e.category.name)
        print(f"error: {e}", file=sys.stderr)
        return e.category.value


if __name__ == "__main__":
    sys.exit(main())
