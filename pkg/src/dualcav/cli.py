"""``dualcav`` command line: mode tables, field frames and verification reports.

Usage::

    dualcav <modes|simulate|verify|report|validate> [--config PATH] [--set key=value ...] [--out DIR]

``verify`` exits 0 exactly when every assertable check passes; measurement
only checks never change the exit status.  Configuration problems exit 2.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .checks import CHECKS, run_checks
from .classical import combine_complex, fields_sol1, fields_sol2
from .config import ConfigError, load_config, validate_config
from .local import GeneralFieldSpec, energy_density_W, general_fields
from .report import dump_reports, format_table, load_reports, write_summary
from .serialize import write_density, write_frame

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class OutputError(RuntimeError):
    pass


def _out_dir(args, cfg) -> Path:
    out = Path(args.out or cfg.section("output")["directory"])
    try:
        out.mkdir(parents=True, exist_ok=True)
        probe = out / ".write-test"
        probe.write_text("")
        probe.unlink()
    except OSError as exc:
        raise OutputError(f"output directory {out} is not writable: {exc.strerror or exc}") from exc
    return out


def cmd_modes(cfg, args) -> int:
    cav = cfg.cavity
    print(f"# units={cav.unit_system.value} L={cav.L!r} V={cav.V!r} c={cav.c!r} T={cav.T!r}")
    print(f"{'alpha':>5}  {'k':>14}  {'omega':>14}  {'m':>8}  {'A':>14}  {'A_space':>14}")
    for m in cfg.modes(cav):
        print(f"{m.alpha:>5}  {m.k:>14.8g}  {m.omega:>14.8g}  {m.m:>8.4g}  "
              f"{m.A:>14.8g}  {m.A_space:>14.8g}")
    return EXIT_OK


def cmd_simulate(cfg, args) -> int:
    out = _out_dir(args, cfg)
    cav = cfg.cavity
    grid = cfg.section("grid")
    modes = cfg.modes(cav)
    amps = cfg.amplitudes(modes)
    spec = GeneralFieldSpec(modes, amps, cfg.profiles(modes))
    z = np.linspace(0.0, cav.L, grid["n_z"])
    t0, t1 = cfg.t_span(cav)
    formats = cfg.section("output")["formats"]
    frames_dir = out / "frames"
    frames_dir.mkdir(exist_ok=True)
    density_rows = []
    count = 0
    for j, t in enumerate(np.linspace(t0, t1, grid["n_t"])):
        f1 = fields_sol1(modes, amps, z, t, cav, allow_complex=True)
        f2 = fields_sol2(modes, amps, z, t, cav, allow_complex=True)
        frames = {
            "sol1": fields_sol1(modes, amps, z, t, cav),
            "sol2": fields_sol2(modes, amps, z, t, cav),
            "combined": combine_complex(f1, f2),
            "general": general_fields(spec, z, t, cav),
        }
        if "columns" in formats:
            for kind, frame in frames.items():
                write_frame(frames_dir / f"{kind}_{j:04d}.txt", frame)
                count += 1
        density_rows.append((float(t), energy_density_W(frames["general"], cav)))
    if "columns" in formats:
        write_density(out / "density.txt", density_rows)
    print(f"wrote {count} frames to {frames_dir}")
    return EXIT_OK


def _exit_for(reports) -> int:
    return EXIT_OK if all(r.passed is not False for r in reports) else EXIT_FAIL


def cmd_verify(cfg, args) -> int:
    names = args.checks
    if names == ["all"]:
        names = list(CHECKS)
    unknown = [n for n in names if n not in CHECKS]
    if unknown:
        print(f"error: unknown check(s): {', '.join(unknown)}; known: {', '.join(CHECKS)}",
              file=sys.stderr)
        return EXIT_USAGE
    out = _out_dir(args, cfg)
    reports = run_checks(cfg, names or None)
    formats = cfg.section("output")["formats"]
    if "json" in formats:
        rep_dir = out / "reports"
        rep_dir.mkdir(exist_ok=True)
        for r in reports:
            (rep_dir / f"{r.name}.json").write_text(r.to_text())
        (out / "reports.json").write_text(dump_reports(reports))
    if "csv" in formats:
        with open(out / "summary.csv", "w", encoding="ascii", newline="") as fh:
            write_summary(reports, fh)
    print(format_table(reports), end="")
    return _exit_for(reports)


def cmd_report(cfg, args) -> int:
    out = Path(args.out or cfg.section("output")["directory"])
    reports = []
    combined = out / "reports.json"
    if combined.exists():
        reports = load_reports(combined.read_text())
    else:
        for path in sorted((out / "reports").glob("*.json")):
            reports.extend(load_reports(path.read_text()))
    if not reports:
        print(f"error: no reports found under {out}; run `dualcav verify` first", file=sys.stderr)
        return EXIT_USAGE
    lines = [f"# dualcav verification report (version {__version__})", "",
             "```", format_table(reports).rstrip(), "```", ""]
    for r in reports:
        result = "not-applicable" if r.passed is None else ("PASS" if r.passed else "FAIL")
        lines += [f"## {r.name}: {result}", ""]
        if r.scheme:
            lines += [f"scheme: {r.scheme}", ""]
        lines += [f"inputs: `{json.dumps(r.to_dict()['inputs'], sort_keys=True)}`", ""]
        for key in sorted(r.residuals):
            mark = f" (checked, limit {r.limit(key):.1e})" if key in r.checked else ""
            lines.append(f"- {key} = {r.residuals[key]!r}{mark}")
        lines.append("")
        lines += [f"> {n}" for n in r.notes]
        if r.notes:
            lines.append("")
    (out / "report.md").write_text("\n".join(lines))
    print(format_table(reports), end="")
    print(f"wrote {out / 'report.md'}")
    return _exit_for(reports)


def cmd_validate(args) -> int:
    issues = validate_config(args.config, args.set)
    if issues:
        for issue in issues:
            print(f"error: {issue}", file=sys.stderr)
        return EXIT_FAIL
    print("ok")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dualcav", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="YAML scenario file (defaults apply when omitted)")
    common.add_argument("--set", action="append", default=[], metavar="KEY=VALUE",
                        help="override a config key, e.g. grid.n_z=129 (repeatable)")
    common.add_argument("--out", help="output directory (default: output.directory)")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("modes", parents=[common], help="print the mode bank")
    sub.add_parser("simulate", parents=[common], help="write field frames and the energy density")
    verify = sub.add_parser("verify", parents=[common], help="run named checks")
    verify.add_argument("checks", nargs="*", metavar="CHECK",
                        help=f"check names or 'all' (known: {', '.join(CHECKS)})")
    sub.add_parser("report", parents=[common], help="aggregate reports from a verify run")
    sub.add_parser("validate", parents=[common], help="check a config file")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "validate":
        return cmd_validate(args)
    try:
        cfg = load_config(args.config, args.set)
        handler = {"modes": cmd_modes, "simulate": cmd_simulate, "verify": cmd_verify,
                   "report": cmd_report}[args.command]
        return handler(cfg, args)
    except ConfigError as exc:
        for issue in exc.issues:
            print(f"error: {issue}", file=sys.stderr)
        return EXIT_USAGE
    except OutputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
