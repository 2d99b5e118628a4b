"""
Command-line front end.

    vortexqc zero-mode  --config run.ini [--out DIR]
    vortexqc phase-scan --config run.ini [--mu-range LO:HI:N] [--out DIR]
    vortexqc braid      --config run.ini [--samples N] [--seed K] [--out DIR]
    vortexqc readout    --config run.ini [--out DIR]

Exit codes: 0 success, 1 runtime failure, 2 domain error, 64 usage error,
65 bad input data.
"""

from __future__ import annotations

import argparse
import math
import sys
from pathlib import Path

import numpy as np

from . import bdg, export, readout, register
from .braid import BraidSyntaxError, parse_braid_script, parse_braid_word
from .config import ConfigError, RunConfig, load_config

EXIT_OK = 0
EXIT_RUNTIME = 1
EXIT_DOMAIN = 2
EXIT_USAGE = 64
EXIT_DATAERR = 65

DEFAULT_MU_RANGE = "-2:2:81"
# |mu| below this counts as sitting on the transition
CRITICAL_MU = 1e-12
# a weak-pairing point counts as a found mode if norm and matching hold to this
MODE_TOL = 1e-8


class UsageError(Exception):
    pass


class DataError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _mu_range(text: str) -> tuple[float, float, int]:
    parts = text.split(":")
    if len(parts) != 3:
        raise UsageError(f"--mu-range expects LO:HI:N, got {text!r}")
    try:
        lo, hi, n = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError:
        raise UsageError(f"--mu-range expects LO:HI:N, got {text!r}") from None
    if not (math.isfinite(lo) and math.isfinite(hi)):
        raise UsageError("--mu-range bounds must be finite")
    if n < 1 or lo > hi or (lo == hi and n != 1):
        raise UsageError(f"empty mu range {text!r}")
    return lo, hi, n


def _output_dir(args, cfg: RunConfig) -> Path:
    out = Path(args.out) if args.out else cfg.output_dir
    out.mkdir(parents=True, exist_ok=True)
    return out


def _require(value, what: str):
    if value is None:
        raise UsageError(f"config has no [{what}] section")
    return value


# ---------------------------------------------------------------------------
# subcommands

def cmd_zero_mode(args, cfg: RunConfig) -> int:
    params = _require(cfg.physical, "physical")
    if not params.mu > 0:
        print(f"error: no weak-pairing zero mode for mu = {params.mu:g} <= 0; "
              "use 'phase-scan' to examine the strong-pairing side", file=sys.stderr)
        return EXIT_DOMAIN
    profile = bdg.weak_zero_mode(params, cfg.grid)
    out = _output_dir(args, cfg)
    export.write_profile_csv(out / "profile.csv", profile)
    summary = export.profile_summary(profile)
    export.write_json(out / "profile.json", summary)
    print(f"branch            {profile.branch}")
    print(f"norm              {profile.norm:.12f}")
    print(f"kappa             {profile.kappa:.10g}")
    print(f"decay_rate        {profile.decay_rate:.10g}  (envelope {params.envelope_rate:.10g})")
    print(f"majorana_residual {summary['majorana_residual']:.3e}")
    print(f"wrote {out / 'profile.csv'} and {out / 'profile.json'}")
    return EXIT_OK


def _scan_row(template: bdg.PhysicalParams, mu: float, grid: bdg.RadialGrid) -> dict:
    if abs(mu) < CRITICAL_MU:
        return {"mu": mu, "outcome": "critical", "residual": None}
    params = template.with_mu(mu)
    if mu > 0:
        profile = bdg.weak_zero_mode(params, grid)
        jump = max(bdg.continuity_error(profile))
        ok = abs(profile.norm - 1.0) < MODE_TOL and jump < MODE_TOL
        return {"mu": mu, "outcome": "mode-found" if ok else "no-root",
                "residual": jump, "norm": profile.norm}
    res = bdg.strong_pairing_residual(params)
    return {"mu": mu, "outcome": "no-root" if res != 0 else "mode-found", "residual": res}


def cmd_phase_scan(args, cfg: RunConfig) -> int:
    template = _require(cfg.physical, "physical")
    lo, hi, n = _mu_range(args.mu_range or cfg.mu_range or DEFAULT_MU_RANGE)
    mus = [lo] if n == 1 else np.linspace(lo, hi, n).tolist()
    rows = [_scan_row(template, mu, cfg.grid) for mu in mus]
    negative = [r["residual"] for r in rows if r["mu"] < 0 and r["outcome"] != "critical"]
    counts = {k: sum(r["outcome"] == k for r in rows) for k in ("mode-found", "no-root", "critical")}
    report = {
        "params": template.to_dict(),
        "mu_range": [lo, hi, n],
        "rows": rows,
        "summary": {**counts, "strong_pairing_sign_changes": bdg.count_sign_changes(negative)},
    }
    out = _output_dir(args, cfg)
    export.write_json(out / "phase_scan.json", report)
    for k, v in report["summary"].items():
        print(f"{k:28s}{v}")
    print(f"wrote {out / 'phase_scan.json'}")
    return EXIT_OK


def _braid_word(cfg: RunConfig):
    if cfg.braid_pairs is None:
        raise UsageError("config has no [braid] section")
    try:
        if cfg.braid_script_path is not None:
            path = cfg.braid_script_path
            if not path.is_file():
                raise UsageError(f"braid script not found: {path}")
            return parse_braid_script(path.read_text(encoding="utf-8"))
        return parse_braid_word(cfg.braid_word or "")
    except BraidSyntaxError as exc:
        raise DataError(f"braid script: {exc}") from None


def cmd_braid(args, cfg: RunConfig) -> int:
    word = _braid_word(cfg)
    n = cfg.braid_pairs
    try:
        state = register.apply_braid(register.MajoranaRegister.vacuum(n), word)
    except register.SiteError as exc:
        raise DataError(f"braid script: {exc}") from None
    except ValueError as exc:
        raise DataError(f"[braid] {exc}") from None
    probs = register.measure_occupations(state)
    print(f"word    {word if len(word) else '(identity)'}")
    print("state   probability")
    for bits, p in probs.items():
        print(f"{bits:8s}{p:.12f}")
    print(f"parity  {register.parity(state):+.12f}")
    doc = {"word": str(word), "state": state.to_dict(), "probabilities": probs,
           "parity": register.parity(state)}
    if args.samples:
        seed = args.seed if args.seed is not None else cfg.seed
        hist = register.sample_occupations(state, args.samples, np.random.default_rng(seed))
        print(f"samples {args.samples} (seed {seed})")
        for bits, c in sorted(hist.items()):
            print(f"{bits:8s}{c}")
        doc["samples"] = {"shots": args.samples, "seed": seed, "counts": dict(sorted(hist.items()))}
    out = _output_dir(args, cfg)
    export.write_json(out / "braid_state.json", doc)
    print(f"wrote {out / 'braid_state.json'}")
    return EXIT_OK


def cmd_readout(args, cfg: RunConfig) -> int:
    pulse = _require(cfg.pulse, "pulse")
    scatter = _require(cfg.scatter, "scatter")
    resonant = pulse.with_detuning(0.0)
    paired = pulse.with_detuning(cfg.paired_detuning)
    report = readout.readout_fidelity_report(resonant, paired, scatter)
    out = _output_dir(args, cfg)
    export.write_json(out / "readout_report.json", report.to_dict())
    times, states = readout.pulse_trajectory(resonant)
    export.write_trajectory_csv(out / "rabi_resonant.csv", times, states)
    print(f"pulse_area      {report.pulse_area:.10g}  (pi = {math.pi:.10g})")
    print(f"P_signal        {report.p_signal:.7f}")
    print(f"P_false         {report.p_false:.4e}  (untruncated {report.p_false_untruncated:.4e})")
    print(f"scatter_ratio   {report.scatter_ratio:.2g}")
    print(f"discrimination  {report.discrimination:.4g}"
          + ("" if report.discriminating else "  (not discriminating)"))
    print(f"wrote {out / 'readout_report.json'} and {out / 'rabi_resonant.csv'}")
    return EXIT_OK


COMMANDS = {
    "zero-mode": cmd_zero_mode,
    "phase-scan": cmd_phase_scan,
    "braid": cmd_braid,
    "readout": cmd_readout,
}


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="vortexqc", description="Vortex Majorana qubit toolkit")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    common = _Parser(add_help=False)
    common.add_argument("--config", required=True, metavar="PATH", help="INI run configuration")
    common.add_argument("--out", metavar="DIR", help="output directory (overrides [run] output_dir)")
    common.add_argument("--seed", type=int, metavar="K", help="sampling seed (overrides [run] seed)")
    sub.add_parser("zero-mode", parents=[common], help="weak-pairing zero-mode profile")
    scan = sub.add_parser("phase-scan", parents=[common], help="zero-mode existence across mu")
    scan.add_argument("--mu-range", metavar="LO:HI:N", help=f"mu grid (default {DEFAULT_MU_RANGE})")
    br = sub.add_parser("braid", parents=[common], help="apply a braid word to the vacuum")
    br.add_argument("--samples", type=int, default=0, metavar="N", help="sampled measurement shots")
    sub.add_parser("readout", parents=[common], help="Raman read-out fidelity report")
    return parser


def _join_negative_ranges(argv: list[str]) -> list[str]:
    # argparse would read "--mu-range -2:2:81" as two options
    out, it = [], iter(argv)
    for a in it:
        if a == "--mu-range":
            nxt = next(it, None)
            out.append(a if nxt is None else f"{a}={nxt}")
        else:
            out.append(a)
    return out


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    args = build_parser().parse_args(_join_negative_ranges(argv))
    try:
        if getattr(args, "samples", 0) < 0:
            raise UsageError("--samples must be non-negative")
        try:
            cfg = load_config(args.config)
        except FileNotFoundError as exc:
            raise UsageError(str(exc)) from None
        except ConfigError as exc:
            raise UsageError(f"bad config: {exc}") from None
        return COMMANDS[args.command](args, cfg)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DataError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_DATAERR
    except bdg.PhaseError as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except (ArithmeticError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
