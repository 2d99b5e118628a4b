"""
Run configuration files (INI style).

::

    [run]
    output_dir = out            ; default "vortexqc-out"
    seed = 1234                 ; default 0

    [physical]                  ; zero-mode, phase-scan
    mass = 1
    mu = 1
    delta0 = 0.5
    p_fermi = 1.4142135623730951
    xi = 1
    n_samples = 2000            ; optional radial grid size

    [braid]                     ; braid
    n_pairs = 2
    script = ops.braid          ; path relative to this file, or
    word = s2 s2                ; an inline word (not both)

    [pulse]                     ; readout
    gap = 2pi*11kHz
    bandwidth_ratio = 0.5       ; or bandwidth = <frequency>
    peak_rabi_ratio = 1.77      ; or peak_rabi = <frequency>
    half_duration_ratio = 5     ; or half_duration = <seconds>
    paired_detuning_ratio = 2   ; optional, or paired_detuning = <frequency>

    [scatter]                   ; readout
    gamma = 2pi*1.2MHz
    delta_eff = 2pi*170MHz

    [scan]                      ; phase-scan, optional
    mu_range = -2:2:81          ; LO:HI:N, overridden by --mu-range

Frequencies use the literals of :mod:`vortexqc.units`. The ``*_ratio`` keys
are relative: bandwidth to gap, peak Rabi frequency to bandwidth, half
duration times bandwidth, paired detuning to gap.
"""

from __future__ import annotations

import configparser
from dataclasses import dataclass
from pathlib import Path

from .bdg import PhysicalParams, RadialGrid
from .readout import PulseParams, ScatterParams
from .units import parse_angular_frequency


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    output_dir: Path
    seed: int = 0
    physical: PhysicalParams | None = None
    grid: RadialGrid = RadialGrid()
    pulse: PulseParams | None = None
    paired_detuning: float | None = None
    scatter: ScatterParams | None = None
    braid_pairs: int | None = None
    braid_script_path: Path | None = None
    braid_word: str | None = None
    mu_range: str | None = None
    source: Path | None = None


def _float(section, key):
    raw = section.get(key)
    try:
        return float(raw)
    except (TypeError, ValueError):
        raise ConfigError(f"[{section.name}] {key}: expected a number, got {raw!r}") from None


def _freq(section, key):
    try:
        return parse_angular_frequency(section.get(key))
    except ValueError as exc:
        raise ConfigError(f"[{section.name}] {key}: {exc}") from None


def _one_of(section, absolute, ratio):
    has_abs, has_ratio = absolute in section, ratio in section
    if has_abs == has_ratio:
        raise ConfigError(f"[{section.name}] needs exactly one of {absolute!r} and {ratio!r}")
    return absolute if has_abs else ratio


def _physical(sec) -> tuple[PhysicalParams, RadialGrid]:
    missing = [k for k in ("mass", "mu", "delta0", "p_fermi", "xi") if k not in sec]
    if missing:
        raise ConfigError(f"[physical] missing {', '.join(missing)}")
    try:
        params = PhysicalParams(*(_float(sec, k) for k in ("mass", "mu", "delta0", "p_fermi", "xi")))
    except ValueError as exc:
        raise ConfigError(f"[physical] {exc}") from None
    grid = RadialGrid(n_samples=int(_float(sec, "n_samples"))) if "n_samples" in sec else RadialGrid()
    return params, grid


def _pulse(sec) -> tuple[PulseParams, float]:
    if "gap" not in sec:
        raise ConfigError("[pulse] missing 'gap'")
    gap = _freq(sec, "gap")
    key = _one_of(sec, "bandwidth", "bandwidth_ratio")
    bw = _freq(sec, key) if key == "bandwidth" else _float(sec, key) * gap
    key = _one_of(sec, "peak_rabi", "peak_rabi_ratio")
    rabi = _freq(sec, key) if key == "peak_rabi" else _float(sec, key) * bw
    key = _one_of(sec, "half_duration", "half_duration_ratio")
    tf = _float(sec, key) if key == "half_duration" else _float(sec, key) / bw
    if "paired_detuning" in sec and "paired_detuning_ratio" in sec:
        raise ConfigError("[pulse] give only one of 'paired_detuning' and 'paired_detuning_ratio'")
    if "paired_detuning" in sec:
        paired = _freq(sec, "paired_detuning")
    else:
        paired = (_float(sec, "paired_detuning_ratio") if "paired_detuning_ratio" in sec else 2.0) * gap
    try:
        return PulseParams(bw, rabi, tf, 0.0), paired
    except ValueError as exc:
        raise ConfigError(f"[pulse] {exc}") from None


def load_config(path) -> RunConfig:
    """Parse a run configuration; raises FileNotFoundError or ConfigError."""
    path = Path(path)
    if not path.is_file():
        raise FileNotFoundError(f"config file not found: {path}")
    cp = configparser.ConfigParser(inline_comment_prefixes=(";", "#"))
    try:
        cp.read(path, encoding="utf-8")
    except configparser.Error as exc:
        raise ConfigError(str(exc)) from None
    base = path.parent
    kw: dict = {"source": path}

    run = cp["run"] if cp.has_section("run") else {}
    out = run.get("output_dir", "vortexqc-out") if run else "vortexqc-out"
    kw["output_dir"] = (base / out) if not Path(out).is_absolute() else Path(out)
    if run and "seed" in run:
        try:
            kw["seed"] = int(run["seed"])
        except ValueError:
            raise ConfigError(f"[run] seed must be an integer, got {run['seed']!r}") from None

    if cp.has_section("physical"):
        kw["physical"], kw["grid"] = _physical(cp["physical"])
    if cp.has_section("pulse"):
        kw["pulse"], kw["paired_detuning"] = _pulse(cp["pulse"])
    if cp.has_section("scatter"):
        sec = cp["scatter"]
        for k in ("gamma", "delta_eff"):
            if k not in sec:
                raise ConfigError(f"[scatter] missing {k!r}")
        try:
            kw["scatter"] = ScatterParams(_freq(sec, "gamma"), _freq(sec, "delta_eff"))
        except ValueError as exc:
            raise ConfigError(f"[scatter] {exc}") from None
    if cp.has_section("braid"):
        sec = cp["braid"]
        if "n_pairs" not in sec:
            raise ConfigError("[braid] missing 'n_pairs'")
        kw["braid_pairs"] = int(_float(sec, "n_pairs"))
        if "script" in sec and "word" in sec:
            raise ConfigError("[braid] give either 'script' or 'word', not both")
        if "script" in sec:
            kw["braid_script_path"] = base / sec["script"]
        elif "word" in sec:
            kw["braid_word"] = sec["word"]
    if cp.has_section("scan") and "mu_range" in cp["scan"]:
        kw["mu_range"] = cp["scan"]["mu_range"]
    return RunConfig(**kw)
