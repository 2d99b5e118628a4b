"""File formats: deterministic JSON documents and columnar CSV."""

from __future__ import annotations

import csv
import json
import math
from pathlib import Path

import numpy as np

from .bdg import PhysicalParams, ZeroModeProfile, majorana_condition_residual
from .readout import PulseParams, ReadoutReport, ScatterParams
from .register import MajoranaRegister

PROFILE_CSV_HEADER = ["rho", "re_u", "im_u", "re_v", "im_v"]
TRAJECTORY_CSV_HEADER = ["t", "re_c0", "im_c0", "re_c1", "im_c1"]


def _fmt_float(x: float) -> str:
    if math.isnan(x):
        return "NaN"
    if math.isinf(x):
        return "Infinity" if x > 0 else "-Infinity"
    text = format(x, ".17g")
    # keep floats recognisable as floats when read back
    return text if any(ch in text for ch in ".en") else text + ".0"


def _encode(obj, indent: int, level: int) -> str:
    pad = " " * (indent * (level + 1))
    end = " " * (indent * level)
    if isinstance(obj, bool) or obj is None:
        return json.dumps(obj)
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return _fmt_float(float(obj))
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, complex):
        return _encode([obj.real, obj.imag], indent, level)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {_encode(v, indent, level + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple, np.ndarray)):
        seq = list(obj)
        if not seq:
            return "[]"
        if all(isinstance(v, (int, float, np.number)) and not isinstance(v, bool) for v in seq):
            return "[" + ", ".join(_encode(v, indent, level + 1) for v in seq) + "]"
        return "[\n" + ",\n".join(pad + _encode(v, indent, level + 1) for v in seq) + "\n" + end + "]"
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def dumps(obj, indent: int = 2) -> str:
    """JSON with every float written to 17 significant digits (byte-stable output)."""
    return _encode(obj, indent, 0) + "\n"


def write_json(path, obj) -> Path:
    path = Path(path)
    path.write_text(dumps(obj), encoding="utf-8")
    return path


def read_json(path):
    return json.loads(Path(path).read_text(encoding="utf-8"))


# ---------------------------------------------------------------------------
# zero-mode profile

def write_profile_csv(path, profile: ZeroModeProfile) -> Path:
    path = Path(path)
    with path.open("w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(PROFILE_CSV_HEADER)
        for r, u, v in zip(profile.rho.tolist(), profile.u.tolist(), profile.v.tolist()):
            w.writerow([_fmt_float(r), _fmt_float(u.real), _fmt_float(u.imag),
                        _fmt_float(v.real), _fmt_float(v.imag)])
    return path


def read_profile_csv(path):
    """Returns (rho, u, v) arrays."""
    with Path(path).open(newline="", encoding="utf-8") as fh:
        rows = list(csv.reader(fh))
    if not rows or rows[0] != PROFILE_CSV_HEADER:
        raise ValueError(f"{path}: not a profile CSV")
    data = np.array(rows[1:], dtype=float).reshape(-1, 5)
    return data[:, 0], data[:, 1] + 1j * data[:, 2], data[:, 3] + 1j * data[:, 4]


def profile_summary(profile: ZeroModeProfile) -> dict:
    return {
        "params": profile.params.to_dict(),
        "constants": {"A": profile.A, "B": profile.B, "C": profile.C},
        "branch": profile.branch,
        "kappa": profile.kappa,
        "norm": profile.norm,
        "decay_rate": profile.decay_rate,
        "envelope_rate": profile.params.envelope_rate,
        "majorana_residual": majorana_condition_residual(profile),
        "n_samples": len(profile.rho),
    }


def load_profile_summary(path) -> dict:
    """Inverse of :func:`profile_summary`: params as PhysicalParams, constants as complex."""
    data = read_json(path)
    data["params"] = PhysicalParams(**data["params"])
    data["constants"] = {k: complex(*v) for k, v in data["constants"].items()}
    return data


# ---------------------------------------------------------------------------
# register and read-out

def write_register(path, state: MajoranaRegister) -> Path:
    return write_json(path, state.to_dict())


def load_register(path) -> MajoranaRegister:
    return MajoranaRegister.from_dict(read_json(path))


def load_readout_report(path) -> ReadoutReport:
    data = read_json(path)
    inputs = data["inputs"]
    return ReadoutReport(
        resonant=PulseParams(**inputs["resonant_pulse"]),
        paired=PulseParams(**inputs["paired_pulse"]),
        scatter=ScatterParams(**inputs["scatter"]),
        p_signal=data["p_signal"],
        p_false=data["p_false"],
        p_false_untruncated=data["p_false_untruncated"],
        scatter_ratio=data["scatter_ratio"],
        discrimination=data["discrimination"],
        pulse_area=data["pulse_area"],
    )


def write_trajectory_csv(path, times, states) -> Path:
    path = Path(path)
    with path.open("w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(TRAJECTORY_CSV_HEADER)
        for t, (c0, c1) in zip(times, states):
            w.writerow([_fmt_float(float(t)), _fmt_float(c0.real), _fmt_float(c0.imag),
                        _fmt_float(c1.real), _fmt_float(c1.imag)])
    return path
