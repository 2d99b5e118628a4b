"""
Angular-frequency literals.

Accepted forms::

    1.5e4            plain number, already in rad/s
    3.2rad/s         explicit angular units
    2pi*11kHz        2 pi times a cyclic frequency (Hz, kHz, MHz, GHz)
    2*pi*1.2 MHz     same, with optional '*' and spaces

A cyclic unit without the ``2pi*`` prefix is rejected, so a frequency in Hz
is never silently read as rad/s.
"""

from __future__ import annotations

import math
import re

_UNITS = {"hz": 1.0, "khz": 1e3, "mhz": 1e6, "ghz": 1e9}
_NUMBER = r"[+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?"
_PATTERN = re.compile(
    rf"^\s*(?P<twopi>2\s*\*?\s*pi\s*\*\s*)?(?P<num>{_NUMBER})\s*(?P<unit>[a-zA-Z/]+)?\s*$")


class UnitError(ValueError):
    pass


def angular(value: float, unit: str = "Hz") -> float:
    """2 pi * value * unit, e.g. ``angular(11, 'kHz')`` for 2 pi x 11 kHz."""
    try:
        scale = _UNITS[unit.lower()]
    except KeyError:
        raise UnitError(f"unknown frequency unit {unit!r}") from None
    return 2.0 * math.pi * value * scale


def parse_angular_frequency(text: str) -> float:
    m = _PATTERN.match(text)
    if not m:
        raise UnitError(f"cannot parse frequency {text!r}")
    num = float(m["num"])
    unit = m["unit"]
    if m["twopi"]:
        if unit is None:
            return 2.0 * math.pi * num
        return angular(num, unit)
    if unit is None or unit.lower() == "rad/s":
        return num
    if unit.lower() in _UNITS:
        raise UnitError(f"{text!r}: write cyclic frequencies as '2pi*{m['num']}{unit}'")
    raise UnitError(f"unknown unit {unit!r} in {text!r}")
