"""
Read-out of a vortex-pair qubit with a Gaussian two-photon Raman pulse.

The atom is an effective two-level system in the rotating frame::

    H(t) = 1/2 [[-detuning, Omega(t)], [Omega(t), +detuning]]
    Omega(t) = peak_rabi * exp(-bandwidth^2 t^2),  -half_duration <= t <= half_duration

An unpaired atom in the core is resonant (detuning 0). A paired atom must
first break its pair, so it sees a detuning of twice the gap. The detection
stage is summarised by the off-resonant to resonant scattering ratio
``(Gamma / 2 delta)^2``.

All frequencies are angular (rad/s); see :mod:`vortexqc.units` for
``2pi*11kHz`` style input.
"""

from __future__ import annotations

import dataclasses
import math
import warnings
from dataclasses import dataclass

import numpy as np

from . import numerics

# quadrature and closed-form pulse areas must agree to this relative level
AREA_CHECK_TOL = 1e-9
# a report below this discrimination ratio is flagged as non-discriminating
MIN_DISCRIMINATION = 100.0
# untruncated reference pulses run until the envelope is exp(-64)
_UNTRUNCATED_CYCLES = 8.0

PULSE_TOL = numerics.Tolerances(abs_tol=1e-10, rel_tol=1e-10, max_iterations=200)

# Hardware context for the 40K scheme; carried into reports, not simulated.
HARDWARE_NOTES = {
    "species": "40K",
    "paired_state": "|i> = 4S1/2 |F=9/2, mF=-7/2>",
    "raman_target_state": "|j> = |F=7/2, mF=-5/2>",
    "cycling_ground_state": "|k> = |F=9/2, mF=9/2>",
    "cycling_excited_state": "|l> = 5P3/2 |F=11/2, mF=11/2>",
    "beam_waist_um": 1.5,
    "min_vortex_spacing_um": 10.0,
    "feshbach_field_gauss": 200.0,
    "transfer_pulses_max_us": 100.0,
}


@dataclass(frozen=True)
class PulseParams:
    bandwidth: float
    peak_rabi: float
    half_duration: float
    detuning: float = 0.0

    def __post_init__(self):
        for name in ("bandwidth", "peak_rabi", "half_duration", "detuning"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite")
        if self.bandwidth <= 0 or self.half_duration <= 0:
            raise ValueError("bandwidth and half_duration must be positive")
        if self.peak_rabi < 0:
            raise ValueError("peak_rabi must be non-negative")
        if self.bandwidth * self.half_duration < 1.0:
            warnings.warn("pulse is cut off inside its Gaussian width "
                          f"(bandwidth*half_duration = {self.bandwidth * self.half_duration:.3g})",
                          stacklevel=3)

    @classmethod
    def from_gap(cls, gap: float, *, bandwidth_ratio: float, peak_rabi_ratio: float,
                 half_duration_ratio: float, detuning: float = 0.0) -> "PulseParams":
        """bandwidth = ratio*gap, peak_rabi = ratio*bandwidth, half_duration = ratio/bandwidth."""
        bw = bandwidth_ratio * gap
        return cls(bw, peak_rabi_ratio * bw, half_duration_ratio / bw, detuning)

    def with_detuning(self, detuning: float) -> "PulseParams":
        return dataclasses.replace(self, detuning=detuning)

    def rabi(self, t):
        return self.peak_rabi * np.exp(-(self.bandwidth * t) ** 2)

    def hamiltonian(self, t: float) -> np.ndarray:
        om = self.peak_rabi * math.exp(-(self.bandwidth * t) ** 2)
        d = self.detuning
        return 0.5 * np.array([[-d, om], [om, d]], dtype=complex)

    def to_dict(self) -> dict:
        return dataclasses.asdict(self)


@dataclass(frozen=True, eq=False)
class PulseResult:
    p_transfer: float
    final_state: np.ndarray
    pulse_area: float
    truncated: bool = True


@dataclass(frozen=True)
class ScatterParams:
    gamma: float
    delta_eff: float

    def __post_init__(self):
        for name in ("gamma", "delta_eff"):
            v = getattr(self, name)
            if not (math.isfinite(v) and v > 0):
                raise ValueError(f"{name} must be positive and finite")

    def to_dict(self) -> dict:
        return dataclasses.asdict(self)


def pulse_area_closed_form(p: PulseParams) -> float:
    return p.peak_rabi * math.sqrt(math.pi) / p.bandwidth * math.erf(p.bandwidth * p.half_duration)


def pulse_area(p: PulseParams) -> float:
    """Integral of the Rabi envelope over the pulse, by quadrature.

    Raises ArithmeticError if the quadrature drifts from the erf closed form.
    """
    area = numerics.integrate(p.rabi, -p.half_duration, p.half_duration,
                              numerics.Tolerances(1e-13, 1e-13, 200))
    exact = pulse_area_closed_form(p)
    if abs(area - exact) > AREA_CHECK_TOL * max(abs(exact), 1e-300):
        raise ArithmeticError(f"pulse area quadrature {area!r} disagrees with closed form {exact!r}")
    return area


def _window(p: PulseParams, truncate: bool) -> float:
    if truncate:
        return p.half_duration
    return max(p.half_duration, _UNTRUNCATED_CYCLES / p.bandwidth)


def simulate_raman_pulse(p: PulseParams, *, truncate: bool = True,
                         tol: numerics.Tolerances = PULSE_TOL) -> PulseResult:
    """Evolve the ground state through the pulse and report the transfer probability.

    ``truncate=False`` runs the Gaussian far into its tails instead of
    cutting it at +-half_duration.
    """
    T = _window(p, truncate)
    psi = numerics.evolve_two_level(p.hamiltonian, np.array([1.0, 0.0], dtype=complex), -T, T, tol)
    area = pulse_area(p) if truncate else p.peak_rabi * math.sqrt(math.pi) / p.bandwidth * math.erf(p.bandwidth * T)
    return PulseResult(float(abs(psi[1]) ** 2), psi, area, truncate)


def pulse_trajectory(p: PulseParams, tol: numerics.Tolerances = PULSE_TOL):
    """(times, states) at every accepted integrator step across the pulse."""
    return numerics.two_level_trajectory(p.hamiltonian, np.array([1.0, 0.0], dtype=complex),
                                         -p.half_duration, p.half_duration, tol)


def scattering_ratio(s: ScatterParams) -> float:
    """Photons scattered by a paired atom relative to an unpaired one, (Gamma / 2 delta)^2."""
    return (s.gamma / (2.0 * s.delta_eff)) ** 2


@dataclass(frozen=True)
class ReadoutReport:
    resonant: PulseParams
    paired: PulseParams
    scatter: ScatterParams
    p_signal: float
    p_false: float
    p_false_untruncated: float
    scatter_ratio: float
    discrimination: float
    pulse_area: float

    @property
    def discriminating(self) -> bool:
        return self.discrimination >= MIN_DISCRIMINATION

    def to_dict(self) -> dict:
        return {
            "inputs": {
                "resonant_pulse": self.resonant.to_dict(),
                "paired_pulse": self.paired.to_dict(),
                "scatter": self.scatter.to_dict(),
            },
            "p_signal": self.p_signal,
            "p_false": self.p_false,
            "p_false_untruncated": self.p_false_untruncated,
            "scatter_ratio": self.scatter_ratio,
            "discrimination": self.discrimination,
            "discriminating": self.discriminating,
            "pulse_area": self.pulse_area,
            "hardware_notes": dict(HARDWARE_NOTES),
        }


def readout_fidelity_report(p_resonant: PulseParams, p_paired: PulseParams,
                            s: ScatterParams) -> ReadoutReport:
    if (p_resonant.bandwidth, p_resonant.peak_rabi, p_resonant.half_duration) != \
            (p_paired.bandwidth, p_paired.peak_rabi, p_paired.half_duration):
        raise ValueError("resonant and paired pulses must differ only in detuning")
    sig = simulate_raman_pulse(p_resonant)
    false = simulate_raman_pulse(p_paired)
    false_full = simulate_raman_pulse(p_paired, truncate=False)
    ratio = scattering_ratio(s)
    return ReadoutReport(
        resonant=p_resonant,
        paired=p_paired,
        scatter=s,
        p_signal=sig.p_transfer,
        p_false=false.p_transfer,
        p_false_untruncated=false_full.p_transfer,
        scatter_ratio=ratio,
        discrimination=sig.p_transfer / max(false.p_transfer, ratio),
        pulse_area=sig.pulse_area,
    )
