"""
Zero-energy Bogoliubov-de Gennes bound state of an N=1 vortex in a spinless
p_x + i p_y superfluid.

The gap vanishes inside a disc of radius ``xi`` (the core) and is uniform
outside. For zero angular momentum both spinor components reduce to one real
radial profile ``chi`` carried on the fixed spinor ``exp(i pi/4) (1, -i)``:

* inside,  chi = A J0(q rho),                   q = sqrt(2 m mu)
* outside, chi = [B f1(rho) + C f2(rho)] exp(-lam rho),   lam = delta0 / v_F

where ``(f1, f2)`` is ``(J0, Y0)(kappa rho)`` when ``kappa^2 = 2 m mu - lam^2 > 0``,
``(I0, K0)(kappa~ rho)`` when it is negative, and ``(1, ln(rho/xi))`` on the
boundary. Value and slope continuity at ``xi`` fix B and C for A = 1, then the
profile is scaled to unit norm ``2 pi int rho (|u|^2 + |v|^2) = 1``.

For mu < 0 each region admits a single decaying solution, I0 inside and
K0 times the same exp(-lam rho) envelope outside. Matching then reduces to
comparing logarithmic derivatives at ``xi``, which never agree.

Units: hbar = 1; any consistent set of mass / energy / length units.
"""

from __future__ import annotations

import cmath
import dataclasses
import math
from dataclasses import dataclass, field

import numpy as np

from . import numerics, specfun

SPINOR_PHASE = cmath.exp(0.25j * math.pi)

OSCILLATORY = "oscillatory"
EVANESCENT = "evanescent"
CRITICAL = "critical"

# |kappa| * xi below this is treated as the kappa = 0 boundary
_CRITICAL_ARG = 1e-8


class PhaseError(ValueError):
    """Operation called in the wrong pairing phase (sign of mu)."""


@dataclass(frozen=True)
class PhysicalParams:
    mass: float
    mu: float
    delta0: float
    p_fermi: float
    xi: float

    def __post_init__(self):
        for name in ("mass", "mu", "delta0", "p_fermi", "xi"):
            v = getattr(self, name)
            if not math.isfinite(v):
                raise ValueError(f"{name} must be finite")
        for name in ("mass", "delta0", "p_fermi", "xi"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")

    @property
    def v_fermi(self) -> float:
        return self.p_fermi / self.mass

    @property
    def fermi_energy(self) -> float:
        return self.p_fermi ** 2 / (2.0 * self.mass)

    @property
    def envelope_rate(self) -> float:
        """Decay rate delta0 / v_F of the exterior envelope."""
        return self.delta0 / self.v_fermi

    @property
    def kappa_squared(self) -> float:
        return 2.0 * self.mass * self.mu - self.envelope_rate ** 2

    def with_mu(self, mu: float) -> "PhysicalParams":
        return dataclasses.replace(self, mu=mu)

    def to_dict(self) -> dict:
        return dataclasses.asdict(self)


@dataclass(frozen=True)
class RadialGrid:
    """Log-spaced samples over [rho_min_factor*xi, rho_max_factor*max(xi, v_F/delta0)]."""

    n_samples: int = 2000
    rho_min_factor: float = 1e-4
    rho_max_factor: float = 40.0

    def points(self, params: PhysicalParams) -> np.ndarray:
        if self.n_samples < 2:
            raise ValueError("grid needs at least two samples")
        lo = self.rho_min_factor * params.xi
        hi = self.rho_max_factor * max(params.xi, 1.0 / params.envelope_rate)
        return np.geomspace(lo, hi, self.n_samples)


@dataclass(frozen=True, eq=False)
class ZeroModeProfile:
    params: PhysicalParams
    A: complex
    B: complex
    C: complex
    branch: str
    kappa: float
    rho: np.ndarray
    u: np.ndarray
    v: np.ndarray
    norm: float
    decay_rate: float
    fit_window: tuple[float, float] = field(default=(10.0, 30.0))

    # scalar profile -----------------------------------------------------

    def _basis(self, rho):
        """Exterior basis (f1, f2, f1', f2') with exp(-lam*rho) folded in."""
        rho = np.asarray(rho, dtype=float)
        lam = self.params.envelope_rate
        k = self.kappa
        if self.branch == OSCILLATORY:
            j0, j1, y0, y1 = specfun.jy01(k * rho)
            env = np.exp(-lam * rho)
            f1, f2 = j0 * env, y0 * env
            d1, d2 = -k * j1 * env, -k * y1 * env
        elif self.branch == EVANESCENT:
            z = k * rho
            i0s, i1s, k0s, k1s = specfun.ik01_scaled(z)
            grow = np.exp((k - lam) * rho)
            with np.errstate(under="ignore"):
                fall = np.exp(-(k + lam) * rho)
            f1, f2 = i0s * grow, k0s * fall
            d1, d2 = k * i1s * grow, -k * k1s * fall
        else:
            env = np.exp(-lam * rho)
            f1, f2 = env, np.log(rho / self.params.xi) * env
            d1, d2 = 0.0 * env, env / rho
        return f1, f2, d1 - lam * f1, d2 - lam * f2

    def interior_chi(self, rho):
        q = math.sqrt(2.0 * self.params.mass * self.params.mu)
        return self.A.real * specfun.j0(q * np.asarray(rho, dtype=float))

    def interior_dchi(self, rho):
        q = math.sqrt(2.0 * self.params.mass * self.params.mu)
        return -self.A.real * q * specfun.j1(q * np.asarray(rho, dtype=float))

    def exterior_chi(self, rho):
        f1, f2, _, _ = self._basis(rho)
        return self.B.real * f1 + self.C.real * f2

    def exterior_dchi(self, rho):
        _, _, d1, d2 = self._basis(rho)
        return self.B.real * d1 + self.C.real * d2

    def chi(self, rho):
        """Real radial profile; u = e^{i pi/4} chi and v = e^{-i pi/4} chi."""
        rho = np.asarray(rho, dtype=float)
        if rho.ndim == 0:
            r = float(rho)
            return float(self.interior_chi(r) if r < self.params.xi else self.exterior_chi(r))
        out = np.empty_like(rho)
        inside = rho < self.params.xi
        if inside.any():
            out[inside] = self.interior_chi(rho[inside])
        if (~inside).any():
            out[~inside] = self.exterior_chi(rho[~inside])
        return out

    def u_at(self, rho):
        return SPINOR_PHASE * self.chi(rho)

    def v_at(self, rho):
        return SPINOR_PHASE.conjugate() * self.chi(rho)

    def samples(self):
        return list(zip(self.rho.tolist(), self.u.tolist(), self.v.tolist()))

    def _slowest_rate(self) -> float:
        lam = self.params.envelope_rate
        return lam - self.kappa if self.branch == EVANESCENT else lam


def _exterior_basis_at(params: PhysicalParams, branch: str, kappa: float, rho: float):
    probe = ZeroModeProfile(params, 1, 0, 0, branch, kappa, np.empty(0), np.empty(0),
                            np.empty(0), math.nan, math.nan)
    return [float(np.asarray(v)) for v in probe._basis(rho)]


def _branch(params: PhysicalParams) -> tuple[str, float]:
    k2 = params.kappa_squared
    k = math.sqrt(abs(k2))
    if k * params.xi < _CRITICAL_ARG:
        return CRITICAL, 0.0
    return (OSCILLATORY, k) if k2 > 0 else (EVANESCENT, k)


def _norm_integral(profile: ZeroModeProfile, tol: numerics.Tolerances) -> float:
    # relative accuracy only, so the result does not depend on the profile's scale
    tol = dataclasses.replace(tol, abs_tol=1e-300)
    xi = profile.params.xi
    inner = numerics.integrate(lambda r: r * profile.interior_chi(r) ** 2, 0.0, xi, tol)
    outer = numerics.integrate(lambda r: r * profile.exterior_chi(r) ** 2, xi, math.inf, tol,
                               scale=1.0 / profile._slowest_rate())
    # |u|^2 + |v|^2 = 2 chi^2, angular integral 2 pi
    return 4.0 * math.pi * (inner + outer)


def fit_decay_rate(profile: ZeroModeProfile, window: tuple[float, float] = (10.0, 30.0),
                   n_points: int = 4000) -> float:
    """Fitted exponential decay rate of |u| over ``window`` (in units of xi).

    The 1/sqrt(rho) Bessel envelope is divided out first. When the profile
    oscillates, the local maxima (refined by a parabola through the three
    neighbouring log values) are fitted; otherwise all points are.
    """
    xi = profile.params.xi
    rho = np.linspace(window[0] * xi, window[1] * xi, n_points)
    g = np.sqrt(rho) * np.abs(profile.chi(rho))
    with np.errstate(divide="ignore"):
        lg = np.log(g)
    inner = lg[1:-1]
    is_peak = (inner > lg[:-2]) & (inner >= lg[2:]) & np.isfinite(inner)
    idx = np.nonzero(is_peak)[0] + 1
    if len(idx) >= 3:
        h = rho[1] - rho[0]
        ym, y0, yp = lg[idx - 1], lg[idx], lg[idx + 1]
        curv = ym - 2.0 * y0 + yp
        shift = np.where(curv != 0, 0.5 * (ym - yp) / np.where(curv != 0, curv, 1.0), 0.0)
        xs = rho[idx] + shift * h
        ys = y0 - 0.25 * (ym - yp) * shift
    else:
        ok = np.isfinite(lg)
        xs, ys = rho[ok], lg[ok]
    if len(xs) < 2:
        return math.nan
    slope = np.polyfit(xs, ys, 1)[0]
    return float(-slope)


def weak_zero_mode(params: PhysicalParams, grid: RadialGrid | None = None, *,
                   amplitude: complex = 1.0,
                   tol: numerics.Tolerances = numerics.DEFAULT_TOL,
                   fit_window: tuple[float, float] = (10.0, 30.0)) -> ZeroModeProfile:
    """Matched, normalised Majorana zero mode for mu > 0.

    ``amplitude`` is the interior constant before normalisation; the result
    does not depend on it (the final A is made real and positive).

    Raises :class:`PhaseError` for mu <= 0 and
    :class:`numerics.SingularSystemError` if the matching system degenerates.
    """
    if not params.mu > 0:
        raise PhaseError(f"weak-pairing zero mode needs mu > 0 (got {params.mu}); "
                         "use strong_pairing_residual for mu < 0")
    grid = grid or RadialGrid()
    xi = params.xi
    q = math.sqrt(2.0 * params.mass * params.mu)
    branch, kappa = _branch(params)

    a = complex(amplitude)
    if a == 0:
        raise ValueError("amplitude must be non-zero")
    f1, f2, d1, d2 = _exterior_basis_at(params, branch, kappa, xi)
    val_in = a * specfun.j0(q * xi)
    der_in = -a * q * specfun.j1(q * xi)
    b, c = numerics.solve_2x2([[f1, f2], [d1, d2]], [val_in, der_in])

    # canonical phase and unit size: A real positive (the spinor already carries e^{i pi/4})
    a, b, c = a / a, b / a, c / a
    trial = ZeroModeProfile(params, a, b, c, branch, kappa, np.empty(0), np.empty(0),
                            np.empty(0), math.nan, math.nan, fit_window)
    scale = 1.0 / math.sqrt(_norm_integral(trial, tol))
    a, b, c = a * scale, b * scale, c * scale
    a, b, c = complex(a.real, 0.0), complex(b.real, 0.0), complex(c.real, 0.0)

    rho = grid.points(params)
    shaped = dataclasses.replace(trial, A=a, B=b, C=c, rho=rho)
    chi = shaped.chi(rho)
    u = SPINOR_PHASE * chi
    v = SPINOR_PHASE.conjugate() * chi
    shaped = dataclasses.replace(shaped, u=u, v=v)
    norm = _norm_integral(shaped, tol)
    return dataclasses.replace(shaped, norm=norm,
                               decay_rate=fit_decay_rate(shaped, fit_window))


def majorana_condition_residual(profile: ZeroModeProfile) -> float:
    """max |v(rho) - conj(u(rho))| over the sampled grid."""
    if len(profile.rho) == 0:
        raise ValueError("profile has no samples")
    return float(np.max(np.abs(np.asarray(profile.v) - np.conj(profile.u))))


def continuity_error(profile: ZeroModeProfile) -> tuple[float, float]:
    """Jumps of chi and d chi/d rho across the core edge."""
    xi = profile.params.xi
    dv = abs(float(profile.interior_chi(xi)) - float(profile.exterior_chi(xi)))
    dd = abs(float(profile.interior_dchi(xi)) - float(profile.exterior_dchi(xi)))
    return dv, dd


# ---------------------------------------------------------------------------
# strong pairing

def strong_pairing_residual(params: PhysicalParams, *, exterior_envelope: bool = True) -> float:
    """Log-derivative mismatch at xi between I0 inside and K0 (times envelope) outside.

    ``exterior_envelope=False`` drops the exp(-delta0 rho / v_F) factor on the
    exterior solution. Neither variant can vanish: the interior log-derivative
    is >= 0 and the exterior one is < 0.
    """
    if not params.mu < 0:
        raise PhaseError(f"strong-pairing residual needs mu < 0 (got {params.mu})")
    m, xi = params.mass, params.xi
    lam = params.envelope_rate
    p = math.sqrt(2.0 * m * abs(params.mu))
    kp = kappa_prime(params)
    i0s, i1s, _, _ = specfun.ik01_scaled(max(p * xi, specfun.MIN_SINGULAR_ARG))
    _, _, k0s, k1s = specfun.ik01_scaled(kp * xi)
    inside = p * i1s / i0s
    outside = -kp * k1s / k0s
    if exterior_envelope:
        outside -= lam
    return float(inside - outside)


def kappa_prime(params: PhysicalParams) -> float:
    return math.sqrt(2.0 * params.mass * abs(params.mu) + params.envelope_rate ** 2)


@dataclass(frozen=True)
class MismatchReport:
    scan_points: tuple[tuple[float, float], ...]
    sign_changes: int
    kappa_prime: tuple[float, ...]

    @property
    def residuals(self) -> np.ndarray:
        return np.array([r for _, r in self.scan_points])

    @property
    def min_abs_residual(self) -> float:
        return float(np.min(np.abs(self.residuals)))

    def __len__(self):
        return len(self.scan_points)


def count_sign_changes(values) -> int:
    signs = [math.copysign(1.0, v) for v in values if v != 0 and not math.isnan(v)]
    return sum(1 for s0, s1 in zip(signs, signs[1:]) if s0 != s1)


def scan_strong_pairing(params_template: PhysicalParams, mu_range: tuple[float, float],
                        n_points: int = 500, *, exterior_envelope: bool = True) -> MismatchReport:
    """Evaluate the strong-pairing mismatch over an evenly spaced mu grid.

    A degenerate range ``(mu, mu)`` gives a single-point report.
    """
    lo, hi = float(mu_range[0]), float(mu_range[1])
    if lo > hi:
        raise ValueError(f"empty mu range ({lo}, {hi})")
    if hi >= 0:
        raise PhaseError("strong-pairing scan range must lie strictly below mu = 0")
    if n_points < 1:
        raise ValueError("n_points must be >= 1")
    mus = [lo] if lo == hi else np.linspace(lo, hi, n_points).tolist()
    points, kps = [], []
    for mu in mus:
        p = params_template.with_mu(mu)
        points.append((mu, strong_pairing_residual(p, exterior_envelope=exterior_envelope)))
        kps.append(kappa_prime(p))
    return MismatchReport(tuple(points), count_sign_changes([r for _, r in points]), tuple(kps))


def minigap_estimate(params: PhysicalParams) -> float:
    """Order-of-magnitude minigap delta0^2 / E_F protecting the zero mode."""
    return params.delta0 ** 2 / params.fermi_energy
