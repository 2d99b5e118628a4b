"""Quadrature, bracketed root finding, 2x2 linear solves and a two-level ODE stepper."""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from typing import Callable, Iterator

import numpy as np


class ConvergenceError(ArithmeticError):
    pass


class StepUnderflowError(ConvergenceError):
    pass


class BracketError(ValueError):
    pass


class NonHermitianError(ValueError):
    pass


class SingularSystemError(ArithmeticError):
    pass


@dataclass(frozen=True)
class Tolerances:
    abs_tol: float = 1e-10
    rel_tol: float = 1e-10
    max_iterations: int = 200

    def __post_init__(self):
        if not (self.abs_tol > 0 and self.rel_tol > 0):
            raise ValueError("tolerances must be positive")
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be >= 1")


DEFAULT_TOL = Tolerances()


# ---------------------------------------------------------------------------
# quadrature

_GL_X, _GL_W = np.polynomial.legendre.leggauss(10)
# nodes for one panel and its two halves, evaluated in a single call
_PANEL_X = np.concatenate([_GL_X, 0.5 * (_GL_X - 1.0), 0.5 * (_GL_X + 1.0)])


def _panel(f, lo: float, hi: float) -> tuple[float, float]:
    """10-point rule on [lo, hi] and on both halves; returns (halves, |halves - whole|)."""
    half = 0.5 * (hi - lo)
    vals = f(0.5 * (hi + lo) + half * _PANEL_X)
    whole = half * float(np.dot(_GL_W, vals[:10]))
    halves = 0.5 * half * float(np.dot(_GL_W, vals[10:20]) + np.dot(_GL_W, vals[20:]))
    return halves, abs(halves - whole)


def _checked(f, vectorized: bool):
    def g(x):
        if vectorized:
            y = np.broadcast_to(np.asarray(f(x), dtype=float), x.shape)
        else:
            y = np.array([f(float(xi)) for xi in x], dtype=float)
        if np.isnan(y).any():
            raise ConvergenceError("integrand returned NaN")
        return y
    return g


def integrate(f: Callable, a: float, b: float, tol: Tolerances = DEFAULT_TOL,
              *, vectorized: bool = True, scale: float = 1.0) -> float:
    """Globally adaptive Gauss-Legendre quadrature of ``f`` over ``[a, b]``.

    Each panel's error is the disagreement between a 10-point rule on the
    panel and the same rule on its two halves; the panel with the largest
    disagreement is bisected until the total falls under
    ``abs_tol + rel_tol*|Q|``. ``b`` may be ``math.inf``; the tail is then
    mapped onto ``[0, 1)`` with ``x = a + scale*s/(1-s)``, which assumes ``f``
    decays at least exponentially. ``scale`` should be of the order of the
    decay length.

    With ``vectorized=True`` (default) ``f`` is called on numpy arrays.
    """
    if math.isnan(a) or math.isnan(b):
        raise ValueError("integration limits must not be NaN")
    if b == a:
        return 0.0
    if b < a:
        return -integrate(f, b, a, tol, vectorized=vectorized, scale=scale)
    if math.isinf(a):
        raise ValueError("only finite intervals and [a, inf) are supported")
    g = _checked(f, vectorized)
    if math.isinf(b):

        def h(s):
            one_m = 1.0 - s
            return g(a + scale * s / one_m) * scale / (one_m * one_m)

        return integrate(h, 0.0, 1.0, tol, vectorized=True)

    def panel(lo, hi):
        return _panel(g, lo, hi)

    val, err = panel(a, b)
    heap = [(-err, a, b, val)]
    total, total_err = val, err
    for _ in range(tol.max_iterations):
        if total_err <= tol.abs_tol + tol.rel_tol * abs(total):
            return total
        neg_err, lo, hi, v = heapq.heappop(heap)
        mid = 0.5 * (lo + hi)
        if not lo < mid < hi:
            break
        v1, e1 = panel(lo, mid)
        v2, e2 = panel(mid, hi)
        total += v1 + v2 - v
        total_err += e1 + e2 + neg_err
        heapq.heappush(heap, (-e1, lo, mid, v1))
        heapq.heappush(heap, (-e2, mid, hi, v2))
    # re-sum to shed accumulated update round-off before the final check
    total = math.fsum(item[3] for item in heap)
    total_err = math.fsum(-item[0] for item in heap)
    if total_err <= tol.abs_tol + tol.rel_tol * abs(total):
        return total
    raise ConvergenceError(
        f"quadrature did not converge after {tol.max_iterations} bisections "
        f"(error estimate {total_err:.3g})")


# ---------------------------------------------------------------------------
# root finding

@dataclass(frozen=True)
class RootBracket:
    lo: float
    hi: float
    f_lo: float
    f_hi: float

    def __post_init__(self):
        if not self.lo < self.hi:
            raise BracketError(f"empty bracket [{self.lo}, {self.hi}]")
        if not self.f_lo * self.f_hi < 0:
            raise BracketError(
                f"no sign change on [{self.lo}, {self.hi}]: f = {self.f_lo:g}, {self.f_hi:g}")

    @classmethod
    def around(cls, f: Callable[[float], float], lo: float, hi: float) -> "RootBracket":
        return cls(lo, hi, f(lo), f(hi))


def find_root(f: Callable[[float], float], bracket: RootBracket,
              tol: Tolerances = DEFAULT_TOL) -> float:
    """Brent's method: inverse quadratic / secant steps guarded by bisection.

    Returns a point inside the bracket once the bracket has shrunk to about
    ``abs_tol`` or ``f`` vanishes exactly.
    """
    a, b = bracket.lo, bracket.hi
    fa, fb = bracket.f_lo, bracket.f_hi
    c, fc = a, fa
    d = e = b - a
    for _ in range(tol.max_iterations):
        if fb * fc > 0:
            c, fc = a, fa
            d = e = b - a
        if abs(fc) < abs(fb):
            a, b, c = b, c, b
            fa, fb, fc = fb, fc, fb
        tol1 = 2.0 * np.finfo(float).eps * abs(b) + 0.5 * tol.abs_tol
        xm = 0.5 * (c - b)
        if abs(xm) <= tol1 or fb == 0.0:
            return b
        if abs(e) >= tol1 and abs(fa) > abs(fb):
            s = fb / fa
            if a == c:
                p = 2.0 * xm * s
                q = 1.0 - s
            else:
                q = fa / fc
                r = fb / fc
                p = s * (2.0 * xm * q * (q - r) - (b - a) * (r - 1.0))
                q = (q - 1.0) * (r - 1.0) * (s - 1.0)
            if p > 0:
                q = -q
            p = abs(p)
            if 2.0 * p < min(3.0 * xm * q - abs(tol1 * q), abs(e * q)):
                e, d = d, p / q
            else:
                d = e = xm
        else:
            d = e = xm
        a, fa = b, fb
        b = b + d if abs(d) > tol1 else b + math.copysign(tol1, xm)
        fb = f(b)
        if math.isnan(fb):
            raise ConvergenceError(f"function returned NaN at x = {b}")
    raise ConvergenceError(f"root finding did not converge in {tol.max_iterations} iterations")


# ---------------------------------------------------------------------------
# 2x2 linear systems

def solve_2x2(matrix, rhs, det_tol: float = 1e-14) -> np.ndarray:
    """Solve a complex 2x2 system by Cramer's rule.

    The system is refused when the determinant, relative to the product of
    the row norms, falls below ``det_tol``.
    """
    m = np.asarray(matrix, dtype=complex)
    r = np.asarray(rhs, dtype=complex)
    if m.shape != (2, 2) or r.shape != (2,):
        raise ValueError("expected a 2x2 matrix and a length-2 right-hand side")
    det = m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]
    scale = np.linalg.norm(m[0]) * np.linalg.norm(m[1])
    if scale == 0 or abs(det) < det_tol * scale:
        raise SingularSystemError(f"degenerate 2x2 system (relative determinant {abs(det) / scale if scale else 0:.3g})")
    x0 = (r[0] * m[1, 1] - m[0, 1] * r[1]) / det
    x1 = (m[0, 0] * r[1] - r[0] * m[1, 0]) / det
    return np.array([x0, x1])


# ---------------------------------------------------------------------------
# two-level Schroedinger evolution

HERMITIAN_TOL = 1e-12


def _checked_hamiltonian(hamiltonian):
    def H(t):
        h = np.asarray(hamiltonian(t), dtype=complex)
        if h.shape != (2, 2):
            raise ValueError("hamiltonian must return a 2x2 matrix")
        a, b, c, d = h.ravel().tolist()
        asym = abs(b - c.conjugate()) + abs(a.imag) + abs(d.imag)
        if asym > HERMITIAN_TOL * max(1.0, abs(a), abs(b), abs(c), abs(d)):
            raise NonHermitianError(f"hamiltonian not hermitian at t = {t} (asymmetry {asym:.3g})")
        return a, b, c, d
    return H


def _deriv(m, y0, y1):
    a, b, c, d = m
    return -1j * (a * y0 + b * y1), -1j * (c * y0 + d * y1)


def _rk4(H, t, y, h, h_start=None):
    y0, y1 = y
    m0 = h_start if h_start is not None else H(t)
    mh = H(t + 0.5 * h)
    m1 = H(t + h)
    k1 = _deriv(m0, y0, y1)
    k2 = _deriv(mh, y0 + 0.5 * h * k1[0], y1 + 0.5 * h * k1[1])
    k3 = _deriv(mh, y0 + 0.5 * h * k2[0], y1 + 0.5 * h * k2[1])
    k4 = _deriv(m1, y0 + h * k3[0], y1 + h * k3[1])
    w = h / 6.0
    return (y0 + w * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0]),
            y1 + w * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1]))


def _steps(hamiltonian, state0, t0: float, t1: float, tol: Tolerances,
           max_steps: int, first_step: float | None) -> Iterator[tuple[float, np.ndarray]]:
    H = _checked_hamiltonian(hamiltonian)
    y = np.asarray(state0, dtype=complex)
    if y.shape != (2,):
        raise ValueError("state0 must be a length-2 vector")
    if abs(np.linalg.norm(y) - 1.0) > 1e-10:
        raise ValueError("state0 must be normalised")
    y = tuple(y.tolist())
    t = float(t0)
    yield t, np.array(y)
    span = float(t1) - t
    if span == 0:
        return
    direction = 1.0 if span > 0 else -1.0
    h = first_step if first_step else abs(span) / 64.0
    h_min = 1e-13 * max(abs(span), abs(t0), abs(t1))
    m_start = H(t)
    for _ in range(max_steps):
        remaining = (t1 - t) * direction
        if remaining <= 0:
            return
        h = min(h, remaining)
        if h < h_min:
            raise StepUnderflowError(f"step size underflow at t = {t}")
        hs = direction * h
        full = _rk4(H, t, y, hs, m_start)
        half = _rk4(H, t, y, 0.5 * hs, m_start)
        two = _rk4(H, t + 0.5 * hs, half, 0.5 * hs)
        d0, d1 = two[0] - full[0], two[1] - full[1]
        err = math.hypot(abs(d0), abs(d1)) / 15.0
        # error per unit step: accumulated error over the span stays under tol
        norm = math.hypot(abs(two[0]), abs(two[1]))
        bound = (tol.abs_tol + tol.rel_tol * norm) * h / abs(span)
        if err <= bound:
            t = t1 if h == remaining else t + hs
            y = (two[0] + d0 / 15.0, two[1] + d1 / 15.0)
            m_start = H(t)
            yield t, np.array(y)
        factor = 4.0 if err == 0 else min(4.0, max(0.1, 0.9 * (bound / err) ** 0.2))
        h *= factor
    raise ConvergenceError(f"two-level evolution exceeded {max_steps} steps")


def evolve_two_level(hamiltonian: Callable[[float], np.ndarray], state0, t0: float, t1: float,
                     tol: Tolerances = DEFAULT_TOL, *, max_steps: int = 200_000,
                     first_step: float | None = None) -> np.ndarray:
    """Integrate ``i dpsi/dt = H(t) psi`` for a 2-level system from t0 to t1.

    Classical RK4 with step doubling: each step is taken once at ``h`` and
    twice at ``h/2``; their difference controls the step size and the
    Richardson-extrapolated value is kept. The local tolerance is applied per
    unit step (scaled by ``h/|t1 - t0|``) so that the accumulated error over
    the whole interval, not just one step, stays near ``abs_tol``.
    """
    y = None
    for _, y in _steps(hamiltonian, state0, t0, t1, tol, max_steps, first_step):
        pass
    return y


def two_level_trajectory(hamiltonian, state0, t0, t1, tol: Tolerances = DEFAULT_TOL, *,
                         max_steps: int = 200_000, first_step: float | None = None):
    """Like :func:`evolve_two_level` but returns ``(times, states)`` at every accepted step."""
    ts, ys = [], []
    for t, y in _steps(hamiltonian, state0, t0, t1, tol, max_steps, first_step):
        ts.append(t)
        ys.append(y)
    return np.array(ts), np.array(ys)
