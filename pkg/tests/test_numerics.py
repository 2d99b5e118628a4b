import math

import numpy as np
import pytest
from scipy.integrate import simpson
from scipy.linalg import expm

from vortexqc import numerics, specfun
from vortexqc.numerics import (BracketError, ConvergenceError, NonHermitianError, RootBracket,
                               SingularSystemError, Tolerances, evolve_two_level, find_root,
                               integrate, solve_2x2)

SX = np.array([[0, 1], [1, 0]], dtype=complex)
SZ = np.array([[1, 0], [0, -1]], dtype=complex)
GROUND = np.array([1.0, 0.0], dtype=complex)


class TestTolerances:
    def test_defaults(self):
        t = numerics.DEFAULT_TOL
        assert (t.abs_tol, t.rel_tol, t.max_iterations) == (1e-10, 1e-10, 200)

    @pytest.mark.parametrize("args", [(0, 1e-10, 10), (1e-10, -1, 10), (1e-10, 1e-10, 0)])
    def test_invalid(self, args):
        with pytest.raises(ValueError):
            Tolerances(*args)


class TestIntegrate:
    def test_unit_interval(self):
        assert integrate(lambda x: np.ones_like(x), 0.0, 1.0) == pytest.approx(1.0, abs=1e-14)

    def test_exponential_tail(self):
        assert integrate(lambda x: np.exp(-x), 0.0, math.inf) == pytest.approx(1.0, abs=1e-10)

    def test_bessel_weighted_tail_against_simpson(self):
        f = lambda r: r * specfun.j0(r) ** 2 * np.exp(-2 * r)
        q = integrate(f, 0.0, math.inf)
        # dense-grid Simpson oracle; the tail beyond 40 is below e^-80
        r = np.linspace(0.0, 40.0, 400001)
        oracle = simpson(r * specfun.j0(r) ** 2 * np.exp(-2 * r), x=r)
        assert abs(q - oracle) < 1e-8

    def test_scalar_callable(self):
        q = integrate(lambda x: math.sin(x), 0.0, math.pi, vectorized=False)
        assert q == pytest.approx(2.0, abs=1e-12)

    def test_reversed_limits(self):
        assert integrate(np.cos, 1.0, 0.0) == pytest.approx(-math.sin(1.0), abs=1e-13)

    def test_peaked_integrand(self):
        q = integrate(lambda x: 1e-3 / (x ** 2 + 1e-6), -1.0, 1.0)
        assert q == pytest.approx(2 * math.atan(1e3), rel=1e-10)

    def test_linearity(self):
        rng = np.random.default_rng(3)
        f = lambda x: np.exp(-x) * np.cos(3 * x)
        g = lambda x: x ** 2 * np.exp(-x)
        for _ in range(10):
            a, b = rng.normal(size=2)
            lhs = integrate(lambda x: a * f(x) + b * g(x), 0.0, math.inf)
            rhs = a * integrate(f, 0.0, math.inf) + b * integrate(g, 0.0, math.inf)
            assert abs(lhs - rhs) < 1e-9 * (1 + abs(lhs))

    def test_tolerance_is_met(self):
        for tol in (1e-6, 1e-10, 1e-13):
            q = integrate(lambda x: np.sqrt(x), 0.0, 1.0, Tolerances(tol, tol, 500))
            assert abs(q - 2 / 3) <= 10 * (tol + tol * abs(q))

    def test_nan_integrand(self):
        with pytest.raises(ConvergenceError):
            integrate(lambda x: np.full_like(x, np.nan), 0.0, 1.0)

    def test_non_convergence(self):
        with pytest.raises(ConvergenceError):
            integrate(lambda x: np.sin(1 / x) / x, 1e-9, 1.0, Tolerances(1e-14, 1e-14, 3))

    def test_unsupported_infinite_lower_limit(self):
        with pytest.raises(ValueError):
            integrate(np.exp, -math.inf, 0.0)


class TestFindRoot:
    def test_linear(self):
        assert find_root(lambda x: x - 2, RootBracket.around(lambda x: x - 2, 0.0, 5.0)) == pytest.approx(2.0)

    def test_j0_first_zero(self):
        x = find_root(specfun.j0, RootBracket.around(specfun.j0, 2.0, 3.0))
        assert abs(x - 2.404825557695773) < 1e-10

    def test_no_sign_change(self):
        with pytest.raises(BracketError):
            RootBracket.around(lambda x: x * x, -1.0, 1.0)

    def test_invalid_bracket_fields(self):
        with pytest.raises(BracketError):
            RootBracket(1.0, 0.0, -1.0, 1.0)
        with pytest.raises(BracketError):
            RootBracket(0.0, 1.0, 1.0, 1.0)

    def test_stays_inside_bracket(self):
        rng = np.random.default_rng(17)
        for _ in range(200):
            c = rng.uniform(-3, 3, 3)
            f = lambda x, c=c: (x - c[0]) * ((x - c[1]) ** 2 + 1e-3) * math.exp(c[2] * x)
            lo, hi = c[0] - rng.uniform(0.1, 2), c[0] + rng.uniform(0.1, 2)
            x = find_root(f, RootBracket.around(f, lo, hi))
            assert lo <= x <= hi
            assert abs(x - c[0]) < 1e-8

    def test_converges_on_steep_and_flat(self):
        for f, lo, hi, root in [
            (lambda x: math.tanh(50 * (x - 0.3)), -1.0, 2.0, 0.3),
            (lambda x: (x - 1.0) ** 3, 0.0, 3.0, 1.0),
            (lambda x: math.exp(x) - 1e4, 0.0, 20.0, math.log(1e4)),
        ]:
            x = find_root(f, RootBracket.around(f, lo, hi))
            assert abs(x - root) < 1e-6


class TestSolve2x2:
    def test_random_systems_against_numpy(self):
        rng = np.random.default_rng(5)
        for _ in range(100):
            m = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
            b = rng.normal(size=2) + 1j * rng.normal(size=2)
            assert np.allclose(solve_2x2(m, b), np.linalg.solve(m, b), rtol=1e-10, atol=1e-12)

    def test_singular(self):
        with pytest.raises(SingularSystemError):
            solve_2x2([[1, 2], [2, 4]], [1, 1])

    def test_shape(self):
        with pytest.raises(ValueError):
            solve_2x2([[1, 2, 3], [4, 5, 6]], [1, 2])


def rabi_probability(omega, delta, t):
    w = math.hypot(omega, delta)
    return (omega / w) ** 2 * math.sin(w * t / 2) ** 2


class TestEvolveTwoLevel:
    def test_zero_hamiltonian(self):
        psi0 = np.array([0.6, 0.8j])
        psi = evolve_two_level(lambda t: np.zeros((2, 2), dtype=complex), psi0, 0.0, 3.0)
        assert np.allclose(psi, psi0, atol=1e-15)

    def test_pi_pulse(self):
        om = 2.3
        psi = evolve_two_level(lambda t: 0.5 * om * SX, GROUND, 0.0, math.pi / om)
        assert abs(abs(psi[1]) ** 2 - 1) < 1e-8

    def test_detuned_drive_against_rabi_formula(self):
        rng = np.random.default_rng(23)
        for _ in range(10):
            om, delta, t = rng.uniform(0.2, 5.0), rng.uniform(-5.0, 5.0), rng.uniform(0.1, 10.0)
            h = 0.5 * np.array([[-delta, om], [om, delta]], dtype=complex)
            psi = evolve_two_level(lambda _t: h, GROUND, 0.0, t)
            assert abs(abs(psi[1]) ** 2 - rabi_probability(om, delta, t)) < 1e-7

    def test_constant_hamiltonian_against_expm(self):
        rng = np.random.default_rng(29)
        for _ in range(5):
            a = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
            h = (a + a.conj().T) / 2
            psi = evolve_two_level(lambda _t: h, GROUND, 0.0, 2.0)
            assert np.allclose(psi, expm(-2j * h) @ GROUND, atol=1e-8)

    def test_norm_and_composition(self):
        h = lambda t: 0.5 * np.array([[-1.0, 3 * math.exp(-t * t)], [3 * math.exp(-t * t), 1.0]],
                                     dtype=complex)
        one = evolve_two_level(h, GROUND, -5.0, 5.0)
        mid = evolve_two_level(h, GROUND, -5.0, 0.7)
        two = evolve_two_level(h, mid, 0.7, 5.0)
        assert abs(np.linalg.norm(one) - 1) < 1e-9
        assert np.max(np.abs(one - two)) < 1e-7

    def test_backwards_in_time_inverts(self):
        h = lambda t: 0.5 * np.array([[0.3, math.cos(t)], [math.cos(t), -0.3]], dtype=complex)
        fwd = evolve_two_level(h, GROUND, 0.0, 4.0)
        back = evolve_two_level(h, fwd, 4.0, 0.0)
        assert np.allclose(back, GROUND, atol=1e-8)

    def test_non_hermitian(self):
        with pytest.raises(NonHermitianError):
            evolve_two_level(lambda t: np.array([[0, 1], [0, 0]], dtype=complex), GROUND, 0.0, 1.0)

    def test_unnormalised_state(self):
        with pytest.raises(ValueError):
            evolve_two_level(lambda t: SZ, np.array([1.0, 1.0]), 0.0, 1.0)

    def test_step_budget(self):
        with pytest.raises(ConvergenceError):
            evolve_two_level(lambda t: 1e4 * SX, GROUND, 0.0, 10.0, max_steps=50)

    def test_trajectory_endpoints(self):
        h = lambda t: 0.5 * SX
        times, states = numerics.two_level_trajectory(h, GROUND, 0.0, math.pi)
        assert times[0] == 0.0 and times[-1] == pytest.approx(math.pi, abs=1e-15)
        assert np.all(np.diff(times) > 0)
        assert np.allclose(states[0], GROUND)
        assert abs(abs(states[-1][1]) ** 2 - 1) < 1e-8
        assert len(times) == len(states)
