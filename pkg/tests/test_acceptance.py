"""
Acceptance criteria 1-11. Each test prints one PASS/FAIL line (also collected
into the terminal summary) and then asserts.

Run on its own with ``pytest tests/test_acceptance.py -v`` or
``python3 tests/test_acceptance.py``.
"""

import math
import time

import numpy as np
import pytest
from scipy.linalg import expm

import conftest
from oracles import j0_first_zero_by_bisection
from vortexqc import specfun
from vortexqc.bdg import (PhysicalParams, continuity_error, count_sign_changes,
                          majorana_condition_residual, strong_pairing_residual, weak_zero_mode)
from vortexqc.braid import BraidWord, Letter, format_braid_word, free_reduce, parse_braid_word
from vortexqc.numerics import RootBracket, find_root
from vortexqc.readout import (PulseParams, ScatterParams, pulse_area, scattering_ratio,
                              simulate_raman_pulse)
from vortexqc.register import (MajoranaRegister, annihilator, apply_braid, bond_number_operator,
                               braid_generator, conjugate_majorana, majorana_matrix, parity,
                               word_unitary)
from vortexqc.units import angular

TEMPLATE = PhysicalParams(mass=1.0, mu=1.0, delta0=0.5, p_fermi=math.sqrt(2.0), xi=1.0)


def verdict(n: int, ok: bool, text: str) -> None:
    line = f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {text}"
    conftest.ACCEPTANCE_LINES[n] = line
    print(line)
    assert ok, line


def random_params(rng, min_kappa_xi=None):
    """Weak-pairing parameters; optionally restricted to kappa*xi >= min_kappa_xi."""
    while True:
        p = PhysicalParams(mass=rng.uniform(0.5, 2.0), mu=rng.uniform(0.05, 5.0),
                           delta0=rng.uniform(0.1, 1.0), p_fermi=rng.uniform(0.8, 3.0),
                           xi=rng.uniform(0.5, 2.0))
        if min_kappa_xi is None or (p.kappa_squared > 0
                                    and math.sqrt(p.kappa_squared) * p.xi >= min_kappa_xi):
            return p


def random_word(rng, n, max_len):
    k = int(rng.integers(0, max_len + 1))
    return BraidWord(tuple(Letter(int(rng.integers(1, 2 * n)), bool(rng.integers(0, 2)))
                           for _ in range(k)))


def five_point(f, x, h):
    fm2, fm1, f0, fp1, fp2 = (f(x + k * h) for k in (-2, -1, 0, 1, 2))
    d2 = (-fp2 + 16 * fp1 - 30 * f0 + 16 * fm1 - fm2) / (12 * h * h)
    d1 = (-fp2 + 8 * fp1 - 8 * fm1 + fm2) / (12 * h)
    return d2, d1, f0


def relative_radial_residual(f, rho, k2, h):
    d2, d1, f0 = five_point(f, rho, h)
    res = np.abs(d2 + d1 / rho + k2 * f0)
    scale = max(np.max(np.abs(d2)), np.max(np.abs(d1 / rho)), np.max(np.abs(k2 * f0)))
    return float(np.max(res) / scale)


# ---------------------------------------------------------------------------

def test_criterion_01_phase_dichotomy():
    t0 = time.perf_counter()
    mus = [m for m in np.linspace(-5.0, 5.0, 100) if abs(m) >= 0.01]
    worst_norm, worst_jump, residuals = 0.0, 0.0, {True: [], False: []}
    for mu in mus:
        p = TEMPLATE.with_mu(float(mu))
        if mu > 0:
            prof = weak_zero_mode(p)
            worst_norm = max(worst_norm, abs(prof.norm - 1.0))
            worst_jump = max(worst_jump, max(continuity_error(prof)) / np.max(np.abs(prof.u)))
        else:
            for env in (True, False):
                residuals[env].append(strong_pairing_residual(p, exterior_envelope=env))
    elapsed = time.perf_counter() - t0
    changes = {env: count_sign_changes(r) for env, r in residuals.items()}
    n_pos = sum(m > 0 for m in mus)
    ok = (worst_norm < 1e-8 and worst_jump < 1e-8 and changes[True] == 0 and changes[False] == 0
          and min(residuals[True]) > 0 and elapsed < 10.0)
    verdict(1, ok, f"{n_pos} weak-pairing modes, max norm error {worst_norm:.1e}, "
                   f"max matching jump {worst_jump:.1e}; {len(mus) - n_pos} strong-pairing points, "
                   f"sign changes {changes[True]} (envelope) / {changes[False]} (bare); "
                   f"{elapsed:.2f} s")


def test_criterion_02_majorana_self_conjugacy():
    t0 = time.perf_counter()
    rng = np.random.default_rng(2024)
    worst = max(majorana_condition_residual(weak_zero_mode(random_params(rng))) for _ in range(20))
    elapsed = time.perf_counter() - t0
    verdict(2, worst < 1e-10 and elapsed < 10.0,
            f"max |v - conj(u)| over 20 random parameter sets = {worst:.1e}; {elapsed:.2f} s")


def test_criterion_03_exterior_decay_rate():
    rng = np.random.default_rng(3)
    errs = []
    for _ in range(10):
        p = random_params(rng, min_kappa_xi=1.0)
        errs.append(abs(weak_zero_mode(p).decay_rate / p.envelope_rate - 1.0))
    verdict(3, max(errs) < 0.02,
            f"fitted rate vs delta0/v_F over [10 xi, 30 xi], worst relative error {max(errs):.2e}")


def test_criterion_04_ode_residuals():
    rng = np.random.default_rng(4)
    worst_in = worst_out = 0.0
    for p in [TEMPLATE] + [random_params(rng) for _ in range(5)]:
        prof = weak_zero_mode(p)
        k = max(math.sqrt(2 * p.mass * p.mu), math.sqrt(abs(p.kappa_squared)), p.envelope_rate)
        h = 0.01 / k
        rho_in = prof.rho[prof.rho < p.xi - 2 * h]
        worst_in = max(worst_in, relative_radial_residual(
            prof.interior_chi, rho_in, 2 * p.mass * p.mu, np.minimum(h, rho_in / 3)))
        lam = p.envelope_rate
        outer = lambda r, prof=prof, lam=lam: prof.exterior_chi(r) * np.exp(lam * r)
        rho_out = prof.rho[(prof.rho > p.xi + 2 * h) & (prof.rho < 20 * p.xi)]
        worst_out = max(worst_out, relative_radial_residual(outer, rho_out, p.kappa_squared, h))
    verdict(4, worst_in < 1e-6 and worst_out < 1e-6,
            f"relative radial-equation residual: interior {worst_in:.1e}, exterior {worst_out:.1e}")


def test_criterion_05_braid_algebra():
    t0 = time.perf_counter()
    worst_exact = worst = 0.0
    conj_ok = True
    for n in range(1, 6):
        dim = 2 ** n
        eye = np.eye(dim)
        gs = [majorana_matrix(n, k) for k in range(1, 2 * n + 1)]
        for a in range(2 * n):
            for b in range(2 * n):
                anti = gs[a] @ gs[b] + gs[b] @ gs[a] - 2 * (a == b) * eye
                worst_exact = max(worst_exact, np.max(np.abs(anti)))
        ts = {i: braid_generator(n, i).matrix for i in range(1, 2 * n)}
        for i, t in ts.items():
            worst = max(worst, np.max(np.abs(t.conj().T @ t - eye)))
            t4 = np.linalg.matrix_power(t, 4)
            worst_exact = max(worst_exact, np.max(np.abs(t4 + eye)),
                              np.max(np.abs(t4 @ t4 - eye)))
            if i + 1 in ts:
                lhs = t @ ts[i + 1] @ t
                rhs = ts[i + 1] @ t @ ts[i + 1]
                worst = max(worst, np.max(np.abs(lhs - rhs)))
            for j, tj in ts.items():
                if abs(i - j) >= 2:
                    worst = max(worst, np.max(np.abs(t @ tj - tj @ t)))
            w = BraidWord(((i, False),))
            for k in range(1, 2 * n + 1):
                want = (i + 1, 1) if k == i else (i, -1) if k == i + 1 else (k, 1)
                conj_ok &= conjugate_majorana(n, w, k, atol=1e-11) == want
    elapsed = time.perf_counter() - t0
    ok = worst < 1e-11 and worst_exact < 1e-12 and conj_ok and elapsed < 30.0
    verdict(5, ok, f"n=1..5: relations/unitarity {worst:.1e}, anticommutator and T^4, T^8 "
                   f"{worst_exact:.1e}, conjugation rule {'holds' if conj_ok else 'broken'}; "
                   f"{elapsed:.2f} s")


def test_criterion_06_generator_forms():
    worst_exp = worst_occ = 0.0
    for n in range(1, 5):
        eye = np.eye(2 ** n)
        for i in range(1, 2 * n):
            g = majorana_matrix(n, i + 1) @ majorana_matrix(n, i)
            closed = braid_generator(n, i).matrix
            assert np.allclose(closed, (eye + g) / math.sqrt(2), atol=1e-15)
            worst_exp = max(worst_exp, np.max(np.abs(expm(0.25 * math.pi * g) - closed)))
            num = bond_number_operator(n, i)
            if i % 2:
                c = annihilator(n, (i + 1) // 2)
                num = c.conj().T @ c
            occ = expm(0.25j * math.pi * (2 * num - eye))
            worst_occ = max(worst_occ, np.max(np.abs(occ - closed)))
    verdict(6, worst_exp < 1e-11 and worst_occ < 1e-11,
            f"n<=4, all sites: |expm - closed form| {worst_exp:.1e}, "
            f"|occupation form - closed form| {worst_occ:.1e}")


def test_criterion_07_parity_superselection():
    rng = np.random.default_rng(7)
    worst = 0.0
    for _ in range(100):
        n = int(rng.integers(1, 6))
        s = MajoranaRegister.random(n, rng)
        w = random_word(rng, n, 40)
        worst = max(worst, abs(parity(apply_braid(s, w)) - parity(s)))
    verdict(7, worst < 1e-10, f"100 random words on random states, max parity drift {worst:.1e}")


def test_criterion_08_readout_numbers():
    t0 = time.perf_counter()
    gap = angular(11, "kHz")
    pulse = PulseParams.from_gap(gap, bandwidth_ratio=0.5, peak_rabi_ratio=1.77,
                                 half_duration_ratio=5.0)
    p_sig = simulate_raman_pulse(pulse).p_transfer
    p_false = simulate_raman_pulse(pulse.with_detuning(2 * gap)).p_transfer
    area = pulse_area(pulse)
    closed = 1.77 * math.sqrt(math.pi) * math.erf(5.0)
    elapsed = time.perf_counter() - t0
    ok = (p_sig >= 0.999 and 3e-6 <= p_false <= 12e-6 and abs(area - math.pi) < 0.005 * math.pi
          and abs(area - closed) < 1e-9 * closed and elapsed < 5.0)
    verdict(8, ok, f"P_signal {p_sig:.7f}, P_false {p_false:.3e} (target 6e-6 within x2), "
                   f"area {area:.6f} ({100 * (area / math.pi - 1):+.2f}% of pi); {elapsed:.2f} s")


def test_criterion_09_scattering_ratio():
    r = scattering_ratio(ScatterParams(angular(1.2, "MHz"), angular(170, "MHz")))
    ok = f"{r:.2g}" == "1.2e-05" and abs(r - 1.2 ** 2 / (4 * 170 ** 2)) < 1e-18
    verdict(9, ok, f"(Gamma/2delta)^2 = {r:.4e} -> {r:.2g}")


def test_criterion_10_special_functions():
    x = np.linspace(0.1, 50.0, 2000)
    j0, j1, y0, y1 = specfun.jy01(x)
    i0, i1, k0, k1 = specfun.ik01(x)
    w_jy = np.max(np.abs((j0 * (-y1) + j1 * y0) / (2 / (np.pi * x)) - 1))
    w_ik = np.max(np.abs((i0 * (-k1) - i1 * k0) / (-1 / x) - 1))
    oracle = j0_first_zero_by_bisection()
    found = find_root(specfun.j0, RootBracket.around(specfun.j0, 2.0, 3.0))
    target = 2.404825557695773
    ok = w_jy < 1e-9 and w_ik < 1e-9 and abs(oracle - target) < 1e-10 and abs(found - target) < 1e-10
    verdict(10, ok, f"Wronskians on [0.1, 50]: J/Y {w_jy:.1e}, I/K {w_ik:.1e}; first J0 zero "
                    f"{found!r} (series oracle {oracle!r})")


def test_criterion_11_parser():
    rng = np.random.default_rng(11)
    round_trip = all(parse_braid_word(format_braid_word(w)) == w
                     for w in (random_word(rng, 20, 30) for _ in range(1000)))
    worst = 0.0
    for _ in range(100):
        w = random_word(rng, 3, 40)
        worst = max(worst, np.max(np.abs(word_unitary(3, w) - word_unitary(3, free_reduce(w)))))
    verdict(11, round_trip and worst < 1e-10,
            f"1000 parse/format round trips {'exact' if round_trip else 'BROKEN'}; "
            f"free_reduce unitary change on n=3 {worst:.1e}")


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q", "-s"]))
