import numpy as np
import pytest
from scipy.integrate import solve_ivp

from polaronqed.bath import DiscreteBath
from polaronqed.dynamics import (PropagationError, TimeSeries,
                                 analytic_amplitude, dominant_frequency,
                                 evolve_amplitudes, evolve_amplitudes_stepper,
                                 max_dpe_dt, pe_lab_estimate, pe_polaron,
                                 propagate, rabi_onset_g)
from polaronqed.polaron import PolaronFrame, build_h_p1, displacements_at


def test_empty_bath_phase_evolution():
    h = np.array([[0.7]])
    t = np.linspace(0, 50, 101)
    states = propagate(h, t)
    for s, ti in zip(states, t):
        assert abs(s.psi - np.exp(-1j * 0.7 * ti)) < 1e-12
        assert pe_polaron(s) == pytest.approx(1.0, abs=1e-13)


def test_single_resonant_mode_rabi():
    # two-level reduction with the quadratic shift folded in
    dr, f1 = 0.7, -0.05
    bath = DiscreteBath([dr], [abs(f1) * (dr + dr)])
    frame = PolaronFrame(np.array([f1]), dr, 1, True, False)
    h = build_h_p1(bath, frame)
    b = 2 * dr * f1
    s = 2 * dr * f1**2
    t = np.linspace(0, 40, 401)
    rabi = np.sqrt(4 * b**2 + s**2)
    pe_exact = 1.0 - (4 * b**2 / rabi**2) * np.sin(0.5 * rabi * t) ** 2
    amps = evolve_amplitudes(h, t)
    np.testing.assert_allclose(np.abs(amps[:, 0]) ** 2, pe_exact, atol=1e-12)


def test_norm_conservation():
    rng = np.random.default_rng(11)
    n = 40
    freqs = np.sort(rng.uniform(0.1, 10.0, n)) + np.arange(n) * 1e-9
    coups = rng.uniform(0, 0.1, n)
    bath = DiscreteBath(freqs, coups)
    frame = PolaronFrame(displacements_at(bath, 0.8), 0.8, 1, True, False)
    h = build_h_p1(bath, frame)
    t = np.linspace(0, 100, 501)
    amps = evolve_amplitudes(h, t)
    norms = np.sum(np.abs(amps) ** 2, axis=1)
    assert np.max(np.abs(norms - 1.0)) < 1e-12


def test_eigen_vs_stepper_agreement():
    rng = np.random.default_rng(5)
    n = 64
    freqs = np.sort(rng.uniform(0.05, 10.0, n)) + np.arange(n) * 1e-9
    bath = DiscreteBath(freqs, rng.uniform(0, 0.08, n))
    frame = PolaronFrame(displacements_at(bath, 0.75), 0.75, 1, True, False)
    h = build_h_p1(bath, frame)
    t = np.linspace(0, 200, 801)
    a1 = evolve_amplitudes(h, t)
    a2 = evolve_amplitudes_stepper(h, t)
    diff = np.max(np.abs(np.abs(a1[:, 0]) ** 2 - np.abs(a2[:, 0]) ** 2))
    assert diff < 1e-7
    norms = np.sum(np.abs(a2) ** 2, axis=1)
    assert np.max(np.abs(norms - 1.0)) < 1e-8


def test_rejects_non_hermitian():
    h = np.array([[0.5, 0.1], [0.3, 1.0]])
    with pytest.raises(PropagationError, match="Hermitian"):
        evolve_amplitudes(h, np.linspace(0, 1, 5))


def test_pe_lab_estimate():
    pe = np.array([1.0, 0.5, 0.0])
    out = pe_lab_estimate(pe, 0.16)
    assert out[0] == pytest.approx(1.0)
    assert out[-1] == pytest.approx(0.16)
    # long-time value for the 0.68-renormalized case
    assert pe_lab_estimate(np.zeros(1), (1 - 0.68) / 2)[0] == pytest.approx(0.16)


def test_analytic_amplitude_t0_and_g0():
    t = np.linspace(0, 10, 21)
    for g, gamma, kappa, d in [(0.3, 0.2, 0.02, 0.0), (0.0, 0.3, 0.1, 0.0),
                               (0.1, 0.05, 0.2, 0.15)]:
        psi = analytic_amplitude(g, gamma, kappa, d, t)
        assert abs(psi[0] - 1.0) < 1e-12
    np.testing.assert_allclose(analytic_amplitude(0.0, 0.3, 0.1, 0.0, t),
                               np.exp(-0.15 * t), atol=1e-12)


def test_analytic_amplitude_matches_printed_form():
    # at zero detuning the closed form collapses to the two-root expression
    t = np.linspace(0, 30, 61)
    for g, gamma, kappa in [(0.2, 0.15, 0.03), (0.01, 0.3, 0.02)]:
        eta = np.sqrt(complex((gamma - kappa) ** 2 - 16 * g * g))
        printed = (np.exp(-t * (kappa + gamma + eta) / 4)
                   * ((gamma - kappa) * (1 - np.exp(eta * t / 2))
                      + eta + eta * np.exp(eta * t / 2)) / (2 * eta))
        mine = analytic_amplitude(g, gamma, kappa, 0.0, t)
        np.testing.assert_allclose(mine, printed, atol=1e-12)


def test_analytic_amplitude_vs_memory_kernel_ode():
    # independent oracle: integrate the memory-kernel system directly
    def oracle(g, gamma, kappa, delta, t):
        def rhs(_, y):
            psi = y[0] + 1j * y[1]
            chi = y[2] + 1j * y[3]
            dpsi = -0.5 * gamma * psi - g * g * chi
            dchi = (1j * delta - 0.5 * kappa) * chi + psi
            return [dpsi.real, dpsi.imag, dchi.real, dchi.imag]
        sol = solve_ivp(rhs, (0, t[-1]), [1, 0, 0, 0], t_eval=t,
                        rtol=1e-11, atol=1e-13)
        return sol.y[0] + 1j * sol.y[1]

    t = np.linspace(0, 40, 161)
    for g, gamma, kappa, d in [(0.3, 0.2, 0.02, 0.0), (0.3, 0.2, 0.02, -0.05),
                               (0.05, 0.24, 0.021, 0.1)]:
        np.testing.assert_allclose(analytic_amplitude(g, gamma, kappa, d, t),
                                   oracle(g, gamma, kappa, d, t), atol=1e-9)


def test_analytic_amplitude_degenerate_root():
    # continuous through the critically damped point eta = 0
    gamma, kappa = 0.2, 0.04
    gc = abs(gamma - kappa) / 4.0
    t = np.linspace(0, 30, 61)
    at = analytic_amplitude(gc, gamma, kappa, 0.0, t)
    near = analytic_amplitude(gc * (1 + 1e-9), gamma, kappa, 0.0, t)
    np.testing.assert_allclose(at, near, atol=1e-6)


def test_oscillation_onset_boundary():
    # roots acquire imaginary parts exactly above |gamma-kappa|/4
    gamma, kappa = 0.24, 0.02
    gc = rabi_onset_g(gamma, kappa)
    assert gc == pytest.approx(abs(kappa - gamma) / 4.0, rel=1e-15)
    eta_below = np.sqrt(complex((gamma - kappa) ** 2 - 16 * (0.99 * gc) ** 2))
    eta_above = np.sqrt(complex((gamma - kappa) ** 2 - 16 * (1.01 * gc) ** 2))
    assert eta_below.imag == 0.0 and eta_above.imag != 0.0
    assert rabi_onset_g(0.1, 0.1) == 0.0


def test_max_dpe_dt():
    t = np.linspace(0, 10, 201)
    decay = TimeSeries(t, np.exp(-0.5 * t))
    assert max_dpe_dt(decay) == 0.0
    wiggly = TimeSeries(t, np.exp(-0.1 * t) * np.cos(2 * t) ** 2)
    assert max_dpe_dt(wiggly) > 0.1
    with pytest.raises(ValueError):
        max_dpe_dt(TimeSeries(t[:2], np.ones(2)))


def test_max_dpe_dt_grows_with_g():
    t = np.linspace(0, 120, 2401)
    gamma, kappa = 0.24, 0.021
    vals = []
    for g in (0.08, 0.12, 0.2, 0.3):
        pe = np.abs(analytic_amplitude(g, gamma, kappa, 0.0, t)) ** 2
        vals.append(max_dpe_dt(TimeSeries(t, pe)))
    assert all(b > a for a, b in zip(vals, vals[1:]))


def test_dominant_frequency():
    t = np.linspace(0, 100, 2001)
    pe = np.exp(-0.05 * t) * (0.5 + 0.5 * np.cos(0.6 * t))
    freq = dominant_frequency(t, pe)
    assert freq == pytest.approx(0.6, rel=0.05)
