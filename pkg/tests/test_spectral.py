import numpy as np
import pytest

from polaronqed.params import ModelParams
from polaronqed.spectral import (SpectralDensity, combined_j, lorentzian_j,
                                 ohmic_j, peaked_j)


def params(**kw):
    base = dict(delta=1.0, omega=1.0, g=0.2, alpha=0.1, alpha_cav=0.01,
                omega_c=10.0)
    base.update(kw)
    return ModelParams(**base)


def test_params_rates():
    p = params()
    assert p.gamma == pytest.approx(np.pi * 0.1 * 1.0, rel=1e-15)
    assert p.kappa == pytest.approx(np.pi * 0.01 * 1.0, rel=1e-15)


def test_params_validation():
    with pytest.raises(ValueError):
        ModelParams(delta=-1.0, omega=1.0)
    with pytest.raises(ValueError):
        ModelParams(delta=1.0, omega=1.0, omega_c=0.5)
    with pytest.raises(ValueError):
        ModelParams(delta=1.0, omega=1.0, alpha=-0.1)


def test_params_default_cutoff():
    p = ModelParams(delta=1.0, omega=2.5)
    assert p.omega_c == 25.0


def test_ohmic_examples():
    p = params()
    assert ohmic_j(1.0, p) == pytest.approx(np.pi * 0.1, rel=1e-14)
    assert ohmic_j(0.0, p) == 0.0
    assert ohmic_j(10.0 * 1.01, p) == 0.0
    assert ohmic_j(-2.0, p) == 0.0


def test_peaked_at_resonance():
    # only the (kappa*omega)^2 term survives in the denominator
    p = params()
    assert peaked_j(1.0, p) == pytest.approx(4 * 0.2**2 / p.kappa, rel=1e-13)
    assert peaked_j(1.0, p) == pytest.approx(5.09295817894, rel=1e-9)
    # holds at detuned cavity frequency too
    p2 = params(omega=0.68)
    assert peaked_j(0.68, p2) == pytest.approx(4 * 0.2**2 / p2.kappa, rel=1e-13)


def test_peaked_trivial():
    p = params(g=0.0)
    assert peaked_j(1.0, p) == 0.0
    assert peaked_j(1e-12, params()) == pytest.approx(0.0, abs=1e-10)


def test_combined_is_sum():
    p = params()
    w = np.linspace(1e-3, 10.0, 1001)
    np.testing.assert_allclose(combined_j(w, p), ohmic_j(w, p) + peaked_j(w, p),
                               rtol=1e-15, atol=0.0)
    assert combined_j(1.0, p) == pytest.approx(np.pi * 0.1 + 5.092958179, rel=1e-9)


def test_combined_degenerate_limits():
    assert combined_j(0.7, params(g=0.0)) == ohmic_j(0.7, params(g=0.0))
    p = params(alpha=0.0)
    assert combined_j(1.0, p) == pytest.approx(peaked_j(1.0, p), rel=1e-15)


def test_lorentzian_matches_peak():
    p = params(omega=0.68)
    assert lorentzian_j(0.68, p) == pytest.approx(peaked_j(0.68, p), rel=1e-13)
    # half-width identity
    half = lorentzian_j(0.68 + p.kappa / 2, p)
    assert half == pytest.approx(0.5 * lorentzian_j(0.68, p), rel=1e-12)
    assert lorentzian_j(0.7, params(g=0.0)) == 0.0


@pytest.mark.parametrize("kappa_over_omega", [0.01, 0.0314])
def test_lorentzian_tracks_peaked_near_resonance(kappa_over_omega):
    # narrow-line regime: within 1% for |w - Omega| < 5 kappa
    omega = 0.68
    p = params(omega=omega, alpha=0.0, alpha_cav=kappa_over_omega / np.pi)
    d = np.linspace(-5, 5, 81) * p.kappa
    w = omega + d
    ratio = peaked_j(w, p) / lorentzian_j(w, p)
    assert np.all(np.abs(ratio - 1.0) < 0.01)


def test_nonnegative_and_support():
    rng = np.random.default_rng(7)
    for _ in range(25):
        p = params(delta=rng.uniform(0.5, 2.0), omega=rng.uniform(0.5, 2.0),
                   g=rng.uniform(0, 0.6), alpha=rng.uniform(0, 0.5),
                   alpha_cav=rng.uniform(0, 0.5), omega_c=30.0)
        w = np.concatenate([np.linspace(-1, 0, 5),
                            np.linspace(1e-6, 30.0, 300),
                            np.linspace(30.001, 40, 5)])
        for fn in (ohmic_j, peaked_j, combined_j, lorentzian_j):
            vals = fn(w, p)
            assert np.all(vals >= 0.0)
            assert np.all(vals[(w <= 0) | (w > 30.0)] == 0.0)


def test_spectral_density_dispatch():
    p = params()
    assert SpectralDensity("combined", p)(1.0) == combined_j(1.0, p)
    assert SpectralDensity("Ohmic", p)(1.0) == ohmic_j(1.0, p)
    with pytest.raises(ValueError, match="unknown spectral density"):
        SpectralDensity("gaussian", p)
