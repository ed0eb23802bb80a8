"""Single-excitation dynamics: exact propagation and the analytic estimate.

The polaron-frame Hamiltonian conserves the excitation number, so an
initially excited qubit stays inside the (N+1)-dimensional single-excitation
sector. Propagation is done exactly by dense eigendecomposition (the default
and oracle-quality path); an explicit Runge-Kutta stepper is kept only as an
independent cross-check.

The analytic branch solves the memory-kernel equation obtained from a
Markovian qubit bath plus a Lorentzian cavity line,

    psi_dd + ((gamma+kappa)/2 - i*delta) psi_d
           + (g^2 + gamma*kappa/4 - i*delta*gamma/2) psi = 0,

with psi(0) = 1, psi_d(0) = -gamma/2 and detuning delta = delta_r - Omega.
At delta = 0 the characteristic roots are -(gamma+kappa -/+ eta)/4 with
eta = sqrt((gamma-kappa)^2 - 16 g^2), so oscillations switch on exactly at
g = |gamma - kappa|/4.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg
from scipy.integrate import solve_ivp

HERMITICITY_TOL = 1e-10
NORM_DRIFT_TOL = 1e-6


class PropagationError(RuntimeError):
    """Propagation rejected or failed a conservation check."""


@dataclass
class ExcitationState:
    """Amplitudes of the single-excitation sector at one time."""

    psi: complex
    psi_k: np.ndarray
    time: float

    def norm(self) -> float:
        return float(abs(self.psi) ** 2 + np.sum(np.abs(self.psi_k) ** 2))


@dataclass
class TimeSeries:
    """Sampled excitation probability with an optional analytic overlay."""

    times: np.ndarray
    pe: np.ndarray
    pe_app: np.ndarray | None = None

    def __post_init__(self):
        self.times = np.asarray(self.times, float)
        self.pe = np.asarray(self.pe, float)
        if self.pe_app is not None:
            self.pe_app = np.asarray(self.pe_app, float)
            if self.pe_app.shape != self.times.shape:
                raise ValueError("pe_app length must match times")
        if self.times.shape != self.pe.shape:
            raise ValueError("pe length must match times")


def _check_hermitian(h: np.ndarray) -> np.ndarray:
    h = np.asarray(h)
    scale = max(1.0, float(np.max(np.abs(h))))
    if np.max(np.abs(h - h.conj().T)) > HERMITICITY_TOL * scale:
        raise PropagationError("Hamiltonian must be Hermitian")
    return h


def evolve_amplitudes(h: np.ndarray, t_grid: np.ndarray) -> np.ndarray:
    """Exact amplitudes psi_j(t) on the grid, shape (len(t_grid), N+1).

    Initial state: qubit excited, all modes empty. Uses the spectral
    decomposition of H, so unitarity holds to machine precision.
    """
    h = _check_hermitian(h)
    t = np.asarray(t_grid, float)
    evals, evecs = scipy.linalg.eigh(h)
    weights = evecs.conj()[0, :]  # overlap of eigenvectors with e_0
    phases = np.exp(-1j * np.outer(t, evals))
    amps = (phases * weights[None, :]) @ evecs.T
    norms = np.sum(np.abs(amps) ** 2, axis=1)
    drift = float(np.max(np.abs(norms - 1.0)))
    if drift > NORM_DRIFT_TOL:
        raise PropagationError(f"norm drift {drift:.3g} exceeds {NORM_DRIFT_TOL}")
    return amps


def propagate(h: np.ndarray, t_grid: np.ndarray) -> list[ExcitationState]:
    """Exact propagation returning one ExcitationState per grid time."""
    amps = evolve_amplitudes(h, t_grid)
    return [ExcitationState(psi=amps[i, 0], psi_k=amps[i, 1:], time=float(t))
            for i, t in enumerate(np.asarray(t_grid, float))]


def evolve_amplitudes_stepper(h: np.ndarray, t_grid: np.ndarray,
                              rtol: float = 1e-10,
                              atol: float = 1e-12) -> np.ndarray:
    """Independent explicit time-stepper (DOP853) for cross-validation."""
    h = _check_hermitian(np.asarray(h, complex))
    t = np.asarray(t_grid, float)
    y0 = np.zeros(h.shape[0], complex)
    y0[0] = 1.0
    sol = solve_ivp(lambda _, y: -1j * (h @ y), (t[0], t[-1]), y0,
                    t_eval=t, method="DOP853", rtol=rtol, atol=atol)
    if not sol.success:
        raise PropagationError(f"time-stepper failed: {sol.message}")
    amps = sol.y.T
    norms = np.sum(np.abs(amps) ** 2, axis=1)
    drift = float(np.max(np.abs(norms - 1.0)))
    if drift > NORM_DRIFT_TOL:
        raise PropagationError(f"stepper norm drift {drift:.3g} exceeds {NORM_DRIFT_TOL}")
    return amps


def pe_polaron(state: ExcitationState) -> float:
    """Polaron-frame excitation probability |psi|^2."""
    return float(abs(state.psi) ** 2)


def pe_lab_estimate(pe_polaron_series: np.ndarray, pe_eq: float) -> np.ndarray:
    """Affine lab-frame estimate (1 - pe_eq)*pe + pe_eq, fixing the t->inf limit."""
    return (1.0 - pe_eq) * np.asarray(pe_polaron_series, float) + pe_eq


def analytic_amplitude(g: float, gamma: float, kappa: float,
                       delta_detuning: float, t) -> np.ndarray:
    """Closed-form qubit amplitude of the Markov + Lorentzian reduction.

    Solves the local second-order equation by characteristic roots for any
    detuning; at zero detuning it reduces to

        psi = exp(-t(kappa+gamma+eta)/4) *
              ((gamma-kappa)(1 - e^{eta t/2}) + eta(1 + e^{eta t/2})) / (2 eta),

    eta = sqrt((gamma-kappa)^2 - 16 g^2), handled uniformly for complex eta.
    """
    t = np.asarray(t, float)
    d = complex(delta_detuning)
    b = 0.5 * (gamma + kappa) - 1j * d
    c = g * g + 0.25 * gamma * kappa - 0.5j * d * gamma
    disc = np.sqrt(complex(b * b - 4.0 * c))  # equals eta_delta/2 at delta=0
    r_plus = 0.5 * (-b + disc)
    r_minus = 0.5 * (-b - disc)
    psi0_dot = -0.5 * gamma
    if abs(disc) < 1e-14 * max(1.0, abs(b)):
        r = r_plus
        return (1.0 + (psi0_dot - r) * t) * np.exp(r * t)
    a_plus = (psi0_dot - r_minus) / (r_plus - r_minus)
    a_minus = 1.0 - a_plus
    return a_plus * np.exp(r_plus * t) + a_minus * np.exp(r_minus * t)


def rabi_onset_g(gamma_r: float, kappa: float) -> float:
    """Coupling threshold |kappa - gamma_r|/4 for the onset of oscillations."""
    return abs(kappa - gamma_r) / 4.0


def max_dpe_dt(series: TimeSeries) -> float:
    """Largest positive time derivative of P_e (0 for overdamped decay)."""
    if series.times.size < 3:
        raise ValueError("series must have at least 3 samples")
    deriv = np.gradient(series.pe, series.times)
    return float(max(0.0, np.max(deriv)))


def dominant_frequency(times: np.ndarray, values: np.ndarray,
                       min_omega: float | None = None) -> float:
    """Angular frequency of the strongest oscillatory Fourier component.

    Works on the windowed time derivative (which suppresses the decaying
    baseline), ignores components below min_omega (default: six fundamental
    bins), and refines the peak by parabolic interpolation.
    """
    times = np.asarray(times, float)
    values = np.asarray(values, float)
    deriv = np.gradient(values, times)
    deriv = (deriv - deriv.mean()) * np.hanning(deriv.size)
    spectrum = np.abs(np.fft.rfft(deriv))
    omegas = 2.0 * np.pi * np.fft.rfftfreq(values.size, d=times[1] - times[0])
    if min_omega is None:
        min_omega = 6.0 * omegas[1]
    spectrum = np.where(omegas >= min_omega, spectrum, 0.0)
    i = int(np.argmax(spectrum))
    if 0 < i < spectrum.size - 1 and spectrum[i] > 0:
        y1, y2, y3 = spectrum[i - 1: i + 2]
        denom = y1 - 2 * y2 + y3
        if denom != 0.0:
            return float(omegas[i] + 0.5 * (y1 - y3) / denom * (omegas[1] - omegas[0]))
    return float(omegas[i])
