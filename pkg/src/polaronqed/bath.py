"""Finite-mode baths and the exact cavity+bath normal-mode reduction.

Discretization uses the transmission-line grid: N chiral momenta
k_j = j * dk (j = 1..N, the zero mode is dropped) with the sine dispersion
w_j = omega_c * sin(pi j / (2N+1)), which fills (0, omega_c). Couplings are
fixed by local inversion of the density convention,

    J(w_k) = 2 pi c_k^2 / dw_k,

with dw_k the centered-difference spacing of the nonuniform grid, so the
reconstructed density matches the continuum target on every grid point.

The cavity plus its Caldeira-Leggett bath is diagonalized exactly through
the arrowhead matrix B (the quadratic counter-term keeps the resonance
pinned at Omega), which turns the qubit-cavity coupling into a set of
spin-boson couplings g * (U sqrt(Omega/w_hat))_{0j}.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass

import numpy as np
import scipy.linalg

DEGENERACY_RTOL = 1e-12


class BathError(ValueError):
    """Invalid bath construction input."""


@dataclass
class DiscreteBath:
    """Finite mode set approximating a continuum spectral density.

    frequencies are strictly ascending and positive; couplings are the
    non-negative annihilation-operator couplings c_k of
    sigma_x * sum_k c_k (b_k + b_k^dag), normalized so that
    J(w) = 2*pi*sum_k c_k^2 delta(w - w_k).
    """

    frequencies: np.ndarray
    couplings: np.ndarray

    def __post_init__(self):
        self.frequencies = np.atleast_1d(np.asarray(self.frequencies, float))
        self.couplings = np.atleast_1d(np.asarray(self.couplings, float))
        if self.frequencies.shape != self.couplings.shape:
            raise BathError("frequencies and couplings must have equal length")
        if self.n_modes and not np.all(self.frequencies > 0):
            raise BathError("bath frequencies must be strictly positive")
        if self.n_modes > 1 and not np.all(np.diff(self.frequencies) > 0):
            raise BathError("bath frequencies must be strictly ascending")
        if self.n_modes and np.any(self.couplings < 0):
            raise BathError("bath couplings must be non-negative")

    @property
    def n_modes(self) -> int:
        return self.frequencies.size

    def local_spacings(self) -> np.ndarray:
        """Centered-difference frequency spacings, one-sided at the ends."""
        w = self.frequencies
        if w.size == 0:
            return np.zeros(0)
        if w.size == 1:
            return np.array([w[0]])
        dw = np.empty_like(w)
        dw[1:-1] = 0.5 * (w[2:] - w[:-2])
        dw[0] = w[1] - w[0]
        dw[-1] = w[-1] - w[-2]
        return dw

    def reconstructed_j(self) -> np.ndarray:
        """Pointwise density estimate 2*pi*c_k^2/dw_k on the mode grid."""
        dw = self.local_spacings()
        return 2.0 * np.pi * self.couplings**2 / dw

    def smoothed_j(self, omega, n_widths: float = 3.0):
        """Gaussian-window density estimate, robust on merged/interleaved grids.

        The window width is n_widths times the local mode spacing at each
        evaluation point; features narrower than the grid (and anything
        within ~4 window widths of them) are not resolvable.
        """
        if self.n_modes == 0:
            return np.zeros_like(np.asarray(omega, float))
        wk = self.frequencies
        c2 = self.couplings**2
        dw = self.local_spacings()
        omegas = np.atleast_1d(np.asarray(omega, float))
        out = np.empty_like(omegas)
        for i, w in enumerate(omegas):
            k = int(np.clip(np.searchsorted(wk, w), 1, wk.size - 1))
            sig = n_widths * max(dw[k - 1], dw[k])
            out[i] = (2.0 * np.pi * np.sum(c2 * np.exp(-0.5 * ((wk - w) / sig) ** 2))
                      / (sig * np.sqrt(2.0 * np.pi)))
        return out if np.ndim(omega) else float(out[0])

    def to_csv(self, path) -> None:
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["index", "omega_k", "c_k"])
            for i, (w, c) in enumerate(zip(self.frequencies, self.couplings)):
                writer.writerow([i, format(w, ".17g"), format(c, ".17g")])

    @staticmethod
    def from_csv(path) -> "DiscreteBath":
        rows = np.loadtxt(path, delimiter=",", skiprows=1, ndmin=2)
        return DiscreteBath(rows[:, 1], rows[:, 2])


def _merge_degenerate(freqs: np.ndarray, coups: np.ndarray, scale: float):
    """Combine modes closer than DEGENERACY_RTOL*scale, couplings in quadrature."""
    if freqs.size == 0:
        return freqs, coups
    order = np.argsort(freqs, kind="stable")
    freqs, coups = freqs[order], coups[order]
    tol = DEGENERACY_RTOL * scale
    out_w, out_c2 = [freqs[0]], [coups[0] ** 2]
    for w, c in zip(freqs[1:], coups[1:]):
        if w - out_w[-1] < tol:
            out_c2[-1] += c * c
        else:
            out_w.append(w)
            out_c2.append(c * c)
    return np.array(out_w), np.sqrt(np.array(out_c2))


def _sine_grid(omega_c: float, n_modes: int):
    """Transmission-line mode frequencies w_j = omega_c sin(pi j/(2N+1))."""
    j = np.arange(1, n_modes + 1, dtype=float)
    return omega_c * np.sin(np.pi * j / (2 * n_modes + 1))


def _local_spacings(freqs: np.ndarray) -> np.ndarray:
    if freqs.size == 1:
        return np.array([freqs[0]])
    dw = np.empty_like(freqs)
    dw[1:-1] = 0.5 * (freqs[2:] - freqs[:-2])
    dw[0] = freqs[1] - freqs[0]
    dw[-1] = freqs[-1] - freqs[-2]
    return dw


def discretize_ohmic(alpha: float, scale_delta: float, omega_c: float,
                     n_modes: int) -> DiscreteBath:
    """Discretize the Ohmic qubit bath J(w) = pi*alpha*w.

    scale_delta is the qubit frequency setting the Markovian rate
    gamma = pi*alpha*scale_delta; the Ohmic density itself does not depend
    on it, so it only participates in validation.
    """
    if n_modes < 1:
        raise BathError(f"n_modes must be >= 1, got {n_modes}")
    if alpha < 0 or scale_delta <= 0 or omega_c <= 0:
        raise BathError("alpha must be >= 0 and scale_delta, omega_c > 0")
    w = _sine_grid(omega_c, n_modes)
    dw = _local_spacings(w)
    c2 = np.pi * alpha * w * dw / (2.0 * np.pi)
    return DiscreteBath(w, np.sqrt(c2))


def discretize_cavity_bath(alpha_cav: float, omega: float, omega_c: float,
                           n_modes: int) -> DiscreteBath:
    """Discretize the cavity's own Ohmic bath in position-coupling form.

    The Caldeira-Leggett density J_cav = (pi/2 Omega) sum_k (c_k^2/w_k)
    delta(w-w_k) inverts to c_k^2 = (2 Omega/pi) J_cav(w_k) w_k dw_k with
    J_cav(w) = pi*alpha_cav*w, i.e. c_k^2 = 2 Omega alpha_cav w_k^2 dw_k.
    These are the position couplings entering the arrowhead matrix,
    not annihilation-operator couplings.
    """
    if n_modes < 1:
        raise BathError(f"n_modes must be >= 1, got {n_modes}")
    if alpha_cav < 0 or omega <= 0 or omega_c <= 0:
        raise BathError("alpha_cav must be >= 0 and omega, omega_c > 0")
    w = _sine_grid(omega_c, n_modes)
    dw = _local_spacings(w)
    c2 = 2.0 * omega * alpha_cav * w**2 * dw
    return DiscreteBath(w, np.sqrt(c2))


def reconstruct_cavity_j(bath: DiscreteBath, omega: float) -> np.ndarray:
    """Pointwise J_cav estimate (pi/2 Omega) c_k^2/(w_k dw_k) on the grid."""
    dw = bath.local_spacings()
    return np.pi * bath.couplings**2 / (2.0 * omega * bath.frequencies * dw)


def build_cl_matrix(omega: float, bath: DiscreteBath) -> np.ndarray:
    """Arrowhead matrix B of the cavity + position-coupled bath.

    B[0,0] = Omega^2 + sum c_k^2/w_k^2 (counter-term), B[0,k] = -c_k,
    B[k,k] = w_k^2. Positive definite for any bath strength.
    """
    n = bath.n_modes
    b = np.zeros((n + 1, n + 1))
    b[0, 0] = omega**2 + np.sum((bath.couplings / bath.frequencies) ** 2) if n else omega**2
    if n:
        b[0, 1:] = -bath.couplings
        b[1:, 0] = -bath.couplings
        b[np.arange(1, n + 1), np.arange(1, n + 1)] = bath.frequencies**2
    return b


@dataclass
class NormalModeDecomposition:
    """Exact normal modes of the cavity + cavity-bath block.

    eigenfrequencies are the w_hat_j = sqrt(eig(B)); cavity_weights is the
    cavity row U[0, :] of the orthogonal transform; effective_couplings are
    the spin-boson couplings g * (U sqrt(Omega/w_hat))_{0j} seen by the
    qubit after the reduction.
    """

    eigenfrequencies: np.ndarray
    cavity_weights: np.ndarray
    effective_couplings: np.ndarray

    @property
    def n_modes(self) -> int:
        return self.eigenfrequencies.size


def diagonalize_cavity_bath(omega: float, g: float,
                            bath: DiscreteBath) -> NormalModeDecomposition:
    """Diagonalize the arrowhead block and fold the coupling onto the qubit."""
    b = build_cl_matrix(omega, bath)
    evals, evecs = scipy.linalg.eigh(b)
    if evals[0] <= 0.0:
        raise BathError(
            f"cavity+bath matrix not positive definite (min eigenvalue {evals[0]:g}); "
            "bath is inconsistent")
    what = np.sqrt(evals)
    u0 = evecs[0, :]
    eff = g * np.abs(u0) * np.sqrt(omega / what)
    return NormalModeDecomposition(what, u0, eff)


def residue_identity_check(decomposition: NormalModeDecomposition,
                           omega: float, bath: DiscreteBath) -> float:
    """Max relative deviation of U_{0j}^2 from the residue formula.

    The cavity weights obey U_{0j}^2 = 2 w_hat_j * Res(g, w_hat_j)
    = 1/(1 + sum_k c_k^2/(w_hat_j^2 - w_k^2)^2), with g the resolvent whose
    inverse is g^{-1}(w) = w^2 - Omega^2 - A(w).
    """
    what = decomposition.eigenfrequencies
    u0sq = decomposition.cavity_weights**2
    if bath.n_modes == 0:
        return float(np.max(np.abs(u0sq - 1.0)))
    c2 = bath.couplings**2
    wk2 = bath.frequencies**2
    denom = 1.0 + np.sum(c2[None, :] / (what[:, None] ** 2 - wk2[None, :]) ** 2, axis=1)
    predicted = 1.0 / denom
    return float(np.max(np.abs(u0sq - predicted) / predicted))


def merge_baths(spin_bath: DiscreteBath,
                decomposition: NormalModeDecomposition) -> DiscreteBath:
    """Concatenate qubit bath and cavity-branch normal modes into one bath.

    Both branches carry annihilation-operator couplings, so they merge
    directly; near-degenerate frequencies combine in quadrature.
    """
    freqs = np.concatenate([spin_bath.frequencies, decomposition.eigenfrequencies])
    coups = np.concatenate([spin_bath.couplings, decomposition.effective_couplings])
    scale = float(np.max(freqs)) if freqs.size else 1.0
    freqs, coups = _merge_degenerate(freqs, coups, scale)
    return DiscreteBath(freqs, coups)


def ohmic_sum_rule(bath: DiscreteBath) -> float:
    """Total spectral weight 2*pi*sum c_k^2 (equals integral of J)."""
    return float(2.0 * np.pi * np.sum(bath.couplings**2))
