"""Continuum spectral densities of the combined qubit environment.

The cavity mode plus its own Ohmic bath act on the qubit as a single
structured bath. Its spectral density is the sum of the qubit's intrinsic
Ohmic part and a term peaked at the cavity resonance,

    J(w) = pi*alpha*w + 4 g^2 kappa Omega w / ((Omega^2-w^2)^2 + (kappa w)^2),

with kappa = pi*alpha_cav*Omega, cut off sharply at omega_c. The convention
is J(w) = 2*pi*sum_k c_k^2 delta(w - w_k) for couplings c_k in the
annihilation-operator form sigma_x * sum_k c_k (b_k + b_k^dag), so the
peaked term integrates to 2*pi*g^2 for a narrow cavity line and
J(delta) equals the Markovian qubit decay rate.

All functions accept scalars or arrays and vanish outside (0, omega_c].
"""

from __future__ import annotations

import numpy as np

from .params import ModelParams


def _support_mask(omega, p: ModelParams):
    w = np.asarray(omega, dtype=float)
    return w, (w > 0.0) & (w <= p.omega_c)


def ohmic_j(omega, p: ModelParams):
    """Intrinsic Ohmic qubit bath, pi*alpha*w inside the cutoff."""
    w, ok = _support_mask(omega, p)
    out = np.where(ok, np.pi * p.alpha * w, 0.0)
    return out if out.ndim else float(out)


def peaked_j(omega, p: ModelParams):
    """Cavity-mediated part of the spectral density (peaked at Omega)."""
    w, ok = _support_mask(omega, p)
    kappa = p.kappa
    num = 4.0 * p.g**2 * kappa * p.omega * w
    den = (p.omega**2 - w**2) ** 2 + (kappa * w) ** 2
    with np.errstate(invalid="ignore", divide="ignore"):
        val = np.where(den > 0.0, num / np.where(den > 0.0, den, 1.0), 0.0)
    out = np.where(ok, val, 0.0)
    return out if out.ndim else float(out)


def combined_j(omega, p: ModelParams):
    """Total spectral density seen by the qubit: Ohmic plus peaked."""
    w, ok = _support_mask(omega, p)
    out = np.where(ok, ohmic_j(w, p) + peaked_j(w, p), 0.0)
    return out if out.ndim else float(out)


def lorentzian_j(omega, p: ModelParams):
    """Near-resonance Lorentzian approximation of the peaked term.

    g^2 kappa / ((Omega-w)^2 + (kappa/2)^2); agrees with peaked_j at w=Omega
    exactly (both give 4 g^2 / kappa) and within a percent for
    |w - Omega| < 5 kappa when kappa << Omega.
    """
    w, ok = _support_mask(omega, p)
    kappa = p.kappa
    if kappa == 0.0:
        out = np.where(ok, 0.0, 0.0)
        return out if out.ndim else float(out)
    val = p.g**2 * kappa / ((p.omega - w) ** 2 + (kappa / 2.0) ** 2)
    out = np.where(ok, val, 0.0)
    return out if out.ndim else float(out)


_KINDS = {
    "ohmic": ohmic_j,
    "peaked": peaked_j,
    "combined": combined_j,
    "lorentzian": lorentzian_j,
}


class SpectralDensity:
    """Callable wrapper tying a density kind to a parameter set."""

    def __init__(self, kind: str, params: ModelParams):
        key = kind.lower()
        if key not in _KINDS:
            raise ValueError(f"unknown spectral density kind {kind!r}; "
                             f"expected one of {sorted(_KINDS)}")
        self.kind = key
        self.params = params
        self._fn = _KINDS[key]

    def __call__(self, omega):
        return self._fn(omega, self.params)

    def __repr__(self):
        return f"SpectralDensity(kind={self.kind!r}, params={self.params!r})"
