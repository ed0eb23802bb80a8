"""Qubit emission spectrum from the single-excitation self-energy.

The Laplace-domain qubit amplitude is 1/(s + K(s)) with the memory kernel

    K = kernel / (1 + i*kernel/(2 delta_r)),
    kernel(s) = sum_k (2 delta_r f_k)^2 / (s + i(w_k - delta_r)),

so on the real axis K = Gamma(w) + i R(w): Gamma is the local linewidth and
R the level shift, and the emission line shape is

    S(w) ~ 1 / ((w - delta_r - R(w))^2 + Gamma(w)^p),

with p = 1 as printed in the source expressions (dimensionally p = 2 is the
squared-modulus form; both are available, p=1 is the default).

In the continuum limit the kernel evaluated at s = i(delta_r - w) + 0+ has

    kernel' (real part)  = (2 delta_r)^2 J(w) / (2 (w + delta_r)^2),
    kernel'' (-imag part) = (2 delta_r)^2/(2 pi) *
                            PV integral_0^wc J(v)/((v+delta_r)^2 (v-w)) dv,

which reproduces the textbook weak-coupling pair: Gamma -> the cavity
Lorentzian g^2 (kappa/2)/((w-Omega)^2+(kappa/2)^2) plus an Ohmic floor, and
R -> g^2 (w-Omega)/((w-Omega)^2+(kappa/2)^2). The principal value is done by
singularity subtraction plus the analytic log remainder.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import quad

from .bath import DiscreteBath
from .params import ModelParams
from .polaron import PolaronFrame
from .spectral import SpectralDensity

METHODS = ("exact", "discrete", "markov", "good_cavity")


class SpectrumError(RuntimeError):
    """Degenerate kernel denominator (localization pathology) or bad grid."""


@dataclass
class SpectrumResult:
    """Sampled spectrum with its level-shift and linewidth profiles."""

    omegas: np.ndarray
    s_values: np.ndarray
    r_values: np.ndarray
    gamma_values: np.ndarray
    method: str
    meta: dict = field(default_factory=dict)


def kernel_exact(omega: float, j: SpectralDensity, delta_r: float,
                 quad_rtol: float = 1e-9) -> complex:
    """Continuum kernel' - i*kernel'' at frequency omega inside (0, omega_c)."""
    p = j.params
    wc = p.omega_c
    margin = 1e-9 * wc
    if not (margin < omega < wc - margin):
        raise SpectrumError(f"omega={omega} outside the open support (0, {wc})")
    dr = delta_r

    def f_weight(v):
        return j(v) / (v + dr) ** 2

    kp = 0.5 * (2 * dr) ** 2 * f_weight(omega)
    fw = f_weight(omega)
    h = 1e-7 * wc

    def integrand(v):
        if abs(v - omega) < h:
            return (f_weight(omega + h) - f_weight(omega - h)) / (2 * h)
        return (f_weight(v) - fw) / (v - omega)

    points = {omega}
    if p.kappa > 0 and p.g > 0:
        for x in (p.omega - 5 * p.kappa, p.omega, p.omega + 5 * p.kappa):
            if 0.0 < x < wc:
                points.add(x)
    val, _ = quad(integrand, 0.0, wc, points=sorted(points), limit=400,
                  epsrel=quad_rtol, epsabs=0.0)
    pv = val + fw * np.log((wc - omega) / omega)
    ks = (2 * dr) ** 2 / (2 * np.pi) * pv
    return complex(kp, -ks)


def kernel_discrete(omega: float, bath: DiscreteBath,
                    frame: PolaronFrame) -> complex:
    """Finite-N kernel estimate from the polaron frame couplings.

    The principal-value (imaginary) part keeps the broadened-pole form with
    epsilon = 2x the local mode spacing; the spectral (real) part uses a
    Gaussian window of the same width, whose fast tails keep narrow lines
    from leaking across the grid (a pole-broadened estimator decays only
    quadratically and would swamp the off-resonant region).
    """
    if bath.n_modes == 0:
        return 0.0 + 0.0j
    dr = frame.delta_r
    num = (2.0 * dr * frame.displacements) ** 2
    wk = bath.frequencies
    dw = bath.local_spacings()
    i = int(np.clip(np.searchsorted(wk, omega), 1, wk.size - 1))
    eps = 2.0 * max(dw[i - 1], dw[i])
    d = wk - omega
    kp = np.pi * np.sum(num * np.exp(-0.5 * (d / eps) ** 2)) / (eps * np.sqrt(2 * np.pi))
    ks = np.sum(num * d / (d * d + eps * eps))
    return complex(kp, -ks)


def level_shift_and_width(kernel: complex, delta_r: float):
    """(R, Gamma) from the kernel through K = kernel/(1 + i*kernel/(2 delta_r)).

    Written out in the real and imaginary parts kp = Re kernel,
    ks = -Im kernel:

        den   = (2 delta_r + ks)^2 + kp^2
        Gamma = (2 delta_r)^2 kp / den
        R     = -2 delta_r (kp^2 + ks^2 + 2 delta_r ks) / den
    """
    kp = kernel.real
    ks = -kernel.imag
    two_dr = 2.0 * delta_r
    den = (two_dr + ks) ** 2 + kp**2
    if den == 0.0:
        raise SpectrumError("degenerate kernel denominator (pole); "
                            "parameters sit at a localization pathology")
    gamma = two_dr**2 * kp / den
    r = -two_dr * (kp**2 + ks**2 + two_dr * ks) / den
    return r, gamma


def markov_limit(omega, p: ModelParams):
    """Weak-coupling closed forms for (R, Gamma).

    Gamma = g^2 (kappa/2)/((w-Omega)^2+(kappa/2)^2) + pi*alpha*delta,
    R     = g^2 (w-Omega)   /((w-Omega)^2+(kappa/2)^2).
    """
    w = np.asarray(omega, float)
    half_k = 0.5 * p.kappa
    den = (w - p.omega) ** 2 + half_k**2
    if p.kappa == 0.0:
        with np.errstate(divide="ignore", invalid="ignore"):
            gamma = np.where(den > 0, 0.0, np.inf) + np.pi * p.alpha * p.delta
            r = np.where(den > 0, p.g**2 * (w - p.omega) / np.where(den > 0, den, 1.0), 0.0)
    else:
        gamma = p.g**2 * half_k / den + np.pi * p.alpha * p.delta
        r = p.g**2 * (w - p.omega) / den
    if w.ndim:
        return r, gamma
    return float(r), float(gamma)


def good_cavity_kernel(omega: float, p: ModelParams, delta_r: float) -> complex:
    """Closed-form kernel for a narrow cavity line plus the Ohmic part.

    The cavity term carries the weak-coupling pair (R2, Gamma2) with the
    1/(Omega+delta_r)^2 weight; the Ohmic principal value has an exact
    primitive on (0, omega_c),

        PV = -w*log((wc+a)/a)/(a+w)^2 + a/(a+w) * (1/a - 1/(wc+a))
             + w*log((wc-w)/w)/(a+w)^2,     a = delta_r,

    which tends to (a + w + w*log(a/w))/(a+w)^2 as the cutoff grows.
    """
    if omega <= 0.0:
        raise SpectrumError(f"omega must be positive, got {omega}")
    if omega >= p.omega_c:
        raise SpectrumError(f"omega={omega} must lie below the cutoff {p.omega_c}")
    dr = delta_r
    half_k = 0.5 * p.kappa
    den2 = (omega - p.omega) ** 2 + half_k**2
    gamma2 = p.g**2 * half_k / den2 if p.kappa > 0 else 0.0
    r2 = p.g**2 * (omega - p.omega) / den2 if p.kappa > 0 else 0.0
    wfac = (p.omega + dr) ** 2
    kp = (2 * dr) ** 2 * (gamma2 / wfac + np.pi * p.alpha * omega / (2 * (omega + dr) ** 2))
    a, wcut = dr, p.omega_c
    apw2 = (a + omega) ** 2
    pv = (-omega * np.log((wcut + a) / a) / apw2
          + (a / (a + omega)) * (1.0 / a - 1.0 / (wcut + a))
          + omega * np.log((wcut - omega) / omega) / apw2)
    ks = (2 * dr) ** 2 * (-r2 / wfac + 0.5 * p.alpha * pv)
    return complex(kp, -ks)


def s_omega(omega_grid, method: str, p: ModelParams, delta_r: float,
            bath: DiscreteBath | None = None,
            frame: PolaronFrame | None = None,
            j: SpectralDensity | None = None,
            gamma_squared: bool = False,
            quad_rtol: float = 1e-9) -> SpectrumResult:
    """Evaluate the peak-normalized spectrum on a grid with one method.

    method is one of 'exact', 'discrete', 'markov', 'good_cavity'. The
    'discrete' method needs (bath, frame); 'exact' uses the combined
    continuum density unless j is supplied.
    """
    method = method.lower()
    if method not in METHODS:
        raise SpectrumError(f"unknown method {method!r}; expected one of {METHODS}")
    omegas = np.asarray(omega_grid, float)
    if omegas.ndim != 1 or omegas.size < 2:
        raise SpectrumError("omega grid must be a 1-d array with >= 2 points")
    r_vals = np.empty_like(omegas)
    g_vals = np.empty_like(omegas)
    if method == "markov":
        r_vals, g_vals = markov_limit(omegas, p)
    else:
        if method == "exact":
            dens = j if j is not None else SpectralDensity("combined", p)
            kernels = (kernel_exact(w, dens, delta_r, quad_rtol) for w in omegas)
        elif method == "discrete":
            if bath is None or frame is None:
                raise SpectrumError("discrete method requires bath and frame")
            kernels = (kernel_discrete(w, bath, frame) for w in omegas)
        else:
            kernels = (good_cavity_kernel(w, p, delta_r) for w in omegas)
        for i, k in enumerate(kernels):
            r_vals[i], g_vals[i] = level_shift_and_width(k, delta_r)
    power = 2 if gamma_squared else 1
    s = 1.0 / ((omegas - delta_r - r_vals) ** 2 + g_vals**power)
    peak = float(np.max(s))
    if not np.isfinite(peak) or peak <= 0:
        raise SpectrumError("spectrum normalization failed (non-finite peak)")
    return SpectrumResult(omegas, s / peak, r_vals, g_vals, method,
                          meta={"delta_r": delta_r, "gamma_squared": gamma_squared})


def peak_positions_and_heights(result: SpectrumResult, n_peaks: int = 2):
    """Positions and heights of the n tallest local maxima of S."""
    s = result.s_values
    w = result.omegas
    idx = [i for i in range(1, s.size - 1) if s[i] >= s[i - 1] and s[i] >= s[i + 1]]
    idx.sort(key=lambda i: s[i], reverse=True)
    idx = sorted(idx[:n_peaks])
    return w[idx], s[idx]
