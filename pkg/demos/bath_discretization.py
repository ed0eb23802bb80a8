"""Discrete baths versus their continuum spectral densities.

Builds the transmission-line discretization of the Ohmic qubit bath, the
Caldeira-Leggett cavity bath and its exact normal-mode reduction, and
checks each against its target density (plus the residue identity behind
the reduction).

Run:  python demos/bath_discretization.py
"""

import os

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from polaronqed import (DiscreteBath, ModelParams, diagonalize_cavity_bath,
                        discretize_cavity_bath, discretize_ohmic, merge_baths,
                        ohmic_j, peaked_j, residue_identity_check)


def main():
    p = ModelParams(delta=1.0, omega=1.0, g=0.2, alpha=0.1, alpha_cav=0.01,
                    omega_c=10.0)
    n = 128
    spin = discretize_ohmic(p.alpha, p.delta, p.omega_c, n)
    cav = discretize_cavity_bath(p.alpha_cav, p.omega, p.omega_c, n)
    dec = diagonalize_cavity_bath(p.omega, p.g, cav)
    eff = DiscreteBath(dec.eigenfrequencies, dec.effective_couplings)
    print("residue identity max deviation:",
          residue_identity_check(dec, p.omega, cav))
    print("cavity row normalization deviation:",
          abs(np.sum(dec.cavity_weights**2) - 1.0))

    wgrid = np.linspace(0.05, 9.95, 400)
    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(9, 3.4))
    ax1.plot(wgrid, ohmic_j(wgrid, p), "-", label=r"$\pi\alpha\omega$")
    ax1.plot(spin.frequencies[::5], spin.reconstructed_j()[::5], "o", ms=4,
             mfc="none", label="discrete (every 5th)")
    ax1.set_xlabel(r"$\omega$")
    ax1.set_ylabel(r"$J(\omega)$")
    ax1.legend(fontsize=8)
    ax2.semilogy(wgrid, np.maximum(peaked_j(wgrid, p), 1e-8), "-",
                 label="peaked density")
    ax2.semilogy(eff.frequencies[::5],
                 np.maximum(eff.reconstructed_j()[::5], 1e-8), "o", ms=4,
                 mfc="none", label="normal modes (every 5th)")
    ax2.set_xlabel(r"$\omega$")
    ax2.legend(fontsize=8)
    fig.tight_layout()
    out = os.path.join(os.path.dirname(__file__), "bath_discretization.png")
    fig.savefig(out, dpi=150)
    print("wrote", out)

    merged = merge_baths(spin, dec)
    print(f"merged bath: {merged.n_modes} modes "
          f"(= {n} qubit-bath + {n + 1} cavity-branch)")


if __name__ == "__main__":
    main()
