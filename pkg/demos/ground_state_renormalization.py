"""Ground-state renormalization of the qubit splitting.

Sweeps the qubit-bath strength alpha at fixed cavity coupling and compares
the discrete polaron fixed point against the adiabatic-RG estimate; the
inset-style second panel shows how the cavity coupling g alone drags the
splitting down at fixed alpha = 0.1 (reaching 0.68 at g = 0.3, the
resonance point used by the dynamics and spectrum demos).

Run:  python demos/ground_state_renormalization.py
"""

import os

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from polaronqed import (ModelParams, SpectralDensity, adiabatic_rg_delta_r,
                        diagonalize_cavity_bath, discretize_cavity_bath,
                        discretize_ohmic, merge_baths, ohmic_closed_form,
                        solve_delta_r_discrete)

N_MODES = 256
WC = 10.0


def combined_bath(p, n=N_MODES):
    spin = discretize_ohmic(p.alpha, p.delta, p.omega_c, n)
    cav = discretize_cavity_bath(p.alpha_cav, p.omega, p.omega_c, n)
    return merge_baths(spin, diagonalize_cavity_bath(p.omega, p.g, cav))


def main():
    base = ModelParams(delta=1.0, omega=1.0, g=0.2, alpha=0.1,
                       alpha_cav=0.01, omega_c=WC)

    alphas = np.arange(0.0, 0.61, 0.05)
    polaron, arg, pure = [], [], []
    for a in alphas:
        p = base.with_(alpha=float(a))
        polaron.append(solve_delta_r_discrete(combined_bath(p), p.delta).delta_r)
        arg.append(adiabatic_rg_delta_r(SpectralDensity("combined", p),
                                        p.delta, p.omega_c))
        pure.append(ohmic_closed_form(p.delta, float(a), p.omega_c))
    print("alpha  polaron   ARG      g=0 closed form")
    for a, dp, da, dc in zip(alphas, polaron, arg, pure):
        print(f"{a:5.2f}  {dp:7.4f}  {da:7.4f}  {dc:7.4f}")

    gs = np.arange(0.0, 0.61, 0.05)
    vs_g = [solve_delta_r_discrete(combined_bath(base.with_(g=float(g))),
                                   base.delta).delta_r for g in gs]
    print("\ncavity pull at alpha=0.1: delta_r(g=0.3) =",
          round(vs_g[np.argmin(np.abs(gs - 0.3))], 4))

    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(9, 3.6))
    ax1.plot(alphas, polaron, "o-", label="polaron (discrete)")
    ax1.plot(alphas, arg, "s--", label="adiabatic RG")
    ax1.plot(alphas, pure, ":", color="gray", label="g=0 closed form")
    ax1.set_xlabel(r"$\alpha$")
    ax1.set_ylabel(r"$\Delta_r/\Delta$")
    ax1.legend(fontsize=8)
    ax2.plot(gs, vs_g, "o-")
    ax2.axhline(0.68, color="gray", lw=0.8, ls=":")
    ax2.set_xlabel("g")
    ax2.set_ylabel(r"$\Delta_r/\Delta$ at $\alpha=0.1$")
    fig.tight_layout()
    out = os.path.join(os.path.dirname(__file__), "ground_state_renormalization.png")
    fig.savefig(out, dpi=150)
    print("wrote", out)


if __name__ == "__main__":
    main()
