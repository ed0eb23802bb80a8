"""Polaron-frame treatment of a two-level system ultrastrongly coupled to a
lossy cavity: renormalized splitting, real-time dynamics, oscillation onset
and emission spectra, with discrete-bath oracles for every analytic path."""

__version__ = "0.1.0"

from .bath import (DiscreteBath, NormalModeDecomposition, build_cl_matrix,
                   diagonalize_cavity_bath, discretize_cavity_bath,
                   discretize_ohmic, merge_baths, residue_identity_check)
from .chain import ChainHamiltonian, chain_spectral_check, lanczos_chain_map
from .dynamics import (ExcitationState, TimeSeries, analytic_amplitude,
                       evolve_amplitudes, max_dpe_dt, pe_lab_estimate,
                       pe_polaron, propagate, rabi_onset_g)
from .params import ModelParams
from .polaron import (PolaronFrame, adiabatic_rg_delta_r, build_h_p1,
                      equilibrium_observables, ohmic_closed_form,
                      solve_delta_r_continuum, solve_delta_r_discrete)
from .spectral import (SpectralDensity, combined_j, lorentzian_j, ohmic_j,
                       peaked_j)
from .spectrum import (SpectrumResult, good_cavity_kernel, kernel_discrete,
                       kernel_exact, level_shift_and_width, markov_limit,
                       s_omega)

__all__ = [
    "ModelParams", "SpectralDensity", "ohmic_j", "peaked_j", "combined_j",
    "lorentzian_j", "DiscreteBath", "NormalModeDecomposition",
    "discretize_ohmic", "discretize_cavity_bath", "build_cl_matrix",
    "diagonalize_cavity_bath", "residue_identity_check", "merge_baths",
    "PolaronFrame", "solve_delta_r_discrete", "solve_delta_r_continuum",
    "ohmic_closed_form", "adiabatic_rg_delta_r", "equilibrium_observables",
    "build_h_p1", "ExcitationState", "TimeSeries", "propagate",
    "evolve_amplitudes", "pe_polaron", "pe_lab_estimate",
    "analytic_amplitude", "rabi_onset_g", "max_dpe_dt", "SpectrumResult",
    "kernel_exact", "kernel_discrete", "level_shift_and_width", "markov_limit",
    "good_cavity_kernel", "s_omega", "ChainHamiltonian", "lanczos_chain_map",
    "chain_spectral_check",
]
