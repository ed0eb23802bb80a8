"""Physical parameter set for the qubit + lossy cavity model.

All energies are in units with hbar = 1. The two dimensionless bath
strengths follow the Ohmic convention J(w) = pi*alpha*w, so the Markovian
decay rates are gamma = pi*alpha*delta (qubit) and kappa = pi*alpha_cav*omega
(cavity).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace


@dataclass(frozen=True)
class ModelParams:
    """Bare model constants.

    Attributes
    ----------
    delta : float
        Bare qubit splitting.
    omega : float
        Bare cavity frequency.
    g : float
        Qubit-cavity coupling strength.
    alpha : float
        Dimensionless qubit-bath strength (Ohmic).
    alpha_cav : float
        Dimensionless cavity-bath strength (Ohmic).
    omega_c : float
        Hard ultraviolet cutoff shared by both baths.
    """

    delta: float
    omega: float
    g: float = 0.0
    alpha: float = 0.0
    alpha_cav: float = 0.0
    omega_c: float = 0.0

    def __post_init__(self):
        if self.omega_c == 0.0:
            # default cutoff well above every bare scale
            object.__setattr__(self, "omega_c", 10.0 * max(self.delta, self.omega))
        if not self.delta > 0:
            raise ValueError(f"delta must be positive, got {self.delta}")
        if not self.omega > 0:
            raise ValueError(f"omega must be positive, got {self.omega}")
        if self.g < 0:
            raise ValueError(f"g must be non-negative, got {self.g}")
        if self.alpha < 0:
            raise ValueError(f"alpha must be non-negative, got {self.alpha}")
        if self.alpha_cav < 0:
            raise ValueError(f"alpha_cav must be non-negative, got {self.alpha_cav}")
        if not self.omega_c > max(self.delta, self.omega):
            raise ValueError(
                f"omega_c={self.omega_c} must exceed max(delta, omega)="
                f"{max(self.delta, self.omega)}"
            )

    @property
    def gamma(self) -> float:
        """Markovian qubit emission rate, pi*alpha*delta."""
        return math.pi * self.alpha * self.delta

    @property
    def kappa(self) -> float:
        """Markovian cavity emission rate, pi*alpha_cav*omega."""
        return math.pi * self.alpha_cav * self.omega

    def with_(self, **kwargs) -> "ModelParams":
        """Copy with some fields replaced."""
        return replace(self, **kwargs)
