"""Laboratory units (eV, nm) versus model units (hbar^2/2m = 1).

The core library works in model units only. One model energy unit is
0.038 eV and lengths are measured in nanometres.
"""
from dataclasses import dataclass

ENERGY_QUANTUM_EV = 0.038
LENGTH_UNIT_NM = 1.0


@dataclass(frozen=True)
class UnitSystem:
    energy_quantum: float = ENERGY_QUANTUM_EV
    length_unit: float = LENGTH_UNIT_NM

    def __post_init__(self):
        if not self.energy_quantum > 0 or not self.length_unit > 0:
            raise ValueError("unit scales must be positive")


def ev_to_model(e_ev):
    """Energy in eV -> model units."""
    return e_ev / ENERGY_QUANTUM_EV


def model_to_ev(e_model):
    return e_model * ENERGY_QUANTUM_EV


def nm_to_model(x_nm):
    return x_nm / LENGTH_UNIT_NM


def model_to_nm(x_model):
    return x_model * LENGTH_UNIT_NM
