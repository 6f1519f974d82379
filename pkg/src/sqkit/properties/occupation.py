"""Thermal occupation numbers (k_B = 1 unless a model says otherwise)."""
from __future__ import annotations

import numpy as np

from ..errors import BoseBelowChemicalPotential, NegativeTemperature
from ..model import Statistics


def fermi_dirac(energy, mu, temperature):
    """``1 / (exp((E - mu) / T) + 1)``; a step function at ``T = 0`` with 1/2 at ``E = mu``."""
    if temperature < 0:
        raise NegativeTemperature(f"temperature must be >= 0, got {temperature}")
    e = np.asarray(energy, dtype=float) - mu
    if temperature == 0:
        out = np.where(e < 0, 1.0, np.where(e > 0, 0.0, 0.5))
    else:
        # tanh form does not overflow for large |E - mu| / T
        out = 0.5 * (1.0 - np.tanh(e / (2.0 * temperature)))
    return out if out.ndim else float(out)


def bose_einstein(energy, mu, temperature):
    """``1 / (exp((E - mu) / T) - 1)``; requires every energy above ``mu``."""
    if temperature < 0:
        raise NegativeTemperature(f"temperature must be >= 0, got {temperature}")
    e = np.asarray(energy, dtype=float) - mu
    if np.any(e <= 0):
        raise BoseBelowChemicalPotential(
            f"Bose-Einstein occupation needs E > mu (min E - mu = {e.min():.6g})"
        )
    if temperature == 0:
        out = np.zeros_like(e)
    else:
        with np.errstate(over="ignore"):
            out = 1.0 / np.expm1(e / temperature)
    return out if out.ndim else float(out)


def occupation(statistics, energy, mu, temperature):
    """Dispatch to the Fermi-Dirac or Bose-Einstein distribution."""
    statistics = Statistics(statistics)
    if statistics is Statistics.FERMI_DIRAC:
        return fermi_dirac(energy, mu, temperature)
    return bose_einstein(energy, mu, temperature)
