"""Unit handling: laboratory (MeV, fm) to dimensionless well parameters.

Internally the solvers work in natural units with the well half-width a
as the length scale: energies are measured in hbar*c/a, so a particle of
rest energy m*c^2 [MeV] in a well of half-width a [fm] has

    m_bar = m*c^2 * a / (hbar*c),   v_bar = V0 * a / (hbar*c).

Only this one conversion is supported; there is no general unit registry.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import InvalidParameterError

# CODATA recommended value, MeV*fm.
HBAR_C_MEV_FM = 197.3269804


def _require_positive(name: str, value: float) -> None:
    if not (isinstance(value, (int, float)) and math.isfinite(value) and value > 0.0):
        raise InvalidParameterError(f"{name} must be positive and finite, got {value!r}")


@dataclass(frozen=True)
class PhysicalParams:
    """Laboratory-frame well parameters.

    mass_energy: particle rest energy m*c^2 in MeV.
    well_depth:  apex depth V0 in MeV.
    half_range:  well half-width a in fm.
    hbar_c:      conversion constant in MeV*fm (CODATA default).
    """

    mass_energy: float
    well_depth: float
    half_range: float
    hbar_c: float = HBAR_C_MEV_FM

    def __post_init__(self):
        _require_positive("mass_energy", self.mass_energy)
        _require_positive("well_depth", self.well_depth)
        _require_positive("half_range", self.half_range)
        _require_positive("hbar_c", self.hbar_c)


@dataclass(frozen=True)
class DimensionlessParams:
    """Dimensionless well parameters (energies in units of hbar*c/a)."""

    m_bar: float
    v_bar: float

    def __post_init__(self):
        _require_positive("m_bar", self.m_bar)
        _require_positive("v_bar", self.v_bar)


def to_dimensionless(params: PhysicalParams) -> DimensionlessParams:
    """Convert laboratory parameters to dimensionless form."""
    scale = params.half_range / params.hbar_c
    return DimensionlessParams(
        m_bar=params.mass_energy * scale,
        v_bar=params.well_depth * scale,
    )


def from_dimensionless(
    params: DimensionlessParams,
    half_range: float,
    hbar_c: float = HBAR_C_MEV_FM,
) -> PhysicalParams:
    """Inverse of to_dimensionless for a given half-width in fm."""
    _require_positive("half_range", half_range)
    _require_positive("hbar_c", hbar_c)
    scale = hbar_c / half_range
    return PhysicalParams(
        mass_energy=params.m_bar * scale,
        well_depth=params.v_bar * scale,
        half_range=half_range,
        hbar_c=hbar_c,
    )


def energy_to_dimensionless(energy_mev: float, params: PhysicalParams) -> float:
    """Convert an energy in MeV to units of hbar*c/a (sign preserved)."""
    return energy_mev * params.half_range / params.hbar_c


def energy_from_dimensionless(e_bar: float, params: PhysicalParams) -> float:
    """Convert an energy in units of hbar*c/a back to MeV."""
    return e_bar * params.hbar_c / params.half_range
