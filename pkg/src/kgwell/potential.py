"""The triangular well and its effective (energy-dependent) view.

The well is attractive with a linear profile inside |y| <= 1 and zero
outside (y = x/a is the dimensionless coordinate):

    V(y) = -v_bar * (1 - |y|)   for |y| <= 1,   0 otherwise.

With vector coupling, the square of the relativistic dispersion turns
the wave equation into an effective Schroedinger-like problem

    psi'' + (e_eff - v_eff(y)) psi = 0,
    e_eff = e_bar^2 - m_bar^2,     v_eff = 2 e_bar V(y) - V(y)^2,

so the effective well depth depends on the trial energy itself.  In
the exterior region psi decays like exp(-alpha_bar |y|) with
alpha_bar = sqrt(m_bar^2 - e_bar^2).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import InvalidParameterError, NotABoundStateError


@dataclass(frozen=True)
class TriangularWell:
    """Attractive triangular well of dimensionless apex depth v_bar > 0."""

    v_bar: float

    def __post_init__(self):
        if not (isinstance(self.v_bar, (int, float)) and math.isfinite(self.v_bar) and self.v_bar > 0.0):
            raise InvalidParameterError(f"v_bar must be positive and finite, got {self.v_bar!r}")


def potential_value(y, well: TriangularWell):
    """V(y): piecewise-linear, even, continuous, zero outside |y| <= 1.

    Accepts a scalar or a numpy array; returns matching shape.
    """
    ay = np.abs(y)
    val = np.where(ay <= 1.0, -well.v_bar * (1.0 - ay), 0.0)
    if np.ndim(y) == 0:
        return float(val)
    return val


def effective_energy(e_bar: float, m_bar: float) -> float:
    """Effective energy e_bar^2 - m_bar^2 of the squared dispersion."""
    return e_bar * e_bar - m_bar * m_bar


def effective_potential(y, e_bar: float, well: TriangularWell):
    """Effective potential 2*e_bar*V(y) - V(y)^2 (scalar or array)."""
    v = potential_value(y, well)
    return 2.0 * e_bar * v - v * v


def decay_constant(e_bar: float, m_bar: float) -> float:
    """Exterior decay rate alpha_bar = sqrt(m_bar^2 - e_bar^2).

    Only defined inside the open bound-state window |e_bar| < m_bar.
    The factored form keeps full precision when e_bar sits within
    rounding distance of the window edge.
    """
    if not (abs(e_bar) < m_bar):
        raise NotABoundStateError(
            f"|e_bar| must be < m_bar for a bound state, got e_bar={e_bar!r}, m_bar={m_bar!r}"
        )
    return math.sqrt((m_bar - e_bar) * (m_bar + e_bar))


@dataclass(frozen=True)
class EffectiveView:
    """Energy-dependent effective problem: constant e_eff plus v_eff(y)."""

    e_eff: float
    v_eff_at: Callable[[float], float]


def effective_view(e_bar: float, m_bar: float, well: TriangularWell) -> EffectiveView:
    """Bundle the effective energy and potential map for one trial energy."""
    return EffectiveView(
        e_eff=effective_energy(e_bar, m_bar),
        v_eff_at=lambda y: effective_potential(y, e_bar, well),
    )
