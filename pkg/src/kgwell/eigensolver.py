"""Bound-state solver built on the parabolic-cylinder reduction.

For a trial energy e_bar the interior equation on the half-line
0 <= y <= 1 is

    psi'' + (A y^2 + B y + C) psi = 0,
    A = v_bar^2,  B = -2 e_bar v_bar - 2 v_bar^2,  C = (e_bar + v_bar)^2 - m_bar^2.

Completing the square with z = 2 sqrt(A) (y + B / 2A) and rescaling
rho = z / (4A)^{1/4} puts it in the standard form

    u'' + (rho^2 / 4 - b) u = 0,      b = (B^2 - 4AC) / (4A)^{3/2},

and the discriminant collapses exactly: b = m_bar^2 / (2 v_bar) > 0.
The interior solution with even (psi'(0) = 0) or odd (psi(0) = 0)
initial data is a fixed combination of the standard-form pair from
`specfun`, and a bound state exists when the logarithmic derivative at
the well edge matches the decaying exterior tail:

    F(e_bar) = psi'(1) + alpha_bar psi(1) = 0.

Roots of F are located by a sign-change scan over the bound-state
window (-m_bar, m_bar) and polished with a bisection-safeguarded
secant.  Everything is deterministic; no state is shared between calls.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from fractions import Fraction

import numpy as np

from . import specfun
from .errors import (
    DegenerateConfigurationError,
    DegenerateStateError,
    InternalConsistencyError,
    InvalidParameterError,
    NotABoundStateError,
)
from .numerics import (
    refine_root,
    rk4_quadratic_path,
    scan_sign_changes,
    simpson_uniform,
)
from .potential import TriangularWell, decay_constant, potential_value

# Step (in rho) for the direct-integration fallback used when the
# matching points leave the series validity radius.
_FALLBACK_RHO_STEP = 5e-4
# Margin of the default scan window inside the bound-state interval.
_WINDOW_MARGIN = 1e-6
# Hard margin every window must respect.
_WINDOW_EPS = 1e-9
_NODE_THRESHOLD = 1e-12


@dataclass(frozen=True)
class InteriorCoeffs:
    """Quadratic coefficients of the interior equation and derived constants.

    d_coef = (B^2 - 4AC) / (4A) and b_std = d_coef / sqrt(4A) are
    evaluated in exact rational arithmetic on the (exactly
    representable) float inputs, because the discriminant cancellation
    can otherwise cost more than the 1e-12 identity budget when
    (e_bar + v_bar)^2 dwarfs m_bar^2.
    """

    a_coef: float
    b_coef: float
    c_coef: float
    d_coef: float
    b_std: float


def interior_coeffs(e_bar: float, m_bar: float, v_bar: float) -> InteriorCoeffs:
    """Coefficients of psi'' + (A y^2 + B y + C) psi = 0 for y in [0, 1]."""
    for name, val in (("e_bar", e_bar), ("m_bar", m_bar), ("v_bar", v_bar)):
        if not (isinstance(val, (int, float)) and math.isfinite(val)):
            raise InvalidParameterError(f"interior_coeffs: {name} must be finite, got {val!r}")
    if m_bar <= 0.0 or v_bar <= 0.0:
        raise InvalidParameterError(
            f"interior_coeffs: m_bar and v_bar must be positive, got {m_bar!r}, {v_bar!r}"
        )
    a = v_bar * v_bar
    b = -2.0 * e_bar * v_bar - 2.0 * v_bar * v_bar
    c = (e_bar + v_bar) ** 2 - m_bar * m_bar
    fe, fm, fv = Fraction(float(e_bar)), Fraction(float(m_bar)), Fraction(float(v_bar))
    fa = fv * fv
    fb = -2 * fe * fv - 2 * fa
    fc = (fe + fv) ** 2 - fm * fm
    disc = fb * fb - 4 * fa * fc
    d_coef = float(disc / (4 * fa))
    b_std = d_coef / math.sqrt(4.0 * a)
    b_ref = m_bar * m_bar / (2.0 * v_bar)
    if not (b_std > 0.0) or abs(b_std - b_ref) > 1e-12 * b_ref:
        raise InternalConsistencyError(
            f"interior_coeffs: discriminant identity failed, b_std={b_std!r} vs {b_ref!r}"
        )
    return InteriorCoeffs(a_coef=a, b_coef=b, c_coef=c, d_coef=d_coef, b_std=b_std)


def rho_of_y(y: float, coeffs: InteriorCoeffs):
    """Map y to the standard-form coordinate; returns (rho, drho_dy).

    rho = z / (4A)^{1/4} with z = 2 sqrt(A) (y + B / 2A); the sign of z
    is preserved, so rho is an increasing affine function of y with
    slope (4A)^{1/4} = sqrt(2 v_bar).
    """
    a = coeffs.a_coef
    slope = math.sqrt(math.sqrt(4.0 * a))
    z = 2.0 * math.sqrt(a) * (y + coeffs.b_coef / (2.0 * a))
    return z / slope, slope


class _InteriorProblem:
    """Interior parity solution at one trial energy, evaluable on [0, 1].

    Uses the series pair while the rho interval stays inside the series
    validity radius; otherwise integrates the same standard-form
    equation directly from rho(0) with the parity initial data (the
    documented ODE fallback; the integration path spans only
    sqrt(2 v_bar), so weak wells stay cheap even though |rho(0)| blows
    up like 1/sqrt(v_bar)).
    """

    def __init__(self, e_bar: float, m_bar: float, v_bar: float, parity: str):
        if parity not in ("even", "odd"):
            raise InvalidParameterError(f"parity must be 'even' or 'odd', got {parity!r}")
        if not abs(e_bar) < m_bar:
            raise NotABoundStateError(
                f"trial energy outside bound window: e_bar={e_bar!r}, m_bar={m_bar!r}"
            )
        self.parity = parity
        self.coeffs = interior_coeffs(e_bar, m_bar, v_bar)
        self.b = self.coeffs.b_std
        rho0, slope = rho_of_y(0.0, self.coeffs)
        rho1, _ = rho_of_y(1.0, self.coeffs)
        self.rho0 = rho0
        self.slope = slope
        self.series_ok = max(abs(rho0), abs(rho1)) <= specfun.RHO_MAX
        if self.series_ok:
            ue, due, uo, duo = specfun.pcf_basis(self.b, rho0)
            w = ue * duo - due * uo
            if w == 0.0 or not math.isfinite(w):
                raise DegenerateConfigurationError(
                    f"parity basis degenerate at rho0={rho0!r} (wronskian {w!r})"
                )
            if parity == "even":
                # psi(0) = w (within rounding of 1); dpsi/dy(0) = 0 exactly,
                # because the two products cancel identically.
                self.c1, self.c2 = duo, -due
            else:
                # psi(0) = 0 exactly; dpsi/dy(0) = w.
                self.c1, self.c2 = -uo / slope, ue / slope
        else:
            if parity == "even":
                self.ic = (1.0, 0.0)
            else:
                self.ic = (0.0, 1.0 / slope)

    def at_many(self, ys):
        """Evaluate (psi, dpsi/dy) on an ascending grid of y in [0, 1]."""
        ys = np.asarray(ys, dtype=float)
        if len(ys) == 0:
            return np.empty(0), np.empty(0)
        if ys[0] < 0.0 or ys[-1] > 1.0:
            raise InvalidParameterError("interior evaluation points must lie in [0, 1]")
        if self.series_ok:
            psi = np.empty(ys.shape)
            dpsi = np.empty(ys.shape)
            for i, y in enumerate(ys):
                rho, _ = rho_of_y(float(y), self.coeffs)
                ue, due, uo, duo = specfun.pcf_basis(self.b, rho)
                psi[i] = self.c1 * ue + self.c2 * uo
                dpsi[i] = self.slope * (self.c1 * due + self.c2 * duo)
            return psi, dpsi
        rhos = [self.rho0] + [rho_of_y(float(y), self.coeffs)[0] for y in ys]
        us, vs = rk4_quadratic_path(
            0.25, 0.0, -self.b, rhos, self.ic[0], self.ic[1], _FALLBACK_RHO_STEP
        )
        return us[1:], self.slope * vs[1:]

    def at(self, y: float):
        psi, dpsi = self.at_many([y])
        return float(psi[0]), float(dpsi[0])


def interior_solution(y: float, e_bar: float, m_bar: float, v_bar: float, parity: str):
    """Interior wavefunction (psi, dpsi/dy) at 0 <= y <= 1.

    Parity-normalized initial data: even has psi(0) = 1 (to rounding)
    and dpsi/dy(0) = 0 exactly; odd has psi(0) = 0 exactly and
    dpsi/dy(0) = 1 (to rounding).
    """
    if not (0.0 <= y <= 1.0):
        raise InvalidParameterError(f"interior_solution: y must be in [0, 1], got {y!r}")
    return _InteriorProblem(e_bar, m_bar, v_bar, parity).at(y)


def match_mismatch(e_bar: float, m_bar: float, v_bar: float, parity: str) -> float:
    """Matching defect F = psi'(1) + alpha_bar psi(1) of the trial energy.

    Continuous in e_bar across the window (unlike a log-derivative
    ratio, which has poles at the zeros of psi(1)); bound states are
    exactly the sign changes of F.
    """
    prob = _InteriorProblem(e_bar, m_bar, v_bar, parity)
    psi1, dpsi1 = prob.at(1.0)
    return dpsi1 + decay_constant(e_bar, m_bar) * psi1


@dataclass(eq=False)
class BoundState:
    """One bound level with its assembled full-line wavefunction.

    samples is an (n, 3) array of rows (y, psi, dpsi/dy) on a uniform
    symmetric grid over [-y_plot, y_plot]; outside |y| = 1 the rows
    follow the exterior tails C1 exp(alpha y) / D1 exp(-alpha y) whose
    coefficients are stored in tail_coeffs.  norm is the cumulative
    scale applied to the parity-normalized interior solution;
    charge_sign records the sign of the conserved charge when the
    KG-charge normalization was used (vector coupling makes it negative
    for antiparticle-sector states).
    """

    e_bar: float
    parity: str
    nodes: int
    alpha_bar: float
    samples: np.ndarray
    tail_coeffs: tuple
    norm_kind: str
    norm: float
    charge_sign: int | None = None

    @property
    def sector(self) -> str:
        """Particle for e_bar >= 0, antiparticle below (vector coupling)."""
        return "particle" if self.e_bar >= 0.0 else "antiparticle"


@dataclass(eq=False)
class SpectrumReport:
    """All bound states of one well, sorted by ascending e_bar."""

    m_bar: float
    v_bar: float
    states: list
    solver: dict
    warnings: list = field(default_factory=list)
    oracle_deltas: list | None = None


def count_nodes(samples, threshold: float = _NODE_THRESHOLD) -> int:
    """Count interior sign changes of psi strictly inside (-1, 1).

    Magnitudes at or below `threshold` are ignored, so an odd state's
    exact zero at y = 0 contributes one sign change rather than two.
    The samples must cover (-1, 1) with at least 201 points.
    """
    arr = np.asarray(samples, dtype=float)
    if arr.ndim != 2 or arr.shape[1] < 2:
        raise InvalidParameterError("count_nodes: samples must be rows of (y, psi, ...)")
    ys = arr[:, 0]
    inside = np.abs(ys) < 1.0
    n_in = int(inside.sum())
    if n_in < 201 or ys[inside].min() > -0.99 or ys[inside].max() < 0.99:
        raise InvalidParameterError(
            "count_nodes: samples must cover (-1, 1) with at least 201 points"
        )
    vals = arr[inside, 1]
    vals = vals[np.abs(vals) > threshold]
    if len(vals) < 2:
        return 0
    return int(np.sum(vals[:-1] * vals[1:] < 0.0))


def normalize(state: BoundState, kind: str = "L2", well: TriangularWell | None = None) -> BoundState:
    """Rescale a state to unit norm; returns a new BoundState.

    kind="L2": plain square-integral norm.  The in-well part is a
    composite Simpson rule on the uniform stored samples (with
    trapezoid panels closing the gap to the exact boundary values
    recovered from tail_coeffs), and each exterior tail contributes the
    closed form psi(+-1)^2 / (2 alpha_bar).  Repeating the call is
    idempotent because the same quadrature is reused.

    kind="KG-charge": conserved-charge normalization with the density
    (e_bar - V(y)) |psi|^2, normalized to |charge| = 1 with the sign
    recorded on the state; requires the well for the interior V(y).
    """
    if kind not in ("L2", "KG-charge"):
        raise InvalidParameterError(f"normalize: kind must be 'L2' or 'KG-charge', got {kind!r}")
    if kind == "KG-charge" and well is None:
        raise InvalidParameterError("normalize: KG-charge normalization needs the well")
    arr = state.samples
    ys = arr[:, 0]
    psi = arr[:, 1]
    alpha = state.alpha_bar
    c1, d1 = state.tail_coeffs
    psi_l = c1 * math.exp(-alpha)  # psi(-1) from the left tail
    psi_r = d1 * math.exp(-alpha)  # psi(+1) from the right tail
    e_bar = state.e_bar

    if kind == "L2":
        dens = psi * psi
        bl = psi_l * psi_l
        br = psi_r * psi_r
        tail = (bl + br) / (2.0 * alpha)
    else:
        vvals = potential_value(ys, well)
        dens = (e_bar - vvals) * psi * psi
        bl = e_bar * psi_l * psi_l
        br = e_bar * psi_r * psi_r
        tail = e_bar * (psi_l * psi_l + psi_r * psi_r) / (2.0 * alpha)

    inside = np.abs(ys) < 1.0
    ys_in = ys[inside]
    f_in = dens[inside]
    if len(ys_in) < 3:
        raise InvalidParameterError("normalize: samples leave too few points inside the well")
    dx = float(ys_in[1] - ys_in[0])
    m = len(ys_in)
    if m % 2 == 1:
        well_part = simpson_uniform(f_in, dx)
    else:
        well_part = simpson_uniform(f_in[:-1], dx) + 0.5 * dx * (f_in[-2] + f_in[-1])
    # close the gap between the outermost interior samples and y = +-1
    well_part += 0.5 * (1.0 + ys_in[0]) * (bl + f_in[0])
    well_part += 0.5 * (1.0 - ys_in[-1]) * (f_in[-1] + br)
    total = well_part + tail

    if not math.isfinite(total):
        raise DegenerateStateError(f"normalize: non-finite norm integral {total!r}")
    magnitude = abs(total)
    if magnitude < 1e-280:
        raise DegenerateStateError("normalize: state has (numerically) zero norm")
    scale = 1.0 / math.sqrt(magnitude)
    sign = None
    if kind == "KG-charge":
        sign = 1 if total > 0.0 else -1
    new_samples = arr.copy()
    new_samples[:, 1] *= scale
    new_samples[:, 2] *= scale
    return replace(
        state,
        samples=new_samples,
        tail_coeffs=(c1 * scale, d1 * scale),
        norm=state.norm * scale,
        norm_kind=kind,
        charge_sign=sign,
    )


def _assemble_state(e_bar, parity, m_bar, v_bar, well, y_plot, samples_n, norm_kind):
    prob = _InteriorProblem(e_bar, m_bar, v_bar, parity)
    alpha = decay_constant(e_bar, m_bar)
    sgn = 1.0 if parity == "even" else -1.0

    # fine half-line grid: node counting and the boundary values
    ys_fine = np.linspace(0.0, 1.0, 251)
    psi_f, dpsi_f = prob.at_many(ys_fine)
    psi1 = float(psi_f[-1])

    # output grid, mirrored from a half grid so parity is exact
    half_n = (samples_n + 1) // 2
    ys_half = np.linspace(0.0, y_plot, half_n)
    in_mask = ys_half <= 1.0
    psi_in, dpsi_in = prob.at_many(ys_half[in_mask])
    d1 = psi1 * math.exp(alpha)
    tail_y = ys_half[~in_mask]
    tail_psi = d1 * np.exp(-alpha * tail_y)
    psi_half = np.concatenate((psi_in, tail_psi))
    dpsi_half = np.concatenate((dpsi_in, -alpha * tail_psi))
    y_s = np.concatenate((-ys_half[::-1][:-1], ys_half))
    psi_s = np.concatenate((sgn * psi_half[::-1][:-1], psi_half))
    dpsi_s = np.concatenate((-sgn * dpsi_half[::-1][:-1], dpsi_half))
    samples = np.column_stack((y_s, psi_s, dpsi_s))

    state = BoundState(
        e_bar=e_bar,
        parity=parity,
        nodes=0,
        alpha_bar=alpha,
        samples=samples,
        tail_coeffs=(sgn * d1, d1),
        norm_kind="raw",
        norm=1.0,
    )
    state = normalize(state, kind=norm_kind, well=well)

    y_fine_full = np.concatenate((-ys_fine[::-1][:-1], ys_fine))
    psi_fine_full = state.norm * np.concatenate((sgn * psi_f[::-1][:-1], psi_f))
    fine = np.column_stack((y_fine_full, psi_fine_full))
    return replace(state, nodes=count_nodes(fine))


def find_spectrum(
    m_bar: float,
    v_bar: float,
    parities=("even", "odd"),
    window=None,
    grid_n: int = 2000,
    tol: float = 1e-10,
    y_plot: float = 1.5,
    samples_n: int = 501,
    norm_kind: str = "L2",
) -> SpectrumReport:
    """Locate every bound state of the well inside the energy window.

    The mismatch F is sampled on a uniform grid of grid_n points per
    parity over the window (default: the bound interval shrunk by 1e-6
    on both sides), sign changes are bracketed and refined to
    |delta e_bar| <= tol, and each root is assembled into a normalized
    BoundState.  States are sorted by ascending e_bar; negative-energy
    roots are antiparticle-sector levels and are reported, not
    suppressed.  Warnings are attached for near-degenerate roots
    (closer than 10 tol) and for a parity sequence that fails to
    alternate starting from even.
    """
    if not (isinstance(m_bar, (int, float)) and math.isfinite(m_bar) and m_bar > 0.0):
        raise InvalidParameterError(f"find_spectrum: m_bar must be positive, got {m_bar!r}")
    well = TriangularWell(v_bar)
    parities = tuple(parities)
    if len(parities) == 0 or any(p not in ("even", "odd") for p in parities):
        raise InvalidParameterError(f"find_spectrum: bad parities {parities!r}")
    if window is None:
        window = (-m_bar + _WINDOW_MARGIN, m_bar - _WINDOW_MARGIN)
    lo, hi = float(window[0]), float(window[1])
    if not (lo < hi and lo >= -m_bar + _WINDOW_EPS and hi <= m_bar - _WINDOW_EPS):
        raise InvalidParameterError(
            f"find_spectrum: window {window!r} must lie inside "
            f"({-m_bar + _WINDOW_EPS}, {m_bar - _WINDOW_EPS})"
        )
    if grid_n < 16:
        raise InvalidParameterError(f"find_spectrum: grid_n must be >= 16, got {grid_n!r}")
    if not (tol > 0.0 and math.isfinite(tol)):
        raise InvalidParameterError(f"find_spectrum: tol must be positive, got {tol!r}")
    if y_plot <= 1.0 or samples_n < 51 or samples_n % 2 == 0:
        raise InvalidParameterError(
            "find_spectrum: need y_plot > 1 and odd samples_n >= 51, got "
            f"y_plot={y_plot!r}, samples_n={samples_n!r}"
        )

    roots = []
    for parity in parities:
        def f(e, _p=parity):
            return match_mismatch(e, m_bar, v_bar, _p)

        es = np.linspace(lo, hi, grid_n)
        fs = [f(float(e)) for e in es]
        for blo, bhi, flo, fhi in scan_sign_changes(list(map(float, es)), fs):
            root, _ = refine_root(f, blo, bhi, flo, fhi, tol)
            roots.append((root, parity))

    roots.sort(key=lambda t: t[0])
    warnings = []
    for i in range(len(roots) - 1):
        gap = roots[i + 1][0] - roots[i][0]
        if gap < 10.0 * tol:
            warnings.append(
                f"root separation {gap:.3e} between states {i} and {i + 1} "
                f"is below 10*tol; treat the pair with suspicion"
            )

    states = [
        _assemble_state(e, parity, m_bar, v_bar, well, y_plot, samples_n, norm_kind)
        for e, parity in roots
    ]

    if set(parities) == {"even", "odd"} and len(states) > 1:
        expected = ["even" if i % 2 == 0 else "odd" for i in range(len(states))]
        got = [s.parity for s in states]
        if got != expected:
            warnings.append(
                "parity sequence does not alternate starting from even: "
                + ",".join(got)
            )

    solver = {
        "tol": tol,
        "grid_n": grid_n,
        "method": "pcf-match",
        "window": (lo, hi),
        "y_plot": y_plot,
        "samples_n": samples_n,
        "norm_kind": norm_kind,
    }
    return SpectrumReport(
        m_bar=m_bar, v_bar=v_bar, states=states, solver=solver, warnings=warnings
    )
