"""Special-function kernels: Kummer series, parabolic-cylinder pair, Airy pair.

The interior wave equation reduces, after completing the square and
rescaling the coordinate, to the standard form

    u'' + (rho^2/4 - b) u = 0,      b > 0,

whose even/odd fundamental pair can be written with the confluent
hypergeometric function M(a, c, z) at purely imaginary argument:

    u_e(rho) = exp(-i rho^2/4) M(1/4 - i b/2, 1/2, i rho^2/2)
    u_o(rho) = rho exp(-i rho^2/4) M(3/4 - i b/2, 3/2, i rho^2/2)

Both are real for real rho and real b (conjugating and applying the
Kummer transformation maps each onto itself); the implementation
computes the complex expression and checks that the imaginary residue
is at rounding level before discarding it.

Everything is a direct Taylor / power-series evaluation with
compensated (Kahan) summation — no lookup tables, no caches.  The
series are trustworthy for |z| <= Z_MAX (i.e. |rho| <= RHO_MAX);
beyond that, double precision loses too many digits to cancellation
and callers must switch to the ODE fallback pcf_via_ode.
"""

from __future__ import annotations

import cmath
import math
from typing import NamedTuple

from .errors import AccuracyError, DomainError, InvalidParameterError
from .numerics import rk4_quadratic

# Validity radius of the direct series: |z| <= Z_MAX for kummer_m, and
# since the pcf functions use z = i rho^2/2, |rho| <= RHO_MAX = sqrt(2 Z_MAX).
Z_MAX = 30.0
RHO_MAX = math.sqrt(2.0 * Z_MAX)
# The Airy-type pair is entire, but growth ~exp(2/3 t^(3/2)) makes large
# arguments pointless; keep a generous hard limit.
T_MAX = 25.0

_SERIES_TOL = 1e-17
_MAX_TERMS = 500
_STAGNANT_NEEDED = 3
_IMAG_RESIDUE = 1e-10


def _is_nonpositive_integer(c: complex) -> bool:
    return c.imag == 0.0 and c.real <= 0.0 and c.real == round(c.real)


def _kummer_sums(a: complex, b: complex, z: complex):
    """Sum S0 = M(a, b, z) and S1 = sum_n n*t_n of the Kummer series.

    t_n = (a)_n / (b)_n * z^n / n!.  S1 is the term-weighted sum needed
    for term-wise differentiated series.  Kahan-compensated; stops when
    the term has stagnated below 1e-17 of the running sum for three
    consecutive terms (an exactly-zero term, i.e. `a` a non-positive
    integer, terminates the polynomial case immediately).
    """
    term = 1.0 + 0.0j
    s0 = term
    comp0 = 0.0j
    s1 = 0.0j
    comp1 = 0.0j
    stagnant = 0
    for n in range(_MAX_TERMS):
        bn = b + n
        if bn == 0.0:
            raise DomainError(f"kummer series: parameter pole at b={b!r}")
        term = term * ((a + n) / bn) * (z / (n + 1))
        y = term - comp0
        t = s0 + y
        comp0 = (t - s0) - y
        s0 = t
        w = (n + 1) * term - comp1
        t1 = s1 + w
        comp1 = (t1 - s1) - w
        s1 = t1
        if term == 0.0:
            return s0, s1
        if abs(term) <= _SERIES_TOL * abs(s0):
            stagnant += 1
            if stagnant >= _STAGNANT_NEEDED:
                return s0, s1
        else:
            stagnant = 0
    raise AccuracyError(
        f"kummer_m: series not converged after {_MAX_TERMS} terms "
        f"(a={a!r}, b={b!r}, z={z!r})",
        partial=s0,
        estimate=abs(term),
    )


def kummer_m(a: complex, b: complex, z: complex) -> complex:
    """Confluent hypergeometric function M(a, b, z) by direct summation.

    Valid for |z| <= Z_MAX; for Re(z) < 0 the Kummer transformation
    M(a, b, z) = exp(z) M(b - a, b, -z) is applied first, which turns
    the alternating tail into a same-sign one and preserves accuracy.
    b at a non-positive integer is a pole of M and is rejected.
    """
    a = complex(a)
    b = complex(b)
    z = complex(z)
    for name, val in (("a", a), ("b", b), ("z", z)):
        if not (math.isfinite(val.real) and math.isfinite(val.imag)):
            raise InvalidParameterError(f"kummer_m: {name} must be finite, got {val!r}")
    if _is_nonpositive_integer(b):
        raise DomainError(f"kummer_m: b={b!r} is a pole (non-positive integer)")
    if abs(z) > Z_MAX:
        raise DomainError(
            f"kummer_m: |z|={abs(z):.3g} exceeds the series validity radius {Z_MAX}"
        )
    if z.real < 0.0:
        value = cmath.exp(z) * _kummer_sums(b - a, b, -z)[0]
    else:
        value = _kummer_sums(a, b, z)[0]
    if not (math.isfinite(value.real) and math.isfinite(value.imag)):
        raise AccuracyError("kummer_m: non-finite result", partial=value)
    return value


class PcfBasis(NamedTuple):
    """Even/odd standard-form pair and derivatives at one point."""

    u_even: float
    du_even: float
    u_odd: float
    du_odd: float


def _check_real(label: str, value: complex, b: float, rho: float) -> float:
    if abs(value.imag) > _IMAG_RESIDUE * (1.0 + abs(value.real)):
        raise AccuracyError(
            f"{label}: imaginary residue {value.imag:.3e} above tolerance at "
            f"b={b!r}, rho={rho!r}",
            partial=value,
            estimate=abs(value.imag),
        )
    return value.real


def pcf_basis(b: float, rho: float) -> PcfBasis:
    """Evaluate u_e, u_e', u_o, u_o' of the standard form at one point.

    u_e(0) = 1, u_e'(0) = 0 and u_o(0) = 0, u_o'(0) = 1, so the pair has
    unit Wronskian for every rho.  The derivative series share the terms
    of the value series (term-wise differentiation), so each call costs
    two Kummer summations.  |rho| <= RHO_MAX enforced; larger arguments
    must go through pcf_via_ode.
    """
    b = float(b)
    rho = float(rho)
    if not (math.isfinite(b) and math.isfinite(rho)):
        raise InvalidParameterError(f"pcf_basis: b and rho must be finite, got {b!r}, {rho!r}")
    if abs(rho) > RHO_MAX:
        raise DomainError(
            f"pcf_basis: |rho|={abs(rho):.3g} exceeds {RHO_MAX:.3f}; use pcf_via_ode"
        )
    if rho == 0.0:
        return PcfBasis(1.0, 0.0, 0.0, 1.0)
    rho2 = rho * rho
    s = 0.5j * rho2
    a_even = 0.25 - 0.5j * b
    a_odd = 0.75 - 0.5j * b
    s0e, s1e = _kummer_sums(a_even, 0.5 + 0.0j, s)
    s0o, s1o = _kummer_sums(a_odd, 1.5 + 0.0j, s)
    phase = cmath.exp(-0.25j * rho2)
    ue = phase * s0e
    due = phase * (-0.5j * rho * s0e + (2.0 / rho) * s1e)
    uo = rho * phase * s0o
    duo = phase * ((1.0 - 0.5j * rho2) * s0o + 2.0 * s1o)
    return PcfBasis(
        _check_real("pcf_even", ue, b, rho),
        _check_real("pcf_even_deriv", due, b, rho),
        _check_real("pcf_odd", uo, b, rho),
        _check_real("pcf_odd_deriv", duo, b, rho),
    )


def pcf_even(b: float, rho: float) -> float:
    """Even standard-form solution u_e(rho); real by construction."""
    return pcf_basis(b, rho).u_even


def pcf_even_deriv(b: float, rho: float) -> float:
    """d u_e / d rho via the term-wise differentiated series."""
    return pcf_basis(b, rho).du_even


def pcf_odd(b: float, rho: float) -> float:
    """Odd standard-form solution u_o(rho) with u_o'(0) = 1."""
    return pcf_basis(b, rho).u_odd


def pcf_odd_deriv(b: float, rho: float) -> float:
    """d u_o / d rho via the term-wise differentiated series."""
    return pcf_basis(b, rho).du_odd


def pcf_via_ode(b: float, rho: float, parity: str = "even", step: float = 1e-4):
    """ODE fallback: integrate u'' + (rho^2/4 - b) u = 0 from the origin.

    Fixed-step fourth-order integration with the parity initial
    conditions (even: u=1, u'=0; odd: u=0, u'=1).  Valid for any rho;
    this is the same integrator the shooting oracle uses, exposed as a
    function so it can serve both as the large-|rho| fallback and as an
    independent check of the series path.  Returns (u, u').
    """
    if parity not in ("even", "odd"):
        raise InvalidParameterError(f"pcf_via_ode: parity must be 'even' or 'odd', got {parity!r}")
    if not (0.0 < step <= 1e-2):
        raise InvalidParameterError(f"pcf_via_ode: step must be in (0, 1e-2], got {step!r}")
    rho = float(rho)
    if rho == 0.0:
        return (1.0, 0.0) if parity == "even" else (0.0, 1.0)
    u0, du0 = (1.0, 0.0) if parity == "even" else (0.0, 1.0)
    n = max(1, int(math.ceil(abs(rho) / step)))
    return rk4_quadratic(0.25, 0.0, -b, 0.0, rho, n, u0, du0)


class AiryPair(NamedTuple):
    """Fundamental pair of w'' = t w with unit Wronskian."""

    u1: float
    du1: float
    u2: float
    du2: float


def airy_pair(t: float) -> AiryPair:
    """Maclaurin-series fundamental pair of the Airy-type equation w'' = t w.

    u1(0) = 1, u1'(0) = 0; u2(0) = 0, u2'(0) = 1.  Used by the
    non-relativistic comparison solver, where the linear well maps onto
    this equation exactly.  |t| <= T_MAX enforced.
    """
    t = float(t)
    if not math.isfinite(t):
        raise InvalidParameterError(f"airy_pair: t must be finite, got {t!r}")
    if abs(t) > T_MAX:
        raise DomainError(f"airy_pair: |t|={abs(t):.3g} exceeds {T_MAX}")
    if t == 0.0:
        return AiryPair(1.0, 0.0, 0.0, 1.0)
    t3 = t * t * t
    # term_1 runs over c_k t^{3k}, term_2 over d_k t^{3k+1}
    term1 = 1.0
    term2 = t
    u1, cu1 = term1, 0.0
    du1, cdu1 = 0.0, 0.0
    u2, cu2 = term2, 0.0
    du2, cdu2 = 1.0, 0.0
    stagnant = 0
    for k in range(_MAX_TERMS):
        term1 = term1 * t3 / ((3 * k + 2) * (3 * k + 3))
        term2 = term2 * t3 / ((3 * k + 3) * (3 * k + 4))
        kk = k + 1
        d1 = 3 * kk * term1 / t
        d2 = (3 * kk + 1) * term2 / t
        y = term1 - cu1
        s = u1 + y
        cu1 = (s - u1) - y
        u1 = s
        y = d1 - cdu1
        s = du1 + y
        cdu1 = (s - du1) - y
        du1 = s
        y = term2 - cu2
        s = u2 + y
        cu2 = (s - u2) - y
        u2 = s
        y = d2 - cdu2
        s = du2 + y
        cdu2 = (s - du2) - y
        du2 = s
        if not (math.isfinite(u1) and math.isfinite(u2)):
            raise AccuracyError(f"airy_pair: overflow at t={t!r}", partial=(u1, u2))
        if abs(term1) <= _SERIES_TOL * abs(u1) and abs(term2) <= _SERIES_TOL * abs(u2):
            stagnant += 1
            if stagnant >= _STAGNANT_NEEDED:
                break
        else:
            stagnant = 0
    else:
        raise AccuracyError(
            f"airy_pair: series not converged after {_MAX_TERMS} terms at t={t!r}",
            partial=(u1, u2),
        )
    return AiryPair(u1, du1, u2, du2)
