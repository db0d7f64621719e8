"""Shared numerical kernels.

Fixed-step classical fourth-order (Runge-Kutta) integration of linear
second-order equations psi'' + q(x) psi = 0, sign-change bracketing,
a bisection-safeguarded secant refiner, and a composite Simpson rule.
Everything here is pure and deterministic; the integrators accept
plain floats or numpy arrays and propagate whole parameter batches in
lockstep.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import AccuracyError


def rk4_quadratic(c2, c1, c0, x0: float, x1: float, n_steps: int, u0, du0):
    """Integrate u'' + (c2 x^2 + c1 x + c0) u = 0 from x0 to x1.

    Classical fixed-step RK4 on the first-order system (u, u').  The
    coefficients and initial values may be floats or equal-shaped numpy
    arrays; arrays integrate a batch of independent problems sharing the
    same x grid.  Returns (u, u') at x1.  x1 < x0 integrates backward.
    """
    h = (x1 - x0) / n_steps
    zero = (c2 + c1 + c0) * 0.0
    u = u0 + zero
    v = du0 + zero
    h2 = 0.5 * h
    h6 = h / 6.0
    for i in range(n_steps):
        x = x0 + i * h
        xm = x + h2
        xe = x + h
        qa = (c2 * x + c1) * x + c0
        qm = (c2 * xm + c1) * xm + c0
        qe = (c2 * xe + c1) * xe + c0
        k1u = v
        k1v = -(qa * u)
        u2 = u + h2 * k1u
        v2 = v + h2 * k1v
        k2u = v2
        k2v = -(qm * u2)
        u3 = u + h2 * k2u
        v3 = v + h2 * k2v
        k3u = v3
        k3v = -(qm * u3)
        u4 = u + h * k3u
        v4 = v + h * k3v
        k4u = v4
        k4v = -(qe * u4)
        u = u + h6 * (k1u + 2.0 * (k2u + k3u) + k4u)
        v = v + h6 * (k1v + 2.0 * (k2v + k3v) + k4v)
    return u, v


def rk4_general(qfun, x0: float, x1: float, n_steps: int, u0: float, du0: float):
    """Like rk4_quadratic but with an arbitrary scalar coefficient q(x)."""
    h = (x1 - x0) / n_steps
    u = float(u0)
    v = float(du0)
    h2 = 0.5 * h
    h6 = h / 6.0
    for i in range(n_steps):
        x = x0 + i * h
        qa = qfun(x)
        qm = qfun(x + h2)
        qe = qfun(x + h)
        k1u = v
        k1v = -(qa * u)
        u2 = u + h2 * k1u
        v2 = v + h2 * k1v
        k2u = v2
        k2v = -(qm * u2)
        u3 = u + h2 * k2u
        v3 = v + h2 * k2v
        k3u = v3
        k3v = -(qm * u3)
        u4 = u + h * k3u
        v4 = v + h * k3v
        k4u = v4
        k4v = -(qe * u4)
        u = u + h6 * (k1u + 2.0 * (k2u + k3u) + k4u)
        v = v + h6 * (k1v + 2.0 * (k2v + k3v) + k4v)
    return u, v


def rk4_quadratic_path(c2, c1, c0, xs, u0, du0, step: float):
    """Integrate through the monotone sequence xs, recording at each point.

    Each segment is subdivided so the local step never exceeds `step`,
    and the integration lands exactly on every requested point.  Returns
    (u values, u' values) as float arrays aligned with xs.
    """
    xs = np.asarray(xs, dtype=float)
    us = np.empty(xs.shape)
    vs = np.empty(xs.shape)
    u, v = float(u0), float(du0)
    us[0] = u
    vs[0] = v
    for i in range(len(xs) - 1):
        a, b = xs[i], xs[i + 1]
        if b != a:
            n = max(1, int(math.ceil(abs(b - a) / step)))
            u, v = rk4_quadratic(c2, c1, c0, a, b, n, u, v)
        us[i + 1] = u
        vs[i + 1] = v
    return us, vs


def scan_sign_changes(xs, fs):
    """Bracket the roots of a sampled function.

    Returns a list of (lo, hi, f_lo, f_hi).  An exact zero at a grid
    point yields a degenerate bracket (x, x, 0, 0); the neighbouring
    intervals then carry no sign product and are skipped automatically.
    """
    out = []
    for i, f in enumerate(fs):
        if not math.isfinite(f):
            raise AccuracyError(
                "scan: non-finite mismatch value at x=%r" % (xs[i],), partial=f
            )
        if f == 0.0:
            out.append((xs[i], xs[i], 0.0, 0.0))
    for i in range(len(fs) - 1):
        if fs[i] * fs[i + 1] < 0.0:
            out.append((xs[i], xs[i + 1], fs[i], fs[i + 1]))
    out.sort(key=lambda br: br[0])
    return out


def refine_root(f, lo, hi, f_lo, f_hi, tol, max_iter: int = 200):
    """Refine a bracketed root with a bisection-safeguarded secant.

    The sign-change bracket [lo, hi] is maintained throughout; a secant
    candidate is accepted only while it stays strictly inside the
    bracket and the bracket keeps shrinking, otherwise the step is a
    bisection (ties go to bisection).  Stops once the bracket is
    narrower than tol, or once the secant step is far below tol while
    |f| keeps decreasing.  Returns (x, f(x)) for the iterate with the
    smallest |f| seen.
    """
    if f_lo == 0.0:
        return lo, 0.0
    if f_hi == 0.0:
        return hi, 0.0
    if lo == hi:
        return lo, f_lo
    if (f_lo > 0.0) == (f_hi > 0.0):
        raise AccuracyError("refine_root: bracket does not straddle a sign change")
    a, fa, b, fb = lo, f_lo, hi, f_hi
    xp, fp = a, fa
    xc, fc = b, fb
    if abs(fa) <= abs(fb):
        best_x, best_f = a, fa
    else:
        best_x, best_f = b, fb
    # width of the bracket two iterations ago, to detect secant stalls
    w_old = [b - a, b - a]
    for it in range(max_iter):
        if b - a <= tol:
            break
        cand = None
        if fc != fp:
            cand = xc - fc * (xc - xp) / (fc - fp)
        shrinking = (b - a) < 0.5 * w_old[0]
        if cand is not None and a < cand < b and (shrinking or it < 2):
            x_new = cand
        else:
            x_new = 0.5 * (a + b)
        f_new = f(x_new)
        if not math.isfinite(f_new):
            raise AccuracyError("refine_root: non-finite value at x=%r" % (x_new,))
        if abs(f_new) < abs(best_f):
            best_x, best_f = x_new, f_new
        if f_new == 0.0:
            return x_new, 0.0
        if (f_new > 0.0) == (fa > 0.0):
            a, fa = x_new, f_new
        else:
            b, fb = x_new, f_new
        step_len = abs(x_new - xc)
        xp, fp = xc, fc
        xc, fc = x_new, f_new
        w_old = [w_old[1], b - a]
        if step_len <= 0.05 * tol and abs(f_new) <= abs(fp):
            break
    return best_x, best_f


def simpson_uniform(vals, dx: float) -> float:
    """Composite Simpson rule on a uniform grid with an even panel count."""
    vals = np.asarray(vals, dtype=float)
    n = len(vals) - 1
    if n < 2 or n % 2 != 0:
        raise ValueError("simpson_uniform needs an odd number of points (even panels)")
    w = np.ones(len(vals))
    w[1:-1:2] = 4.0
    w[2:-1:2] = 2.0
    return float(np.dot(w, vals) * dx / 3.0)
