"""Admissibility and consistency checks.

Covers the dissipation (entropy) cubic, overcompressibility, exclusion of
the second constant-speed root, conserved totals Q and M on a truncated
domain, degenerate Rankine-Hugoniot speeds, and eps -> 0 weak-form
residuals of the mollified families computed by composite Gauss-Legendre
quadrature with panels split at every moving discontinuity.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Optional, Sequence

import numpy as np
from scipy.optimize import brentq

from .core import (
    ConservedPair, DomainError, EpsFamily, SHADOW_WAVE, UnsupportedRegionError,
    WavePlan, jump_brackets, surface_area,
)
from .exact_riemann import PostAbsorptionSW, second_root_speed

_GL_X, _GL_W = np.polynomial.legendre.leggauss(16)

QUAD_TOL = 1e-10           # absolute quadrature target per residual
ORDER_FIT_FLOOR = 10 * QUAD_TOL


# ---------------------------------------------------------------------------
# Pointwise admissibility

def entropy_lhs(rho0: float, u0: float, rho1: float, u1: float, cdot: float) -> float:
    """Dissipation cubic -cdot^3 [rho] + 3 cdot^2 [rho u] - 3 cdot [rho u^2]
    + [rho u^3]; the front is dissipative iff the value is <= 0."""
    br, bru, bru2, bru3 = jump_brackets(rho0, u0, rho1, u1)
    return -cdot ** 3 * br + 3 * cdot ** 2 * bru - 3 * cdot * bru2 + bru3


def is_overcompressive(u0: float, v: float, u1: float) -> bool:
    """Characteristics on both sides must run into the front: u0 >= v >= u1."""
    return u0 >= v >= u1


def second_root_excluded(rho0: float, u0: float, rho1: float, u1: float) -> bool:
    """The second constant-speed root lies strictly outside
    [min(u0,u1), max(u0,u1)] for every admissible datum."""
    if not (rho0 > 0 and rho1 > 0):
        raise DomainError("both densities must be positive")
    if rho0 == rho1 or u0 == u1:
        raise DomainError("second root undefined or coincident")
    v2 = second_root_speed(rho0, u0, rho1, u1)
    return v2 < min(u0, u1) or v2 > max(u0, u1)


def rankine_hugoniot_degenerate(rho0: float, u0: float, rho1: float, u1: float) -> Optional[float]:
    """Speed of a zero-strength front (kappa1 = kappa2 = 0): u1 if the left
    state is vacuum, u0 if the right is, the common velocity for a contact;
    None when no such speed exists (or every speed works, both vacuum)."""
    if rho0 < 0 or rho1 < 0:
        raise DomainError("densities must be >= 0")
    if rho0 == 0.0 and rho1 == 0.0:
        return None
    if rho0 == 0.0:
        return u1
    if rho1 == 0.0:
        return u0
    if u0 == u1:
        return u0
    return None


# ---------------------------------------------------------------------------
# Conserved totals on (0, r_max]

def _phase_geometry(plan: WavePlan, t: float, r_max: float):
    ph = plan.phase_at(t)
    pos = [f.xi(t) for f in ph.fronts]
    if any(x > r_max for x in pos):
        raise DomainError("a front lies beyond r_max=%g at t=%g" % (r_max, t))
    bounds = [0.0] + pos + [r_max]
    return ph, bounds


def total_mass(plan: WavePlan, t: float, r_max: float,
               boundary_correction: bool = True) -> float:
    """Q(t) = m0 + regular power-law integrals + shadow-front atoms,
    plus the constant outflow through r_max when enabled."""
    ph, bounds = _phase_geometry(plan, t, r_max)
    n = plan.data.n
    S = surface_area(n)
    Q = ph.m0(t)
    for reg, a, b in zip(ph.regions, bounds[:-1], bounds[1:]):
        if not reg.is_vacuum:
            Q += S * reg.coeff * (b - a)
    for f in ph.fronts:
        if f.kind == SHADOW_WAVE:
            Q += S * f.xi(t) ** (n - 1) * f.sigma(t)
    if boundary_correction:
        out = ph.regions[-1]
        if not out.is_vacuum:
            Q += S * out.coeff * out.velocity * t
    return Q


def total_momentum(plan: WavePlan, t: float, r_max: float,
                   boundary_correction: bool = True) -> float:
    """M(t) = origin momentum tally + regular momentum + atom momentum,
    plus the constant momentum outflow through r_max when enabled."""
    ph, bounds = _phase_geometry(plan, t, r_max)
    n = plan.data.n
    S = surface_area(n)
    M = ph.p0(t)
    for reg, a, b in zip(ph.regions, bounds[:-1], bounds[1:]):
        if not reg.is_vacuum:
            M += S * reg.coeff * reg.velocity * (b - a)
    for f in ph.fronts:
        if f.kind == SHADOW_WAVE:
            M += S * f.xi(t) ** (n - 1) * f.sigma(t) * f.speed(t)
    if boundary_correction:
        out = ph.regions[-1]
        if not out.is_vacuum:
            M += S * out.coeff * out.velocity ** 2 * t
    return M


def conserved_pair(plan: WavePlan, t: float, r_max: float) -> ConservedPair:
    return ConservedPair(total_mass(plan, t, r_max),
                         total_momentum(plan, t, r_max))


# ---------------------------------------------------------------------------
# Test functions and quadrature

@dataclass(frozen=True)
class TestFunction:
    """Compact C^3 bump ((1-X^2)(1-T^2))^4 on the box
    [r_c - h_r, r_c + h_r] x [t_c - h_t, t_c + h_t], zero outside."""
    r_c: float
    t_c: float
    h_r: float
    h_t: float

    def __post_init__(self):
        if not (self.h_r > 0 and self.h_t > 0):
            raise DomainError("half-widths must be positive")
        if self.r_c - self.h_r <= 0:
            raise UnsupportedRegionError("support must stay inside r > 0")
        if self.t_c - self.h_t < 0:
            raise UnsupportedRegionError("support must stay inside t >= 0")

    @property
    def r_lo(self):
        return self.r_c - self.h_r

    @property
    def r_hi(self):
        return self.r_c + self.h_r

    @property
    def t_lo(self):
        return self.t_c - self.h_t

    @property
    def t_hi(self):
        return self.t_c + self.h_t

    def _xt(self, r, t):
        X = (np.asarray(r) - self.r_c) / self.h_r
        T = (np.asarray(t) - self.t_c) / self.h_t
        inside = (np.abs(X) < 1.0) & (np.abs(T) < 1.0)
        return X, T, inside

    def value(self, r, t):
        X, T, inside = self._xt(r, t)
        out = np.where(inside, ((1 - X ** 2) * (1 - T ** 2)) ** 4, 0.0)
        return out

    def dr(self, r, t):
        X, T, inside = self._xt(r, t)
        out = np.where(inside,
                       -8.0 * X * (1 - X ** 2) ** 3 * (1 - T ** 2) ** 4 / self.h_r,
                       0.0)
        return out

    def dt(self, r, t):
        X, T, inside = self._xt(r, t)
        out = np.where(inside,
                       -8.0 * T * (1 - T ** 2) ** 3 * (1 - X ** 2) ** 4 / self.h_t,
                       0.0)
        return out


def gl_panel(f, a: float, b: float) -> float:
    """16-node Gauss-Legendre integral of vectorized f over [a, b]."""
    mid = 0.5 * (a + b)
    half = 0.5 * (b - a)
    return half * float(np.dot(f(mid + half * _GL_X), _GL_W))


def composite_gl(f, breaks: Sequence[float]) -> float:
    """Composite 16-node rule over consecutive panels of `breaks`."""
    total = 0.0
    for a, b in zip(breaks[:-1], breaks[1:]):
        if b - a > 1e-14:
            total += gl_panel(f, a, b)
    return total


# ---------------------------------------------------------------------------
# Weak residuals of the mollified family

_MOMENT_POWER = {"mass": 0, "momentum": 1, "entropy": 2}


def _phase_curves(phase, eps):
    """Discontinuity curves of the eps-realized family within one phase."""
    curves = []
    for f in phase.fronts:
        if f.kind == SHADOW_WAVE:
            curves.append(lambda t, f=f: f.xi(t) - 0.5 * eps)
            curves.append(lambda t, f=f: f.xi(t) + 0.5 * eps)
        else:
            curves.append(lambda t, f=f: f.xi(t))
    return curves


def _scan_roots(fun, lo: float, hi: float, pts):
    """Roots of fun on [lo, hi] by sign scan + brentq refinement."""
    if hi - lo < 1e-13:
        return
    grid = np.linspace(lo, hi, 129)
    vals = np.array([fun(t) for t in grid])
    for k in range(len(grid) - 1):
        va, vb = vals[k], vals[k + 1]
        if va == 0.0:
            pts.add(grid[k])
        elif va * vb < 0.0:
            pts.add(brentq(fun, grid[k], grid[k + 1], xtol=1e-13))
    if vals[-1] == 0.0:
        pts.add(hi)


def _time_breakpoints(plan: WavePlan, eps: float, phi: TestFunction):
    pts = {phi.t_lo, phi.t_hi}
    for ph in plan.phases:
        lo = max(ph.t_start, phi.t_lo)
        hi = min(ph.t_end, phi.t_hi)
        if hi <= lo:
            continue
        for e in (ph.t_start, ph.t_end):
            if phi.t_lo < e < phi.t_hi:
                pts.add(e)
        curves = _phase_curves(ph, eps)
        for c in curves:
            for target in (phi.r_lo, phi.r_hi):
                _scan_roots(lambda t, c=c: c(t) - target, lo, hi, pts)
        for ca, cb in combinations(curves, 2):
            _scan_roots(lambda t: ca(t) - cb(t), lo, hi, pts)
        for f in ph.fronts:
            if isinstance(f, PostAbsorptionSW) and f.u_r < 0:
                t_turn = (f.u_r ** -2 - f.D) / f.C
                if lo < t_turn < hi:
                    pts.add(t_turn)
    return sorted(pts)


def _inner_integral(plan: WavePlan, eps: float, phi: TestFunction,
                    power: int, t: float) -> float:
    ph = plan.phase_at(t)
    n = plan.data.n
    g = n - 1
    strips = []
    breaks = {phi.r_lo, phi.r_hi}
    for f in ph.fronts:
        x = f.xi(t)
        if f.kind == SHADOW_WAVE:
            strips.append((x - 0.5 * eps, x + 0.5 * eps,
                           f.sigma(t) / eps, f.speed(t)))
            edges = (x - 0.5 * eps, x + 0.5 * eps)
        else:
            edges = (x,)
        for e in edges:
            if phi.r_lo < e < phi.r_hi:
                breaks.add(e)
    breaks = sorted(breaks)

    acc = 0.0
    for a, b in zip(breaks[:-1], breaks[1:]):
        if b - a < 1e-14:
            continue
        rmid = 0.5 * (a + b)
        rho_const = None
        u = 0.0
        for s_lo, s_hi, s_rho, s_u in strips:
            if s_lo <= rmid <= s_hi:
                rho_const, u = s_rho, s_u
                break
        half = 0.5 * (b - a)
        rr = rmid + half * _GL_X
        if rho_const is not None:
            rho = rho_const
        else:
            idx = 0
            for f in ph.fronts:
                if rmid >= f.xi(t):
                    idx += 1
            reg = ph.regions[idx]
            if reg.is_vacuum or reg.coeff == 0.0:
                continue
            rho = reg.coeff * rr ** (1 - n)
            u = reg.velocity
        a_m = rho * u ** power
        b_m = rho * u ** (power + 1)
        vals = a_m * phi.dt(rr, t) + b_m * phi.dr(rr, t)
        if g:
            vals = vals - g * b_m * phi.value(rr, t) / rr
        acc += half * float(np.dot(vals, _GL_W))
    return acc


def weak_residual(plan: WavePlan, eps: float, phi: TestFunction,
                  which: str) -> float:
    """Weak-form residual of the eps-realized family against phi.

    mass / momentum: the weak integral that vanishes in the eps -> 0 limit
    for valid shadow waves.  entropy: the distributional pairing of
    d_t(rho u^2) + d_r(rho u^3) + (n-1) rho u^3 / r with phi, whose limit
    is <= 0 exactly when the wave is dissipative (phi >= 0).
    """
    if which not in _MOMENT_POWER:
        raise DomainError("unknown equation %r" % (which,))
    power = _MOMENT_POWER[which]
    tb = _time_breakpoints(plan, eps, phi)
    total = 0.0
    for a, b in zip(tb[:-1], tb[1:]):
        if b - a < 1e-13:
            continue
        mid = 0.5 * (a + b)
        half = 0.5 * (b - a)
        for xk, wk in zip(_GL_X, _GL_W):
            t = mid + half * xk
            total += half * wk * _inner_integral(plan, eps, phi, power, t)
    return -total if which == "entropy" else total


@dataclass(frozen=True)
class ResidualReport:
    """Residuals and fitted convergence order over an eps ladder."""
    eps: tuple
    residuals: dict
    order: dict


def fit_order(eps: Sequence[float], residuals: Sequence[float],
              floor: float = ORDER_FIT_FLOOR) -> float:
    """Least-squares slope of log|residual| vs log eps, discarding values
    below the quadrature noise floor; nan when fewer than 3 points remain."""
    ee, rr = [], []
    for e, r in zip(eps, residuals):
        if abs(r) >= floor:
            ee.append(math.log(e))
            rr.append(math.log(abs(r)))
    if len(ee) < 3:
        return math.nan
    return float(np.polyfit(ee, rr, 1)[0])


def residual_ladder(plan: WavePlan, phi: TestFunction,
                    which: Iterable[str] = ("mass", "momentum"),
                    eps0: float = 1e-2, halvings: int = 6) -> ResidualReport:
    """Weak residuals over the ladder eps0, eps0/2, ..., eps0/2^halvings
    with fitted convergence order per equation."""
    ladder = tuple(eps0 * 0.5 ** k for k in range(halvings + 1))
    residuals = {}
    order = {}
    for eq in which:
        res = tuple(weak_residual(plan, e, phi, eq) for e in ladder)
        residuals[eq] = res
        order[eq] = fit_order(ladder, res)
    return ResidualReport(eps=ladder, residuals=residuals, order=order)


def default_test_function(plan: WavePlan,
                          max_eps: float = 1e-2) -> Optional[TestFunction]:
    """Bump centered on the first delta front away from the origin and the
    phase edges; None when the plan carries no such front."""
    for ph in plan.phases:
        t_hi = ph.t_end if math.isfinite(ph.t_end) else plan.t_max
        t_hi = min(t_hi, plan.t_max)
        width = t_hi - ph.t_start
        if width <= 0:
            continue
        for k, fr in enumerate(ph.fronts):
            if fr.kind != SHADOW_WAVE:
                continue
            t_c = ph.t_start + 0.4 * width
            h_t = 0.3 * width
            r_c = fr.xi(t_c)
            h_r = 0.3 * min(r_c, plan.data.R)
            # keep the support off the origin even with the widest strip
            if r_c - h_r - max_eps <= 0:
                h_r = 0.5 * (r_c - max_eps)
            if h_r <= 0 or t_c - h_t < 0:
                continue
            return TestFunction(r_c=r_c, t_c=t_c, h_r=h_r, h_t=h_t)
    return None
