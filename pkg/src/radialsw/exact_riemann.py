"""Classification of pseudo-Riemann data and exact global plan construction.

Cases: both sides vacuum; one-sided vacuum bounded by a degenerate shock;
a contact (equal velocities); a vacuum fan (u_l < u_r, the regions
separate); a delta shock carried by a shadow-wave front (u_l > u_r).
The shadow front moves at the physical constant speed v0 until it either
absorbs the whole interior region (u_l > 0, time t_in) or reaches the
origin; afterwards the closed post-absorption form takes over until the
front dumps its mass into the origin point mass at t_sw0.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from scipy.optimize import brentq

from .core import (
    ALL_VACUUM, CASE_CONTACT, CONTACT, DELTA_SHOCK, SHADOW_WAVE, SHOCK,
    VACUUM_EDGE, VACUUM_FAN, VACUUM_LEFT_SHOCK, VACUUM_RIGHT_SHOCK,
    Atom, CaseTag, DegenerateDataError, DomainError, LinearFront,
    OutOfPhaseError, Phase, PlanRangeError, PreconditionError,
    PseudoRiemannData, RegionProfile, SolutionSample, WavePlan,
    region_profile_at, surface_area,
)

INF = math.inf

# evaluate() reports the front atom within this relative distance of xi
ATOM_POSITION_RTOL = 1e-9


# ---------------------------------------------------------------------------
# Front paths with closed-form mass

@dataclass(frozen=True)
class ConstSpeedSW:
    """Shadow front at xi = R + v0 t with sigma from variation of constants:
    sigma(t) = t sqrt(rho_l rho_r) (u_l - u_r) xi^{1-n}."""
    kind = SHADOW_WAVE
    R: float
    v0: float
    amp: float  # sqrt(rho_l rho_r) (u_l - u_r)
    n: int

    def xi(self, t):
        return self.R + self.v0 * t

    def speed(self, t):
        return self.v0

    def sigma(self, t):
        return self.amp * t * self.xi(t) ** (1 - self.n)

    def state(self, t):
        from .core import FrontState
        return FrontState(SHADOW_WAVE, self.xi(t), self.v0, self.sigma(t))


@dataclass(frozen=True)
class PostAbsorptionSW:
    """Shadow front after the interior region is absorbed (rho0 = 0):
    xi(t) = u_r t + E + (2/C) sqrt(Ct+D), sigma = (2 rho_r/C) sqrt(Ct+D) xi^{1-n}."""
    kind = SHADOW_WAVE
    u_r: float
    C: float
    D: float
    E: float
    rho_r: float
    n: int

    def xi(self, t):
        return self.u_r * t + self.E + (2.0 / self.C) * math.sqrt(self.C * t + self.D)

    def speed(self, t):
        return self.u_r + 1.0 / math.sqrt(self.C * t + self.D)

    def accel(self, t):
        return -0.5 * self.C * (self.C * t + self.D) ** -1.5

    def sigma(self, t):
        s = math.sqrt(self.C * t + self.D)
        return (2.0 * self.rho_r / self.C) * s * self.xi(t) ** (1 - self.n)

    def front_mass_coeff(self, t):
        """sigma * xi^{n-1}, the lineal mass per unit sphere area coefficient."""
        return (2.0 * self.rho_r / self.C) * math.sqrt(self.C * t + self.D)

    def state(self, t):
        from .core import FrontState
        return FrontState(SHADOW_WAVE, self.xi(t), self.speed(t), self.sigma(t))


@dataclass(frozen=True)
class PostAbsorptionConstants:
    C: float
    D: float
    E: float


# ---------------------------------------------------------------------------
# Classification and constant-speed closed forms

def classify(data: PseudoRiemannData) -> CaseTag:
    """Unique case tag of the datum with event flags."""
    rl, rr, ul, ur = data.rho_l, data.rho_r, data.u_l, data.u_r
    if rl == 0.0 and rr == 0.0:
        return CaseTag(ALL_VACUUM)
    if rl == 0.0:
        return CaseTag(VACUUM_LEFT_SHOCK, hits_origin=ur < 0)
    if rr == 0.0:
        return CaseTag(VACUUM_RIGHT_SHOCK, hits_origin=ul < 0,
                       left_drains=ul < 0)
    if ul > ur:
        return CaseTag(DELTA_SHOCK,
                       has_absorption=ul > 0,
                       hits_origin=(ul <= 0) or (ur < 0),
                       left_drains=ul < 0)
    if ul < ur:
        return CaseTag(VACUUM_FAN, hits_origin=ul < 0, left_drains=ul < 0)
    return CaseTag(CASE_CONTACT, hits_origin=ul < 0, left_drains=ul < 0)


def first_root_speed(rho0: float, u0: float, rho1: float, u1: float) -> float:
    """Physical constant front speed 1v0 = (u1 sqrt(rho1) + u0 sqrt(rho0)) /
    (sqrt(rho1) + sqrt(rho0)); a convex combination of u0 and u1."""
    if rho0 < 0 or rho1 < 0:
        raise DomainError("densities must be >= 0")
    if rho0 == 0.0 and rho1 == 0.0:
        raise DegenerateDataError("both densities vanish; no front speed")
    a, b = math.sqrt(rho0), math.sqrt(rho1)
    return (u1 * b + u0 * a) / (a + b)


def second_root_speed(rho0: float, u0: float, rho1: float, u1: float) -> Optional[float]:
    """Rejected second root 2v0 = (u1 sqrt(rho1) - u0 sqrt(rho0)) /
    (sqrt(rho1) - sqrt(rho0)); None when rho0 = rho1 (single root)."""
    if rho0 < 0 or rho1 < 0:
        raise DomainError("densities must be >= 0")
    if rho0 == rho1:
        return None
    a, b = math.sqrt(rho0), math.sqrt(rho1)
    return (u1 * b - u0 * a) / (b - a)


def _require_delta_shock(data: PseudoRiemannData) -> None:
    if classify(data).kind != DELTA_SHOCK:
        raise PreconditionError("datum is not a delta shock case")


def _const_front(data: PseudoRiemannData) -> ConstSpeedSW:
    v0 = first_root_speed(data.rho_l, data.u_l, data.rho_r, data.u_r)
    amp = math.sqrt(data.rho_l * data.rho_r) * (data.u_l - data.u_r)
    return ConstSpeedSW(data.R, v0, amp, data.n)


def sigma_const(data: PseudoRiemannData, t: float) -> float:
    """Lineal front mass of the constant-speed shadow wave,
    sigma(t) = t sqrt(rho_l rho_r) (u_l - u_r) (R + v0 t)^{1-n}."""
    _require_delta_shock(data)
    if t < 0:
        raise OutOfPhaseError("negative time")
    t_in = absorption_time(data)
    if t_in is not None and t > t_in * (1 + 1e-12):
        raise OutOfPhaseError("t=%g beyond absorption time %g" % (t, t_in))
    return _const_front(data).sigma(t)


def absorption_time(data: PseudoRiemannData) -> Optional[float]:
    """Time the interior vacuum edge catches the front, exhausting the left
    region: t_in = R (sqrt(rho_r)+sqrt(rho_l))/(sqrt(rho_r)(u_l-u_r)).
    None when u_l <= 0 (the interior drains at the origin instead)."""
    _require_delta_shock(data)
    if data.u_l <= 0:
        return None
    a, b = math.sqrt(data.rho_l), math.sqrt(data.rho_r)
    return data.R * (b + a) / (b * (data.u_l - data.u_r))


def _post_front(data: PseudoRiemannData) -> PostAbsorptionSW:
    C = 2.0 * data.rho_r / (data.R * data.rho_l * (data.u_l - data.u_r))
    D = (data.rho_l - data.rho_r) / (data.rho_l * (data.u_l - data.u_r) ** 2)
    E = (data.R / data.rho_r) * (data.rho_r - data.rho_l)
    return PostAbsorptionSW(data.u_r, C, D, E, data.rho_r, data.n)


def post_absorption(data: PseudoRiemannData):
    """Constants and closed forms for the front after full absorption.

    Returns (PostAbsorptionConstants, xi, sigma) with xi, sigma callables
    of time, valid on [t_in, t_sw0).  xi, xi-dot and the total front mass
    |S^{n-1}| xi^{n-1} sigma are continuous at t_in.
    """
    if absorption_time(data) is None:
        raise PreconditionError("datum has no finite absorption time")
    f = _post_front(data)
    return PostAbsorptionConstants(f.C, f.D, f.E), f.xi, f.sigma


def origin_hit_time(data: PseudoRiemannData) -> Optional[float]:
    """Time the shadow front reaches r = 0, if ever.

    u_l <= 0: the constant-speed front arrives at -R/v0.  u_l > 0 with
    u_r < 0: smallest root t > t_in of xi(t) = 0 via the quadratic in
    s = sqrt(Ct+D); bisection fallback guards against cancellation.
    """
    _require_delta_shock(data)
    if data.u_l <= 0:
        v0 = first_root_speed(data.rho_l, data.u_l, data.rho_r, data.u_r)
        if v0 >= 0:
            return None
        t = -data.R / v0
        return t if math.isfinite(t) else None
    if data.u_r >= 0:
        return None
    f = _post_front(data)
    ur, C, D, E = data.u_r, f.C, f.D, f.E
    # u_r s^2 + 2 s + (EC - u_r D) = 0; positive branch since u_r < 0
    disc = 1.0 - ur * (E * C - ur * D)
    t_in = absorption_time(data)
    t = None
    if disc >= 0.0:
        s = (1.0 + math.sqrt(disc)) / (-ur)
        cand = (s * s - D) / C if math.isfinite(s) else math.inf
        if math.isfinite(cand) and cand > t_in and abs(f.xi(cand)) <= 1e-9 * data.R:
            t = cand
    if t is None:
        # expand a bracket past the turning point of xi and bisect; a hit
        # beyond float range (u_r subnormal) counts as "never"
        g = ur * ur
        if g == 0.0:
            return None
        lo = max(t_in, (1.0 / g - D) / C)
        if not math.isfinite(lo):
            return None
        hi = lo + max(1.0, data.R / -ur)
        while math.isfinite(hi) and f.xi(hi) > 0:
            hi *= 2.0
        if not math.isfinite(hi):
            return None
        t = brentq(f.xi, lo, hi, xtol=1e-12 * data.R)
    return t


def origin_mass(plan: WavePlan, t: float) -> float:
    """Origin point mass m0(t): the running integral of the inflow flux
    |S^{n-1}| lim r^{n-1} rho (-u)_+ plus the front dump at t_sw0,
    assembled per phase in the plan."""
    if t < 0:
        raise DomainError("negative time")
    return plan.m0(t)


# ---------------------------------------------------------------------------
# Plan assembly

def _ledger_slopes(inner: RegionProfile, S: float):
    """m0 and p0 rates while `inner` is the region adjacent to the origin."""
    if inner.is_vacuum or inner.coeff == 0.0:
        return 0.0, 0.0
    u = inner.velocity
    m0_slope = S * inner.coeff * max(0.0, -u)
    p0_slope = -S * inner.coeff * u * u if u != 0.0 else 0.0
    return m0_slope, p0_slope


def _chain_phases(pieces, S, jumps=None):
    """Build phases with continuous ledgers; `pieces` holds
    (t_start, t_end, fronts, regions); `jumps` maps phase index ->
    (m0_jump, p0_jump) applied at the start of that phase."""
    phases = []
    m0, p0 = 0.0, 0.0
    for k, (t0, t1, fronts, regions) in enumerate(pieces):
        if jumps and k in jumps:
            dm, dp = jumps[k]
            m0 += dm
            p0 += dp
        m0s, p0s = _ledger_slopes(regions[0], S)
        phases.append(Phase(t0, t1, tuple(fronts), tuple(regions),
                            m0_start=m0, m0_slope=m0s,
                            p0_start=p0, p0_slope=p0s))
        if math.isfinite(t1):
            m0 += m0s * (t1 - t0)
            p0 += p0s * (t1 - t0)
    return tuple(phases)


def solve(data: PseudoRiemannData, t_max: float) -> WavePlan:
    """Exact global plan for the datum; phases partition [0, inf)
    structurally, t_max gates sampling via evaluate()."""
    if not (t_max > 0):
        raise DomainError("t_max must be positive")
    tag = classify(data)
    n, R = data.n, data.R
    S = surface_area(n)
    left = RegionProfile.power_law(data.rho_l, data.u_l)
    right = RegionProfile.power_law(data.rho_r, data.u_r)
    vac = RegionProfile.vacuum()
    events: dict = {}
    pieces = []
    jumps = {}

    if tag.kind == ALL_VACUUM:
        pieces.append((0.0, INF, (), (vac,)))

    elif tag.kind == VACUUM_LEFT_SHOCK:
        shock = LinearFront(SHOCK, R, data.u_r)
        if data.u_r < 0:
            tc = -R / data.u_r
            events["t_vacuum_close"] = tc
            pieces.append((0.0, tc, (shock,), (vac, right)))
            pieces.append((tc, INF, (), (right,)))
        else:
            pieces.append((0.0, INF, (shock,), (vac, right)))

    elif tag.kind == VACUUM_RIGHT_SHOCK:
        shock = LinearFront(SHOCK, R, data.u_l)
        if data.u_l > 0:
            edge = LinearFront(VACUUM_EDGE, 0.0, data.u_l)
            pieces.append((0.0, INF, (edge, shock), (vac, left, vac)))
        elif data.u_l == 0:
            pieces.append((0.0, INF, (shock,), (left, vac)))
        else:
            tc = -R / data.u_l
            events["t_origin_left"] = tc
            pieces.append((0.0, tc, (shock,), (left, vac)))
            pieces.append((tc, INF, (), (vac,)))

    elif tag.kind == CASE_CONTACT:
        u = data.u_l
        front = LinearFront(CONTACT, R, u)
        if u > 0:
            edge = LinearFront(VACUUM_EDGE, 0.0, u)
            pieces.append((0.0, INF, (edge, front), (vac, left, right)))
        elif u == 0:
            pieces.append((0.0, INF, (front,), (left, right)))
        else:
            tc = -R / u
            events["t_origin_left"] = tc
            pieces.append((0.0, tc, (front,), (left, right)))
            pieces.append((tc, INF, (), (right,)))

    elif tag.kind == VACUUM_FAN:
        inner = LinearFront(VACUUM_EDGE, R, data.u_l)
        outer = LinearFront(VACUUM_EDGE, R, data.u_r)
        if data.u_l > 0:
            oedge = LinearFront(VACUUM_EDGE, 0.0, data.u_l)
            pieces.append((0.0, INF, (oedge, inner, outer),
                           (vac, left, vac, right)))
        elif data.u_l == 0:
            pieces.append((0.0, INF, (inner, outer), (left, vac, right)))
        else:
            tl = -R / data.u_l
            events["t_origin_left"] = tl
            pieces.append((0.0, tl, (inner, outer), (left, vac, right)))
            if data.u_r < 0:
                tr = -R / data.u_r
                events["t_vacuum_close"] = tr
                pieces.append((tl, tr, (outer,), (vac, right)))
                pieces.append((tr, INF, (), (right,)))
            else:
                pieces.append((tl, INF, (outer,), (vac, right)))

    else:  # DELTA_SHOCK
        sw = _const_front(data)
        if data.u_l > 0:
            t_in = absorption_time(data)
            if not math.isfinite(t_in):
                # u_l - u_r below float resolution: absorption never resolves
                edge = LinearFront(VACUUM_EDGE, 0.0, data.u_l)
                pieces.append((0.0, INF, (edge, sw), (vac, left, right)))
            else:
                events["t_in"] = t_in
                edge = LinearFront(VACUUM_EDGE, 0.0, data.u_l)
                pieces.append((0.0, t_in, (edge, sw), (vac, left, right)))
                post = _post_front(data)
                t_sw0 = origin_hit_time(data)
                if t_sw0 is None:
                    pieces.append((t_in, INF, (post,), (vac, right)))
                else:
                    events["t_sw0"] = t_sw0
                    pieces.append((t_in, t_sw0, (post,), (vac, right)))
                    pieces.append((t_sw0, INF, (), (right,)))
                    dm = S * post.front_mass_coeff(t_sw0)
                    jumps[2] = (dm, dm * post.speed(t_sw0))
        else:
            t_sw0 = origin_hit_time(data)
            if t_sw0 is None:
                pieces.append((0.0, INF, (sw,), (left, right)))
            else:
                events["t_sw0"] = t_sw0
                pieces.append((0.0, t_sw0, (sw,), (left, right)))
                pieces.append((t_sw0, INF, (), (right,)))
                dm = S * sw.amp * t_sw0  # lim sigma xi^{n-1} = amp * t
                jumps[1] = (dm, dm * sw.v0)

    plan = WavePlan(data=data, case=tag,
                    phases=_chain_phases(pieces, S, jumps),
                    events=events, t_max=float(t_max))
    return plan


# ---------------------------------------------------------------------------
# Sampling

def _vacuum_velocity(phase, idx, r, t):
    """Sampling convenience inside vacuum: linear interpolation between the
    bounding front speeds, the origin anchored at (position 0, speed 0)."""
    if idx == 0:
        x0, v0 = 0.0, 0.0
    else:
        f = phase.fronts[idx - 1]
        x0, v0 = f.xi(t), f.speed(t)
    if idx == len(phase.fronts):
        return v0 if idx > 0 else 0.0
    f = phase.fronts[idx]
    x1, v1 = f.xi(t), f.speed(t)
    if x1 <= x0:
        return v1
    return v0 + (v1 - v0) * (r - x0) / (x1 - x0)


def evaluate(plan: WavePlan, r: float, t: float) -> SolutionSample:
    """Sample the plan at (r, t): regular fields, origin mass, and the front
    atom when r lies within tolerance of a shadow front."""
    if r < 0:
        raise DomainError("negative radius")
    if t < 0 or t > plan.t_max:
        raise PlanRangeError("t=%r outside [0, t_max=%r]" % (t, plan.t_max))
    phase = plan.phase_at(t)
    n = plan.data.n
    S = surface_area(n)

    atom = None
    for f in phase.fronts:
        if f.kind == SHADOW_WAVE:
            x = f.xi(t)
            if abs(r - x) < ATOM_POSITION_RTOL * max(plan.data.R, x):
                sg = f.sigma(t)
                atom = Atom(x, sg, S * x ** (n - 1) * sg)
                break

    idx = 0
    for f in phase.fronts:
        if r >= f.xi(t):
            idx += 1
    prof = phase.regions[idx]
    if prof.is_vacuum:
        rho = 0.0
        u = _vacuum_velocity(phase, idx, r, t)
        vacuum = True
    else:
        rho = prof.coeff * r ** (1 - n) if r > 0 else (prof.coeff if n == 1 else INF)
        u = prof.velocity
        vacuum = False
    return SolutionSample(r=r, t=t, rho=rho, u=u, is_vacuum=vacuum,
                          m0=phase.m0(t), atom=atom)
