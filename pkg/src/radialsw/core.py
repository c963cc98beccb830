"""Domain types for the radially symmetric pressureless Euler toolkit.

The system under study is

    d_t rho   + d_r(rho u)   + (n-1)/r * rho u   = 0
    d_t(rho u)+ d_r(rho u^2) + (n-1)/r * rho u^2 = 0

on r > 0, with initial data proportional to r^{1-n} on either side of a
single jump at radius R ("pseudo-Riemann data").  Densities are stored as
coefficients of r^{1-n} throughout; pointwise values are computed on
demand.  All types here are immutable after construction and safe to share
across workers.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Protocol, Sequence


# ---------------------------------------------------------------------------
# Errors

class RadialSWError(Exception):
    """Base class for all toolkit errors."""


class DomainError(RadialSWError, ValueError):
    """Input outside the documented domain of an operation."""


class DegenerateDataError(DomainError):
    """Both densities vanish where at least one is required."""


class OutOfPhaseError(RadialSWError):
    """Time outside the validity window of a closed form."""


class PreconditionError(RadialSWError):
    """Operation called on data that fails its precondition."""


class PlanRangeError(RadialSWError):
    """Sample time beyond the plan horizon."""


class SingularStartError(RadialSWError):
    """Front ODE started at sigma = 0 with inconsistent speed."""


class SingularTrajectoryError(RadialSWError):
    """Strip mass hit zero mid-trajectory with incompatible fluxes."""


class UnsupportedRegionError(RadialSWError):
    """Test-function support touches r = 0 or t = 0."""


class ConfigError(RadialSWError):
    """Malformed scenario configuration."""


# ---------------------------------------------------------------------------
# Front kinds / case kinds (plain strings keep serialization trivial)

SHADOW_WAVE = "ShadowWave"
SHOCK = "Shock"
CONTACT = "Contact"
VACUUM_EDGE = "VacuumEdge"

ALL_VACUUM = "AllVacuum"
VACUUM_FAN = "VacuumFan"
CASE_CONTACT = "Contact"
DELTA_SHOCK = "DeltaShock"
VACUUM_LEFT_SHOCK = "VacuumLeftShock"
VACUUM_RIGHT_SHOCK = "VacuumRightShock"

CASE_KINDS = (ALL_VACUUM, VACUUM_FAN, CASE_CONTACT, DELTA_SHOCK,
              VACUUM_LEFT_SHOCK, VACUUM_RIGHT_SHOCK)


# ---------------------------------------------------------------------------
# Data

@dataclass(frozen=True)
class PseudoRiemannData:
    """One jump at radius R between two r^{1-n} power-law states.

    rho_l, rho_r are the density coefficients: rho(r) = coeff * r^{1-n}.
    u_l, u_r are the (constant) radial velocities on each side.
    """
    n: int
    R: float
    rho_l: float
    rho_r: float
    u_l: float
    u_r: float

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 1:
            raise DomainError("n must be an integer >= 1, got %r" % (self.n,))
        if not (self.R > 0):
            raise DomainError("R must be positive, got %r" % (self.R,))
        if self.rho_l < 0 or self.rho_r < 0:
            raise DomainError("density coefficients must be >= 0")
        object.__setattr__(self, "n", int(self.n))


@dataclass(frozen=True)
class RegionProfile:
    """State between two fronts: a power-law profile or vacuum.

    For kind == "powerlaw", density is coeff * r^{1-n} and velocity is a
    constant.  For vacuum the density is identically zero and any velocity
    reported by samplers is a convenience, never used in fluxes.
    """
    kind: str  # "powerlaw" | "vacuum"
    coeff: float = 0.0
    velocity: float = 0.0

    def __post_init__(self):
        if self.kind not in ("powerlaw", "vacuum"):
            raise DomainError("unknown region kind %r" % (self.kind,))
        if self.kind == "powerlaw" and self.coeff < 0:
            raise DomainError("power-law coefficient must be >= 0")

    @staticmethod
    def power_law(coeff: float, velocity: float) -> "RegionProfile":
        return RegionProfile("powerlaw", float(coeff), float(velocity))

    @staticmethod
    def vacuum() -> "RegionProfile":
        return RegionProfile("vacuum", 0.0, 0.0)

    @property
    def is_vacuum(self) -> bool:
        return self.kind == "vacuum"

    def density(self, r, n: int):
        """Pointwise density coeff * r^{1-n}; vacuum gives 0."""
        if self.is_vacuum:
            return 0.0 * r
        return self.coeff * r ** (1 - n)


@dataclass(frozen=True)
class FrontState:
    """Snapshot of one front at a fixed time."""
    kind: str           # ShadowWave | Shock | Contact | VacuumEdge
    xi: float           # absolute position
    speed: float        # xi-dot
    sigma: float = 0.0  # lineal delta mass; zero unless ShadowWave

    def __post_init__(self):
        if self.kind not in (SHADOW_WAVE, SHOCK, CONTACT, VACUUM_EDGE):
            raise DomainError("unknown front kind %r" % (self.kind,))
        if self.kind != SHADOW_WAVE and self.sigma != 0.0:
            raise DomainError("sigma must be 0 for non-shadow fronts")


class FrontPath(Protocol):
    """Time-parameterized front: position, speed and lineal mass."""
    kind: str

    def xi(self, t: float) -> float: ...
    def speed(self, t: float) -> float: ...
    def sigma(self, t: float) -> float: ...

    def state(self, t: float) -> FrontState: ...


@dataclass(frozen=True)
class LinearFront:
    """Shock / contact / vacuum edge moving at constant speed."""
    kind: str
    xi0: float
    velocity: float
    t0: float = 0.0

    def xi(self, t):
        return self.xi0 + self.velocity * (t - self.t0)

    def speed(self, t):
        return self.velocity

    def sigma(self, t):
        return 0.0

    def state(self, t):
        return FrontState(self.kind, self.xi(t), self.velocity, 0.0)


@dataclass(frozen=True)
class Phase:
    """One time slab [t_start, t_end) of a plan.

    fronts are ordered by position; regions has len(fronts)+1 entries,
    innermost (touching the origin) first.  m0/p0 are the origin mass and
    the origin momentum tally, linear in time within the phase.
    """
    t_start: float
    t_end: float
    fronts: tuple
    regions: tuple
    m0_start: float = 0.0
    m0_slope: float = 0.0
    p0_start: float = 0.0
    p0_slope: float = 0.0

    def __post_init__(self):
        if len(self.regions) != len(self.fronts) + 1:
            raise DomainError("need len(fronts)+1 regions")
        if not (self.t_end > self.t_start):
            raise DomainError("empty phase interval")

    def m0(self, t):
        return self.m0_start + self.m0_slope * (t - self.t_start)

    def p0(self, t):
        return self.p0_start + self.p0_slope * (t - self.t_start)


@dataclass(frozen=True)
class CaseTag:
    """Classification of pseudo-Riemann data."""
    kind: str
    has_absorption: bool = False
    hits_origin: bool = False
    left_drains: bool = False

    def __post_init__(self):
        if self.kind not in CASE_KINDS:
            raise DomainError("unknown case kind %r" % (self.kind,))


@dataclass(frozen=True)
class WavePlan:
    """Global-in-time piecewise-exact solution of one pseudo-Riemann datum.

    phases partition [0, inf) structurally; t_max only gates sampling.
    events maps the named transitions (t_in, t_sw0, t_origin_left,
    t_vacuum_close) to times where applicable.
    """
    data: PseudoRiemannData
    case: CaseTag
    phases: tuple
    events: dict
    t_max: float

    def phase_at(self, t: float) -> Phase:
        if t < 0:
            raise DomainError("negative time")
        for ph in self.phases:
            if ph.t_start <= t < ph.t_end:
                return ph
        raise PlanRangeError("no phase covers t=%r" % (t,))

    def fronts_at(self, t: float) -> list:
        return [f.state(t) for f in self.phase_at(t).fronts]

    def m0(self, t: float) -> float:
        return self.phase_at(t).m0(t)

    def p0(self, t: float) -> float:
        return self.phase_at(t).p0(t)

    @property
    def m0_law(self):
        """Piecewise-linear m0 description: (t_start, t_end, m0_start, slope)."""
        return tuple((p.t_start, p.t_end, p.m0_start, p.m0_slope)
                     for p in self.phases)


@dataclass(frozen=True)
class Atom:
    """Singular sphere-supported mass carried by a shadow front."""
    radius: float
    sigma: float
    total_mass: float


@dataclass(frozen=True)
class SolutionSample:
    """Field values at one (r, t) point plus singular content."""
    r: float
    t: float
    rho: float
    u: float
    is_vacuum: bool
    m0: float
    atom: Optional[Atom] = None


@dataclass(frozen=True)
class ConservedPair:
    """Total mass and momentum of a truncated solution."""
    Q: float
    M: float


@dataclass(frozen=True)
class EpsFamily:
    """Mollified realization of a plan at strip width eps.

    Outside the strips of half-width eps/2 around each shadow front the
    fields equal the plan's regular fields; inside, density is sigma(t)/eps
    and velocity is the front speed.
    """
    plan: WavePlan
    eps: float

    def __post_init__(self):
        if not (self.eps > 0):
            raise DomainError("eps must be positive")

    def state(self, r: float, t: float):
        """(rho, u) of the realized family at a point; vacuum gives (0, 0)."""
        ph = self.plan.phase_at(t)
        for f in ph.fronts:
            if f.kind == SHADOW_WAVE:
                x = f.xi(t)
                if abs(r - x) <= 0.5 * self.eps:
                    return f.sigma(t) / self.eps, f.speed(t)
        prof = region_profile_at(ph, r, t)
        if prof.is_vacuum:
            return 0.0, 0.0
        return prof.coeff * r ** (1 - self.plan.data.n), prof.velocity

    def moments(self, r: float, t: float):
        """(rho, rho*u, rho*u^2, rho*u^3) at a point."""
        rho, u = self.state(r, t)
        return rho, rho * u, rho * u * u, rho * u ** 3


def region_profile_at(phase: Phase, r: float, t: float) -> RegionProfile:
    """Profile of the region containing radius r (fronts belong to the
    outer side: r < xi selects the inner region)."""
    idx = 0
    for f in phase.fronts:
        if r >= f.xi(t):
            idx += 1
    return phase.regions[idx]


# ---------------------------------------------------------------------------
# Operations

def surface_area(n: int) -> float:
    """|S^{n-1}| = 2 pi^{n/2} / Gamma(n/2); the coefficient turning radial
    line integrals into full-space integrals."""
    if int(n) != n or n < 1:
        raise DomainError("dimension must be an integer >= 1")
    n = int(n)
    return 2.0 * math.pi ** (n / 2.0) / math.gamma(n / 2.0)


def jump_brackets(rho0: float, u0: float, rho1: float, u1: float):
    """Jump brackets ([rho], [rho u], [rho u^2], [rho u^3]), right minus left."""
    if rho0 < 0 or rho1 < 0:
        raise DomainError("densities must be >= 0")
    return (rho1 - rho0,
            rho1 * u1 - rho0 * u0,
            rho1 * u1 ** 2 - rho0 * u0 ** 2,
            rho1 * u1 ** 3 - rho0 * u0 ** 3)


def kappa_fluxes(cdot: float, rho0: float, u0: float, rho1: float, u1: float):
    """Net mass and momentum fluxes into a front moving at speed cdot:
    kappa1 = cdot [rho] - [rho u], kappa2 = cdot [rho u] - [rho u^2]."""
    br, bru, bru2, _ = jump_brackets(rho0, u0, rho1, u1)
    return cdot * br - bru, cdot * bru - bru2
