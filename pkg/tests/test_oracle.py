import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

import radialsw.exact_riemann as xr
import radialsw.oracle as orc
from radialsw.core import DomainError, PseudoRiemannData

WORKED = PseudoRiemannData(n=2, R=1.0, rho_l=1.0, rho_r=1.0, u_l=1.0, u_r=-1.0)


# ---------------------------------------------------------------------------
# construction and the two event types

def test_constructor_validation():
    with pytest.raises(DomainError):
        orc.ParticleSystem(2, [1.0, 2.0], [1.0], [0.0, 0.0])
    with pytest.raises(DomainError):
        orc.ParticleSystem(2, [2.0, 1.0], [1.0, 1.0], [0.0, 0.0])
    with pytest.raises(DomainError):
        orc.ParticleSystem(2, [1.0, 2.0], [1.0, -1.0], [0.0, 0.0])


def test_head_on_merge_conserves_momentum():
    ps = orc.ParticleSystem(1, [1.0, 3.0], [1.0, 1.0], [1.0, -1.0])
    ps.run_until(2.0)
    assert ps.alive_count == 1
    assert ps.radii()[0] == pytest.approx(2.0, abs=1e-12)
    assert ps.velocities()[0] == pytest.approx(0.0, abs=1e-14)
    assert ps.masses()[0] == pytest.approx(2.0)
    assert ps.m0 == 0.0


def test_origin_absorption():
    ps = orc.ParticleSystem(1, [1.0], [1.5], [-2.0])
    ps.run_until(1.0)
    assert ps.alive_count == 0
    assert ps.m0 == pytest.approx(1.5)
    assert ps.absorptions == [(pytest.approx(0.5), pytest.approx(1.5))]
    assert orc.largest_absorption_time(ps) == pytest.approx(0.5)
    # momentum change equals the absorbed momentum
    assert ps.total_momentum() == 0.0


def test_run_until_rejects_backwards():
    ps = orc.ParticleSystem(1, [1.0], [1.0], [0.0])
    ps.run_until(2.0)
    with pytest.raises(DomainError):
        ps.run_until(1.0)


def test_no_absorption_yet_gives_none():
    ps = orc.ParticleSystem(1, [1.0], [1.0], [1.0])
    ps.run_until(3.0)
    assert orc.largest_absorption_time(ps) is None


# ---------------------------------------------------------------------------
# discretize

def test_discretize_uniform_cells():
    d = PseudoRiemannData(n=2, R=0.5, rho_l=1.0, rho_r=1.0, u_l=0.2, u_r=0.2)
    ps = orc.discretize(d, 10, 1.0)  # R is a cell edge: no straddle split
    assert ps.alive_count == 10
    assert np.allclose(ps.masses(), 2 * math.pi / 10, rtol=1e-14)


def test_discretize_straddling_cell_splits_at_jump():
    d = PseudoRiemannData(n=2, R=1.0, rho_l=2.0, rho_r=1.0, u_l=1.0, u_r=-1.0)
    N = 7  # 1.0 is interior to cell (6/7, 8/7)
    ps = orc.discretize(d, N, 2.0)
    assert ps.alive_count == N + 1
    r = ps.radii()
    k = int(np.searchsorted(r, 1.0)) - 1
    a = 6.0 / 7 * 2.0 / 2  # left edge of the straddling cell
    assert r[k] == pytest.approx(0.5 * (6.0 / 7 * 2.0 / 2 + 1.0))
    exact = 2 * math.pi * (2.0 * 1.0 + 1.0 * 1.0)  # integral of S * coeff
    assert ps.total_mass() == pytest.approx(exact, rel=1e-12)


def test_discretize_total_mass_exact():
    ps = orc.discretize(WORKED, 10_000, 5.3)
    assert ps.total_mass() == pytest.approx(2 * math.pi * 5.3, rel=1e-12)


def test_discretize_vacuum_and_errors():
    vac = PseudoRiemannData(n=2, R=1.0, rho_l=0.0, rho_r=0.0, u_l=0.0, u_r=0.0)
    assert orc.discretize(vac, 50, 2.0).alive_count == 0
    with pytest.raises(DomainError):
        orc.discretize(WORKED, 1, 2.0)
    with pytest.raises(DomainError):
        orc.discretize(WORKED, 50, 1.0)


# ---------------------------------------------------------------------------
# front extraction on the worked example

def test_front_extract_requires_cluster():
    ps = orc.discretize(WORKED, 200, 3.0)
    assert orc.front_extract(ps) is None  # pre-collision
    with pytest.raises(DomainError):
        orc.front_extract(ps, mass_fraction=0.0)


def test_front_matches_constant_speed_phase():
    ps = orc.discretize(WORKED, 2000, 5.3)
    ps.run_until(0.5)
    pos, mass = orc.front_extract(ps)
    assert pos == pytest.approx(1.0, abs=0.01)
    assert mass == pytest.approx(2 * math.pi * 2 * 0.5, rel=0.05)


def test_front_matches_post_absorption_position():
    ps = orc.discretize(WORKED, 2000, 5.3)
    ps.run_until(2.0)
    pos, _ = orc.front_extract(ps)
    assert pos == pytest.approx(-2.0 + 2 * math.sqrt(2.0), abs=0.02)


def test_front_speed_approaches_physical_root():
    d = PseudoRiemannData(n=2, R=1.0, rho_l=4.0, rho_r=1.0, u_l=0.0, u_r=-1.0)
    v0 = xr.first_root_speed(4.0, 0.0, 1.0, -1.0)  # -1/3
    ps = orc.discretize(d, 10_000, 3.0)
    ps.run_until(0.8)
    p0, _ = orc.front_extract(ps)
    ps.run_until(1.2)
    p1, _ = orc.front_extract(ps)
    est = (p1 - p0) / 0.4
    assert abs(est - v0) <= 0.02 * abs(v0)


# ---------------------------------------------------------------------------
# compare

def test_compare_requires_matching_time():
    plan = xr.solve(WORKED, 6.0)
    ps = orc.discretize(WORKED, 100, 5.3)
    with pytest.raises(DomainError):
        orc.compare(plan, ps, 1.0, 5.3)


def test_compare_on_worked_example():
    plan = xr.solve(WORKED, 6.0)
    ps = orc.discretize(WORKED, 2000, 5.3).run_until(2.0)
    rep = orc.compare(plan, ps, 2.0, 5.3)
    assert rep["pos_exact"] == pytest.approx(-2.0 + 2 * math.sqrt(2.0))
    assert rep["pos_error"] <= 0.02
    assert rep["mass_error"] <= 0.05 * rep["mass_exact"]
    assert rep["Q_error"] <= 1e-9


def test_compare_contact_has_no_front_rows():
    d = PseudoRiemannData(n=2, R=1.0, rho_l=2.0, rho_r=1.0, u_l=0.5, u_r=0.5)
    plan = xr.solve(d, 4.0)
    ps = orc.discretize(d, 500, 4.0).run_until(1.0)
    rep = orc.compare(plan, ps, 1.0, 4.0)
    assert rep["pos_exact"] is None
    assert rep["pos_oracle"] is None
    assert rep["pos_error"] is None
    assert rep["mass_error"] is None


def test_fan_origin_mass_within_two_particles():
    d = PseudoRiemannData(n=2, R=1.0, rho_l=1.0, rho_r=1.0, u_l=-1.0, u_r=1.0)
    plan = xr.solve(d, 2.0)
    N, r_max = 800, 4.0
    cell_mass = 2 * math.pi * r_max / N
    ps = orc.discretize(d, N, r_max)
    for t in (0.3, 0.7, 1.2):
        ps.run_until(t)
        rep = orc.compare(plan, ps, t, r_max)
        assert rep["m0_error"] <= 2 * cell_mass


# ---------------------------------------------------------------------------
# event-loop invariants

@st.composite
def particle_systems(draw):
    rs = draw(st.lists(st.floats(min_value=0.05, max_value=10.0),
                       min_size=2, max_size=12, unique=True))
    rs = sorted(rs)
    ms = draw(st.lists(st.floats(min_value=0.01, max_value=5.0),
                       min_size=len(rs), max_size=len(rs)))
    us = draw(st.lists(st.floats(min_value=-3.0, max_value=3.0),
                       min_size=len(rs), max_size=len(rs)))
    return orc.ParticleSystem(1, rs, ms, us)


@given(particle_systems(), st.floats(min_value=0.1, max_value=30.0))
@settings(max_examples=150, deadline=None)
def test_mass_conserved_and_order_preserved(ps, t_end):
    total0 = ps.total_mass() + ps.m0
    u_lo = float(ps.velocities().min())
    u_hi = float(ps.velocities().max())
    for t in (0.25 * t_end, t_end):
        ps.run_until(t)
        assert abs(ps.total_mass() + ps.m0 - total0) <= 1e-12 * max(1.0, total0)
        r = ps.radii()
        assert np.all(np.diff(r) > 0)
        if ps.alive_count:
            v = ps.velocities()
            assert v.min() >= u_lo - 1e-12
            assert v.max() <= u_hi + 1e-12


@given(particle_systems(), st.floats(min_value=0.1, max_value=30.0))
@settings(max_examples=100, deadline=None)
def test_momentum_changes_only_by_absorption(ps, t_end):
    mom0 = ps.total_momentum()
    ps.run_until(t_end)
    if not ps.absorptions:
        assert abs(ps.total_momentum() - mom0) <= 1e-11 * max(1.0, abs(mom0))
    else:
        # every absorbed packet had u < 0, so momentum can only increase
        assert ps.total_momentum() >= mom0 - 1e-11 * max(1.0, abs(mom0))


def test_momentum_accounting_with_known_absorption():
    # left particle sinks into the origin before the right pair merges
    ps = orc.ParticleSystem(1, [0.5, 4.0, 5.0], [2.0, 1.0, 3.0],
                            [-1.0, 1.0, -1.0])
    mom0 = ps.total_momentum()  # -2 + 1 - 3 = -4
    ps.run_until(3.0)
    # absorbed momentum: 2 * (-1) = -2 at t = 0.5
    assert ps.m0 == pytest.approx(2.0)
    assert ps.total_momentum() == pytest.approx(mom0 - 2.0 * (-1.0), abs=1e-12)


def test_simultaneous_collisions_group_merge():
    # three equally spaced particles closing symmetrically meet at once
    ps = orc.ParticleSystem(1, [1.0, 2.0, 3.0], [1.0, 1.0, 1.0],
                            [1.0, 0.0, -1.0])
    ps.run_until(1.0)
    assert ps.alive_count == 1
    assert ps.radii()[0] == pytest.approx(2.0)
    assert ps.velocities()[0] == pytest.approx(0.0, abs=1e-14)
