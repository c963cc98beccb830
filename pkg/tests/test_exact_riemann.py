import math

import pytest
from hypothesis import assume, given, settings, strategies as st

import radialsw.exact_riemann as xr
from radialsw.core import (
    ALL_VACUUM, CASE_CONTACT, DELTA_SHOCK, SHADOW_WAVE, VACUUM_FAN,
    VACUUM_LEFT_SHOCK, VACUUM_RIGHT_SHOCK, DegenerateDataError, DomainError,
    OutOfPhaseError, PlanRangeError, PreconditionError, PseudoRiemannData,
    kappa_fluxes, surface_area,
)

WORKED = PseudoRiemannData(n=2, R=1.0, rho_l=1.0, rho_r=1.0, u_l=1.0, u_r=-1.0)


def data(n=2, R=1.0, rho_l=1.0, rho_r=1.0, u_l=1.0, u_r=-1.0):
    return PseudoRiemannData(n=n, R=R, rho_l=rho_l, rho_r=rho_r,
                             u_l=u_l, u_r=u_r)


dims = st.integers(min_value=1, max_value=3)
radii = st.floats(min_value=0.5, max_value=2.0)
rhos = st.floats(min_value=0.1, max_value=4.0)
vels = st.floats(min_value=-2.0, max_value=2.0)
gaps = st.floats(min_value=0.1, max_value=3.0)


@st.composite
def delta_shock_data(draw, u_l_sign=None):
    """Random DeltaShock datum; u_l_sign > 0 forces absorption, < 0 forbids it."""
    n = draw(dims)
    R = draw(radii)
    rl, rr = draw(rhos), draw(rhos)
    if u_l_sign is None:
        ur = draw(vels)
        ul = ur + draw(gaps)
    elif u_l_sign > 0:
        ul = draw(st.floats(min_value=0.1, max_value=2.0))
        ur = ul - draw(gaps)
    else:
        ul = draw(st.floats(min_value=-2.0, max_value=0.0))
        ur = ul - draw(gaps)
    return data(n, R, rl, rr, ul, ur)


# ---------------------------------------------------------------------------
# classify

def test_classify_fan_contact_delta():
    tag = xr.classify(data(u_l=-1.0, u_r=1.0))
    assert tag.kind == VACUUM_FAN and tag.left_drains
    tag = xr.classify(data(u_l=1.0, u_r=1.0))
    assert tag.kind == CASE_CONTACT
    tag = xr.classify(WORKED)
    assert tag.kind == DELTA_SHOCK
    assert tag.has_absorption and tag.hits_origin


def test_classify_vacuum_sides():
    assert xr.classify(data(rho_l=0.0, rho_r=0.0)).kind == ALL_VACUUM
    tag = xr.classify(data(rho_l=0.0, u_r=-1.0))
    assert tag.kind == VACUUM_LEFT_SHOCK and tag.hits_origin
    tag = xr.classify(data(rho_r=0.0, u_l=-1.0))
    assert tag.kind == VACUUM_RIGHT_SHOCK and tag.left_drains


# ---------------------------------------------------------------------------
# root speeds

def test_first_root_speed_examples():
    assert xr.first_root_speed(1, 1, 1, -1) == 0.0
    assert xr.first_root_speed(4, 0, 1, -1) == pytest.approx(-1 / 3, abs=1e-15)
    assert xr.first_root_speed(0, 7, 1, -1) == -1.0


def test_first_root_speed_degenerate():
    with pytest.raises(DegenerateDataError):
        xr.first_root_speed(0.0, 1.0, 0.0, 2.0)
    with pytest.raises(DomainError):
        xr.first_root_speed(-1.0, 0.0, 1.0, 0.0)


def test_second_root_speed_examples():
    assert xr.second_root_speed(4, 0, 1, 1) == pytest.approx(-1.0)
    assert xr.second_root_speed(1, 0.3, 1, 1.7) is None
    assert xr.second_root_speed(1, 1, 4, 1) == pytest.approx(1.0)


@given(rhos, vels, rhos, vels)
@settings(max_examples=300, deadline=None)
def test_first_root_is_convex_combination(rho0, u0, rho1, u1):
    v = xr.first_root_speed(rho0, u0, rho1, u1)
    assert min(u0, u1) - 1e-12 <= v <= max(u0, u1) + 1e-12


# ---------------------------------------------------------------------------
# constant-speed closed forms

def test_sigma_const_values():
    assert xr.sigma_const(WORKED, 1.0) == pytest.approx(2.0, rel=1e-14)
    assert xr.sigma_const(WORKED, 0.0) == 0.0
    # n = 1 kills the geometric factor: sigma = kappa1 * t.  Checked inside
    # the validity window (u_l = 1 data absorbs at t_in = 1) and on a datum
    # with an unbounded window.
    assert xr.sigma_const(data(n=1), 1.0) == pytest.approx(2.0, rel=1e-14)
    d1 = data(n=1, rho_l=4.0, rho_r=1.0, u_l=0.0, u_r=-1.0)
    assert xr.sigma_const(d1, 2.0) == pytest.approx(4.0, rel=1e-14)


def test_sigma_const_window():
    with pytest.raises(OutOfPhaseError):
        xr.sigma_const(WORKED, -0.5)
    with pytest.raises(OutOfPhaseError):
        xr.sigma_const(WORKED, 1.5)  # beyond t_in = 1
    with pytest.raises(PreconditionError):
        xr.sigma_const(data(u_l=1.0, u_r=1.0), 0.5)


@given(delta_shock_data(u_l_sign=+1))
@settings(max_examples=150, deadline=None)
def test_sigma_at_absorption_matches_left_mass(d):
    # sigma(t_in) = R sqrt(rho_l)(sqrt(rho_l)+sqrt(rho_r)) xi(t_in)^{1-n}
    t_in = xr.absorption_time(d)
    v0 = xr.first_root_speed(d.rho_l, d.u_l, d.rho_r, d.u_r)
    xi = d.R + v0 * t_in
    assume(xi > 1e-3)
    want = d.R * math.sqrt(d.rho_l) * (math.sqrt(d.rho_l) + math.sqrt(d.rho_r))
    got = xr.sigma_const(d, t_in) * xi ** (d.n - 1)
    assert got == pytest.approx(want, rel=1e-9)


def test_absorption_time_examples():
    assert xr.absorption_time(WORKED) == pytest.approx(1.0)
    d = data(n=3, R=2.0, rho_l=1.0, rho_r=4.0, u_l=1.0, u_r=0.0)
    assert xr.absorption_time(d) == pytest.approx(3.0)
    assert xr.absorption_time(data(u_l=0.0, u_r=-1.0)) is None


def test_post_absorption_worked_constants():
    consts, xi, sigma = xr.post_absorption(WORKED)
    assert (consts.C, consts.D, consts.E) == (1.0, 0.0, 0.0)
    for t in (1.0, 2.0, 3.0):
        assert xi(t) == pytest.approx(-t + 2 * math.sqrt(t), rel=1e-14)
        assert sigma(t) == pytest.approx(
            2 * math.sqrt(t) / (2 * math.sqrt(t) - t), rel=1e-13)
    # continuity with the constant-speed stretch at t_in = 1
    assert xi(1.0) == pytest.approx(1.0)
    assert sigma(1.0) == pytest.approx(2.0)


def test_post_absorption_equal_densities_kill_constants():
    d = data(n=3, R=1.7, rho_l=2.5, rho_r=2.5, u_l=0.9, u_r=-0.4)
    consts, _, _ = xr.post_absorption(d)
    assert consts.D == 0.0 and consts.E == 0.0


def test_post_absorption_precondition():
    with pytest.raises(PreconditionError):
        xr.post_absorption(data(u_l=0.0, u_r=-1.0))


def test_origin_hit_time_examples():
    assert xr.origin_hit_time(WORKED) == pytest.approx(4.0, rel=1e-12)
    d = data(n=3, R=1.0, rho_l=1.0, rho_r=4.0, u_l=0.0, u_r=-1.0)
    assert xr.origin_hit_time(d) == pytest.approx(1.5, rel=1e-14)
    assert xr.origin_hit_time(data(u_l=2.0, u_r=1.0)) is None


# ---------------------------------------------------------------------------
# origin mass

def test_origin_mass_vacuum_fan():
    plan = xr.solve(data(u_l=-1.0, u_r=1.0), 4.0)
    for t in (0.25, 0.5, 0.99):
        assert xr.origin_mass(plan, t) == pytest.approx(2 * math.pi * t, rel=1e-13)
    for t in (1.0, 2.5, 4.0):
        assert xr.origin_mass(plan, t) == pytest.approx(2 * math.pi, rel=1e-13)


def test_origin_mass_front_dump():
    d = data(n=3, R=1.0, rho_l=1.0, rho_r=4.0, u_l=0.0, u_r=-1.0)
    plan = xr.solve(d, 3.0)
    assert plan.m0(0.0) == 0.0
    assert plan.m0(1.49) == 0.0
    assert plan.m0(1.5) == pytest.approx(12 * math.pi, rel=1e-12)
    # post-dump inflow of the right state: S rho_r (-u_r) = 16 pi
    assert plan.m0(2.0) == pytest.approx(12 * math.pi + 16 * math.pi * 0.5,
                                         rel=1e-12)
    with pytest.raises(DomainError):
        xr.origin_mass(plan, -1.0)


# ---------------------------------------------------------------------------
# solve: plan structure

def test_solve_contact_single_front():
    plan = xr.solve(data(u_l=0.5, u_r=0.5), 5.0)
    assert plan.case.kind == CASE_CONTACT
    ph = plan.phase_at(1.0)
    fronts = [f for f in ph.fronts if f.kind == "Contact"]
    assert len(fronts) == 1
    f = fronts[0]
    assert f.xi(2.0) == pytest.approx(1.0 + 0.5 * 2.0)
    assert f.sigma(2.0) == 0.0


def test_solve_worked_example_structure():
    plan = xr.solve(WORKED, 6.0)
    assert plan.events["t_in"] == pytest.approx(1.0)
    assert plan.events["t_sw0"] == pytest.approx(4.0)
    assert len(plan.phases) == 3
    ph0, ph1, ph2 = plan.phases
    assert (ph0.t_start, ph0.t_end) == (0.0, plan.events["t_in"])
    # interior vacuum edge rides at u_l
    edge, sw = ph0.fronts
    assert edge.kind == "VacuumEdge" and edge.xi(0.5) == pytest.approx(0.5)
    assert sw.kind == SHADOW_WAVE and sw.xi(0.5) == pytest.approx(1.0)
    post = ph1.fronts[0]
    assert post.xi(2.0) == pytest.approx(-2.0 + 2 * math.sqrt(2.0), rel=1e-14)
    assert ph2.fronts == ()
    assert ph2.m0_start == pytest.approx(8 * math.pi, rel=1e-12)
    assert ph2.m0_slope == pytest.approx(2 * math.pi, rel=1e-12)


def test_solve_all_vacuum():
    plan = xr.solve(data(rho_l=0.0, rho_r=0.0), 2.0)
    assert plan.case.kind == ALL_VACUUM
    assert plan.phases[0].fronts == ()
    assert plan.m0(1.5) == 0.0
    s = xr.evaluate(plan, 0.7, 1.0)
    assert s.is_vacuum and s.rho == 0.0


# ---------------------------------------------------------------------------
# evaluate

def test_evaluate_delta_shock_left_region():
    plan = xr.solve(WORKED, 6.0)
    s = xr.evaluate(plan, 0.7, 0.5)
    assert not s.is_vacuum
    assert s.rho == pytest.approx(1.0 / 0.7, rel=1e-14)
    assert s.u == 1.0
    assert s.atom is None


def test_evaluate_fan_interior_is_vacuum():
    plan = xr.solve(data(u_l=-1.0, u_r=1.0), 4.0)
    s = xr.evaluate(plan, 1.0, 0.5)  # edges sit at 0.5 and 1.5
    assert s.is_vacuum and s.rho == 0.0


def test_evaluate_atom_on_front():
    plan = xr.solve(WORKED, 6.0)
    s = xr.evaluate(plan, 1.0, 0.5)
    assert s.atom is not None
    assert s.atom.sigma == pytest.approx(1.0, rel=1e-14)
    assert s.atom.total_mass == pytest.approx(2 * math.pi * 1.0, rel=1e-14)


def test_evaluate_range_checks():
    plan = xr.solve(WORKED, 6.0)
    with pytest.raises(DomainError):
        xr.evaluate(plan, -0.5, 1.0)
    with pytest.raises(PlanRangeError):
        xr.evaluate(plan, 1.0, 6.5)


# ---------------------------------------------------------------------------
# shadow-wave invariants (property-based)

def _sw_front(plan, t):
    for f in plan.phase_at(t).fronts:
        if f.kind == SHADOW_WAVE:
            return f
    return None


@given(delta_shock_data())
@settings(max_examples=150, deadline=None)
def test_overcompressible_and_nonnegative_sigma(d):
    plan = xr.solve(d, 10.0)
    t_in = plan.events.get("t_in")
    t_sw0 = plan.events.get("t_sw0", math.inf)
    times = [f * min(t_sw0, 10.0) for f in (0.13, 0.47, 0.81, 0.999)]
    for t in times:
        f = _sw_front(plan, t)
        if f is None:
            continue
        sp = f.speed(t)
        assert d.u_l >= sp - 1e-10
        assert sp >= d.u_r - 1e-10
        assert f.sigma(t) >= 0.0


@given(delta_shock_data(u_l_sign=+1))
@settings(max_examples=150, deadline=None)
def test_front_continuity_at_absorption(d):
    t_in = xr.absorption_time(d)
    assume(t_in < 1e3)
    v0 = xr.first_root_speed(d.rho_l, d.u_l, d.rho_r, d.u_r)
    xi_pre = d.R + v0 * t_in
    assume(xi_pre > 1e-3)
    consts, xi_post, sigma_post = xr.post_absorption(d)
    assert abs(xi_post(t_in) - xi_pre) <= 1e-10 * max(1.0, abs(xi_pre))
    speed_post = d.u_r + 1.0 / math.sqrt(consts.C * t_in + consts.D)
    assert abs(speed_post - v0) <= 1e-10 * max(1.0, abs(v0))
    S = surface_area(d.n)
    mass_pre = S * xi_pre ** (d.n - 1) * xr.sigma_const(d, t_in)
    mass_post = S * xi_post(t_in) ** (d.n - 1) * sigma_post(t_in)
    assert abs(mass_post - mass_pre) <= 1e-10 * max(1.0, mass_pre)


@given(delta_shock_data(u_l_sign=+1))
@settings(max_examples=100, deadline=None)
def test_post_speed_decays_to_outer_velocity(d):
    t_in = xr.absorption_time(d)
    assume(t_in < 1e3)
    consts = xr.post_absorption(d)[0]
    speeds = [d.u_r + 1.0 / math.sqrt(consts.C * t + consts.D)
              for t in (t_in, 2 * t_in, 8 * t_in, 64 * t_in)]
    for a, b in zip(speeds, speeds[1:]):
        assert b < a
        assert b > d.u_r
    # gap = 1/sqrt(64 C t_in + D) with C t_in + D > 0, so 63 C t_in bounds it
    assert speeds[-1] - d.u_r <= 1.0 / math.sqrt(63 * consts.C * t_in)


@given(delta_shock_data(u_l_sign=-1))
@settings(max_examples=100, deadline=None)
def test_n1_matches_classical_delta_shock(d):
    d1 = data(1, d.R, d.rho_l, d.rho_r, d.u_l, d.u_r)
    plan = xr.solve(d1, 10.0)
    assert "t_in" not in plan.events
    v0 = xr.first_root_speed(d1.rho_l, d1.u_l, d1.rho_r, d1.u_r)
    k1, _ = kappa_fluxes(v0, d1.rho_l, d1.u_l, d1.rho_r, d1.u_r)
    t_sw0 = plan.events["t_sw0"]
    for f in (0.2, 0.6, 0.95):
        t = f * min(t_sw0, 10.0)
        fr = _sw_front(plan, t)
        assert fr.speed(t) == v0
        assert abs(fr.sigma(t) - k1 * t) <= 1e-12 * max(1.0, k1 * t)


@given(delta_shock_data())
@settings(max_examples=100, deadline=None)
def test_events_are_ordered(d):
    plan = xr.solve(d, 10.0)
    t_in = plan.events.get("t_in")
    t_sw0 = plan.events.get("t_sw0")
    if t_in is not None:
        assert t_in > 0
    if t_sw0 is not None:
        assert t_sw0 > 0
        if t_in is not None:
            assert t_sw0 > t_in
    starts = [p.t_start for p in plan.phases]
    assert starts == sorted(starts)
    assert plan.phases[-1].t_end == math.inf
