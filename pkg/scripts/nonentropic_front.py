"""Profile the nonconstant-speed front whose closed forms solve the front
ODE exactly yet violate the dissipation inequality at small times.

Reports the ODE residuals of the closed forms, the sign change of the
dissipation cubic (bisected to machine precision), and a table of the
front state over time.  Optionally re-integrates the front numerically
from its closed-form state at t0 as an independent check.
"""
import argparse

import numpy as np

import radialsw as rs
from radialsw import sw_ode, verify


def cubic_at(t: float) -> float:
    xi, xd, _, rl, ul = (float(v[0]) for v in
                         sw_ode.nonentropic_example(np.array([t])))
    return verify.entropy_lhs(rl, ul, 1.0 / xi, 0.0, xd)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--t-lo", type=float, default=0.1)
    ap.add_argument("--t-hi", type=float, default=5.0)
    ap.add_argument("--steps", type=int, default=25)
    ap.add_argument("--integrate", action="store_true",
                    help="cross-check with the general front integrator")
    args = ap.parse_args()

    grid = np.linspace(args.t_lo, args.t_hi, 200)
    res1, res2 = sw_ode.ode_residual(
        sw_ode.nonentropic_example, sw_ode.nonentropic_outer_states, 2, grid,
        derivatives=sw_ode.nonentropic_derivatives)
    print("closed-form ODE residuals: mass %.3e  momentum %.3e" % (res1, res2))

    # bisect the dissipation cubic's root; it is positive to the left
    lo, hi = 1.0, 1.5
    while hi - lo > 1e-14:
        mid = 0.5 * (lo + hi)
        lo, hi = (mid, hi) if cubic_at(mid) > 0 else (lo, mid)
    print("dissipation cubic changes sign at t* = %.13f" % (0.5 * (lo + hi)))
    print("cubic(0.5) = %+.6e   cubic(2.0) = %+.6e" % (cubic_at(0.5), cubic_at(2.0)))

    ts = np.linspace(args.t_lo, args.t_hi, args.steps)
    xi, xd, sg, rl, ul = sw_ode.nonentropic_example(ts)
    print("%8s %11s %11s %11s %11s %12s" % ("t", "xi", "xi_dot", "sigma",
                                            "u_l", "cubic"))
    for k, t in enumerate(ts):
        print("%8.3f %11.6f %11.6f %11.6f %11.6f %+12.3e" % (
            t, xi[k], xd[k], sg[k], ul[k],
            verify.entropy_lhs(float(rl[k]), float(ul[k]),
                               1.0 / float(xi[k]), 0.0, float(xd[k]))))

    if args.integrate:
        t0 = float(ts[0])
        xi0, xd0, sg0, _, _ = (float(v[0]) for v in
                               sw_ode.nonentropic_example(np.array([t0])))
        ivp = rs.FrontIVP(t0=t0, xi0=xi0, speed0=xd0, sigma0=sg0,
                          outer_states=sw_ode.nonentropic_outer_states, n=2)
        front = rs.integrate_front(ivp, args.t_hi, tol=1e-12, atol=1e-14)
        err = max(abs(front(float(t))[0] - float(x))
                  for t, x in zip(ts, xi))
        print("integrator max |xi - closed form| on grid: %.3e" % err)


if __name__ == "__main__":
    main()
