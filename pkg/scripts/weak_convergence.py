"""Measure the eps -> 0 weak-form convergence of a strip family.

For a chosen jump datum, builds the exact plan, places a bump test
function over the delta front, and halves the strip width down an eps
ladder, reporting mass/momentum/entropy residuals and fitted orders.
"""
import argparse

import numpy as np

import radialsw as rs
from radialsw import verify


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=2)
    ap.add_argument("--R", type=float, default=1.0)
    ap.add_argument("--rho-l", type=float, default=1.0)
    ap.add_argument("--rho-r", type=float, default=1.0)
    ap.add_argument("--u-l", type=float, default=1.0)
    ap.add_argument("--u-r", type=float, default=-1.0)
    ap.add_argument("--eps0", type=float, default=1e-2)
    ap.add_argument("--halvings", type=int, default=6)
    ap.add_argument("--entropy", action="store_true",
                    help="include the kinetic-energy residual")
    args = ap.parse_args()

    data = rs.PseudoRiemannData(args.n, args.R, args.rho_l, args.rho_r,
                                args.u_l, args.u_r)
    plan = rs.solve(data, 5.0)
    phi = verify.default_test_function(plan)
    if phi is None:
        raise SystemExit("datum has no delta front; nothing to measure")
    print("datum %s" % (data,))
    print("test function: r_c=%.6g t_c=%.6g h_r=%.6g h_t=%.6g"
          % (phi.r_c, phi.t_c, phi.h_r, phi.h_t))

    which = ("mass", "momentum", "entropy") if args.entropy else ("mass", "momentum")
    report = verify.residual_ladder(plan, phi, which=which,
                                    eps0=args.eps0, halvings=args.halvings)
    head = "%10s" + "%15s" * len(which)
    print(head % (("eps",) + which))
    for k, eps in enumerate(report.eps):
        row = [report.residuals[w][k] for w in which]
        print(("%10.3e" + "%15.6e" * len(which)) % ((eps,) + tuple(row)))
    for w in which:
        print("fitted order %-9s %.3f" % (w, report.order[w]))

    # the entropy residual tends to a negative limit, not to zero
    if args.entropy:
        last = report.residuals["entropy"][-1]
        print("entropy residual limit estimate %.6e (<= 0 means dissipative)"
              % last)


if __name__ == "__main__":
    main()
