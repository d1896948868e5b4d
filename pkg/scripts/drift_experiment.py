"""Invariant drift of RK4 against step size for the builtin scenarios.

Prints a table of max |I(x(t)) - I(x0)| over all invariants of each scenario.
"""
import argparse

from pcx.dynamics import IntegrationError, drift_report, integrate
from pcx.scenarios import load_scenario

STARTS = {
    "euler_so3": [1, 0.1, 0.1],
    "manakov_so4": [1, 0.2, -0.3, 0.4, 0.1, -0.5],
    "clebsch_kirchhoff": [1, 0.5, 0.2, 0.3, -0.4, 0.7],
    "harmonic_oscillator_2d": [1, 0, 0, 0.5],
}


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--t-end", type=float, default=20.0)
    ap.add_argument("--steps", type=float, nargs="+", default=[1e-1, 5e-2, 1e-2, 5e-3, 1e-3])
    ap.add_argument("--scenarios", nargs="+", default=list(STARTS))
    args = ap.parse_args()

    print("scenario".ljust(24) + "".join(f"h={h:<10g}" for h in args.steps))
    for name in args.scenarios:
        s = load_scenario(name)
        row = name.ljust(24)
        for h in args.steps:
            try:
                traj = integrate(s.structure, s.hamiltonian, STARTS[name], args.t_end, h)
                row += f"{drift_report(traj, s.invariants()).max():<12.2e}"
            except IntegrationError as exc:
                row += f"{'blow-up@' + format(exc.last_time, '.3g'):<12}"
        print(row)


if __name__ == "__main__":
    main()
