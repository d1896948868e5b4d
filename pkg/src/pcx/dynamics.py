"""Fixed-step RK4 integration of x' = pi# dH with conservation drift reports."""
from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from typing import Callable, Mapping, Sequence

from .polyalg import Polynomial
from .tensorcalc import Bivector, ham_vf


class IntegrationError(RuntimeError):
    def __init__(self, msg: str, last_time: float):
        super().__init__(f"{msg} (last valid time {last_time!r})")
        self.last_time = last_time


def _term_src(exps: tuple, coeff) -> str:
    factors = [repr(float(coeff))]
    for i, e in enumerate(exps):
        if e == 1:
            factors.append(f"x[{i}]")
        elif e > 1:
            factors.append(f"x[{i}]**{e}")
    return "*".join(factors)


def _poly_src(p: Polynomial) -> str:
    terms = [_term_src(e, c) for e, c in p.items()]
    return " + ".join(terms) if terms else "0.0"


def compile_poly(p: Polynomial) -> Callable[[Sequence[float]], float]:
    return eval(f"lambda x: {_poly_src(p)}")


def compile_field(polys: Sequence[Polynomial]) -> Callable[[Sequence[float]], list]:
    body = ", ".join(_poly_src(p) for p in polys)
    return eval(f"lambda x: [{body}]")


@dataclass(frozen=True)
class Trajectory:
    chart: tuple
    times: tuple
    states: tuple

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(("t",) + tuple(self.chart))
        for t, x in zip(self.times, self.states):
            w.writerow([repr(t)] + [repr(v) for v in x])
        return buf.getvalue()

    @property
    def final(self) -> tuple:
        return self.states[-1]


def integrate(pi: Bivector, H: Polynomial, x0: Sequence, t_end: float, h: float) -> Trajectory:
    """Classical RK4 with n = max(1, round(t_end / h)) uniform steps of size t_end / n."""
    if not (h > 0 and t_end > 0):
        raise ValueError("need h > 0 and t_end > 0")
    chart = pi.chart
    if len(x0) != chart.dim:
        raise ValueError(f"x0 has {len(x0)} entries, chart has {chart.dim}")
    f = compile_field(ham_vf(pi, H).components)
    n = max(1, round(t_end / h))
    dt = t_end / n
    x = [float(v) for v in x0]
    times, states = [0.0], [tuple(x)]
    for k in range(1, n + 1):
        try:
            k1 = f(x)
            k2 = f([a + 0.5 * dt * b for a, b in zip(x, k1)])
            k3 = f([a + 0.5 * dt * b for a, b in zip(x, k2)])
            k4 = f([a + dt * b for a, b in zip(x, k3)])
        except OverflowError:
            # float ** raises instead of returning inf
            raise IntegrationError("state overflowed", times[-1]) from None
        x = [a + dt / 6 * (b1 + 2 * b2 + 2 * b3 + b4) for a, b1, b2, b3, b4 in zip(x, k1, k2, k3, k4)]
        if not all(math.isfinite(v) for v in x):
            raise IntegrationError("state became nonfinite", times[-1])
        times.append(k * dt)
        states.append(tuple(x))
    return Trajectory(chart.names, tuple(times), tuple(states))


@dataclass(frozen=True)
class Drift:
    name: str
    initial: float
    max_drift: float


@dataclass(frozen=True)
class DriftReport:
    drifts: tuple

    def max(self) -> float:
        return max((d.max_drift for d in self.drifts), default=0.0)

    def by_name(self) -> dict:
        return {d.name: d for d in self.drifts}

    def to_json(self) -> dict:
        return {d.name: {"initial": d.initial, "max_drift": d.max_drift} for d in self.drifts}


def drift_report(traj: Trajectory, invariants: Mapping[str, Polynomial]) -> DriftReport:
    out = []
    for name, F in invariants.items():
        if tuple(F.chart) != tuple(traj.chart):
            raise ValueError(f"invariant {name} lives on chart {F.chart}, trajectory on {traj.chart}")
        g = compile_poly(F)
        f0 = g(traj.states[0])
        out.append(Drift(name, f0, max(abs(g(x) - f0) for x in traj.states)))
    return DriftReport(tuple(out))
