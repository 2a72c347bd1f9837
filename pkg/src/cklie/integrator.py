"""Fixed-step RK4 integration of the time-dependent system.

The state is integrated in unwrapped chart coordinates so that no stage ever
straddles a periodic seam; normalized copies are stored alongside.
"""

import csv
import io
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
import yaml

from .ck_space import KappaPair, ParallelPoint, normalize
from .coalgebra import f2_closed_form
from .errors import IntegrationAbort
from .kappa_trig import ck
from .lie_hamilton import CoefficientSpec, system_rhs

#: abort when |ck(kappa1*kappa2, y)| drops below this at any stage
POLE_MARGIN = 1e-6


@dataclass
class Trajectory:
    kp: KappaPair
    coeffs: CoefficientSpec
    step: float
    times: np.ndarray
    raw: np.ndarray  # (n, 2) unwrapped chart values
    points: list = field(default_factory=list)

    def __post_init__(self):
        if not self.points:
            self.points = [normalize(self.kp, p) for p in self.raw]

    def __len__(self):
        return len(self.times)

    @property
    def end(self):
        return self.points[-1]

    def to_csv(self, path):
        rows = io.StringIO()
        w = csv.writer(rows, lineterminator="\n")
        w.writerow(["t", "x", "y"])
        for t, (x, y) in zip(self.times, self.points):
            w.writerow([f"{t:.17g}", f"{x:.17g}", f"{y:.17g}"])
        Path(path).write_text(rows.getvalue())

    def metadata(self):
        return {
            "kappa1": float(self.kp.kappa1),
            "kappa2": float(self.kp.kappa2),
            "space": self.kp.name,
            "step": float(self.step),
            "t0": float(self.times[0]),
            "t1": float(self.times[-1]),
            "samples": len(self),
            "coefficients": self.coeffs.to_dict(),
        }

    def write(self, csv_path):
        """CSV plus a ``.meta.yaml`` sidecar next to it."""
        csv_path = Path(csv_path)
        self.to_csv(csv_path)
        meta = csv_path.with_suffix(".meta.yaml")
        meta.write_text(yaml.safe_dump(self.metadata(), sort_keys=True))
        return csv_path, meta

    @classmethod
    def read_csv(cls, path, kp, coeffs, step):
        data = np.loadtxt(path, delimiter=",", skiprows=1, ndmin=2)
        return cls(kp, coeffs, step, data[:, 0], data[:, 1:3].copy())


def _rhs(kp, c, t, state):
    if abs(ck(kp.k12, state[1])) < POLE_MARGIN:
        t, y = float(t), float(state[1])
        raise IntegrationAbort(f"chart pole approached at t={t!r}, y={y!r}", t, ParallelPoint(*map(float, state)))
    v = system_rhs(kp, c, t, state)
    return np.array([v.dx, v.dy])


def rk4_step(kp, c, t, state, h):
    k1 = _rhs(kp, c, t, state)
    k2 = _rhs(kp, c, t + h / 2, state + h / 2 * k1)
    k3 = _rhs(kp, c, t + h / 2, state + h / 2 * k2)
    k4 = _rhs(kp, c, t + h, state + h * k3)
    return state + h / 6 * (k1 + 2 * k2 + 2 * k3 + k4)


def integrate(kp, c, p0, t0, t1, step):
    """Classical RK4 from ``t0`` to ``t1`` with fixed ``step``; the last step is shortened to land on ``t1``."""
    if not step > 0:
        raise ValueError(f"step must be positive, got {step!r}")
    if not t1 > t0:
        raise ValueError(f"need t1 > t0, got [{t0!r}, {t1!r}]")
    n = max(1, math.ceil((t1 - t0) / step - 1e-9))
    times = t0 + step * np.arange(n + 1, dtype=float)
    times[-1] = t1
    raw = np.empty((n + 1, 2))
    state = np.array(p0, dtype=float)
    raw[0] = state
    for i in range(n):
        t = times[i]
        try:
            state = rk4_step(kp, c, t, state, times[i + 1] - t)
        except IntegrationAbort as exc:
            raise IntegrationAbort(str(exc), float(t), ParallelPoint(*map(float, raw[i]))) from None
        raw[i + 1] = state
    return Trajectory(kp, c, step, times, raw)


def flow_invariant_drift(kp, c, p0a, p0b, t0, t1, step):
    """max over samples of |F2(pair at t) - F2(pair at t0)| for two solutions of one system."""
    ta = integrate(kp, c, p0a, t0, t1, step)
    tb = integrate(kp, c, p0b, t0, t1, step)
    f = [f2_closed_form(kp, a, b) for a, b in zip(ta.raw, tb.raw)]
    return max(abs(v - f[0]) for v in f)
