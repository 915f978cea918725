"""Time gauge of the flow: the lapse family beta_t and its integral B_t."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import OutOfDomain


@dataclass(frozen=True)
class LapseProfile:
    """Strictly positive lapse, either constant or tabulated on a time grid.

    Tabulated profiles interpolate linearly between nodes; the integral B_t
    is then the exact (trapezoid) integral of the interpolant.  Times outside
    the table raise OutOfDomain.
    """

    kind: str  # "constant" | "tabulated"
    value: float = 1.0
    times: np.ndarray | None = None
    values: np.ndarray | None = None

    @classmethod
    def constant(cls, value: float = 1.0) -> "LapseProfile":
        if not value > 0:
            raise ValueError("lapse must be strictly positive")
        return cls(kind="constant", value=float(value))

    @classmethod
    def tabulated(cls, times, values) -> "LapseProfile":
        t = np.asarray(times, dtype=float)
        v = np.asarray(values, dtype=float)
        if t.ndim != 1 or t.shape != v.shape or len(t) < 2:
            raise ValueError("need matching 1D times/values with at least two nodes")
        if not np.all(np.diff(t) > 0):
            raise ValueError("times must be strictly increasing")
        if not np.all(v > 0):
            raise ValueError("lapse values must be strictly positive")
        if not (t[0] <= 0.0 <= t[-1]):
            raise ValueError("tabulated domain must contain t = 0")
        return cls(kind="tabulated", times=t, values=v)

    @classmethod
    def from_json_dict(cls, data: dict) -> "LapseProfile":
        if "beta" in data:
            data = data["beta"]
        kind = data.get("kind")
        if kind == "constant":
            return cls.constant(float(data["value"]))
        if kind == "tabulated":
            return cls.tabulated(data["times"], data["values"])
        raise ValueError(f"unknown lapse kind: {kind!r}")

    def domain(self) -> tuple[float, float]:
        if self.kind == "constant":
            return (-math.inf, math.inf)
        return (float(self.times[0]), float(self.times[-1]))

    def beta(self, t: float) -> float:
        if self.kind == "constant":
            return self.value
        lo, hi = self.domain()
        if not lo <= t <= hi:
            raise OutOfDomain(f"t = {t} outside tabulated domain [{lo}, {hi}]")
        return float(np.interp(t, self.times, self.values))

    def b_integral(self, t: float) -> float:
        """Signed integral of the lapse from 0 to t."""
        if self.kind == "constant":
            return self.value * t
        lo, hi = self.domain()
        if not lo <= t <= hi:
            raise OutOfDomain(f"t = {t} outside tabulated domain [{lo}, {hi}]")
        a, b, sign = (0.0, t, 1.0) if t >= 0 else (t, 0.0, -1.0)
        inside = (self.times > a) & (self.times < b)
        knots = np.concatenate(([a], self.times[inside], [b]))
        vals = np.interp(knots, self.times, self.values)
        return sign * float(np.trapezoid(vals, knots))

    def solve_b(self, target: float) -> float | None:
        """Invert the monotone map t -> B_t by bisection.

        Returns None when the target is unreachable within the profile's
        domain (unknown boundary for tabulated profiles, genuinely
        unreachable never happens for constant ones).
        """
        if self.kind == "constant":
            return target / self.value
        lo, hi = self.domain()
        b_lo, b_hi = self.b_integral(lo), self.b_integral(hi)
        if not b_lo <= target <= b_hi:
            return None
        for _ in range(200):
            mid = 0.5 * (lo + hi)
            if self.b_integral(mid) < target:
                lo = mid
            else:
                hi = mid
            if hi - lo < 1e-14 * max(1.0, abs(lo), abs(hi)):
                break
        return 0.5 * (lo + hi)
