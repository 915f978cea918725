"""Verification suites: per-pair residual checks runnable from the CLI.

Each suite evaluates a family of identities along the flow and returns one
row per assertion with the worst residual over the sampled times.  Sampling
covers the middle 90 percent of the lifespan, with infinite boundaries
clipped to +-2 flow-time units.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import NotApplicable
from .exact import (QD, branch, eta_oneform, frame_exact, hamiltonian_exact,
                    lifespan, metric_exact, theta_exact)
from .frames import levi_civita, ricci3, structure_constants_from_theta
from .lapse import LapseProfile
from .lorentz import closedness_residual, dirac_current_frame, ricci4, \
    coframe4_at, verify_ricci_identity
from .numeric import FlowState, StepOptions, flow_residuals, hamiltonian_of, \
    integrate_to
from .pairs import CauchyPair, DEFAULT_TOL, algebraic_residuals, constraints, \
    invariants, is_constrained_ricci_flat, require_valid

SUITES = ("constraints", "ricci4", "ricciflow", "cosymplectic", "oracle")

_CLIP = 2.0


@dataclass(frozen=True)
class CheckResult:
    name: str
    residual: float
    tol: float

    @property
    def passed(self) -> bool:
        return self.residual <= self.tol


def sample_window(pair: CauchyPair, profile: LapseProfile,
                  tol: float = DEFAULT_TOL) -> tuple[float, float]:
    """Middle 90 percent of the lifespan, infinite ends clipped to +-2."""
    span = lifespan(pair, profile, tol)
    lo = -_CLIP if span.t_minus is None or math.isinf(span.t_minus) else span.t_minus
    hi = _CLIP if span.t_plus is None or math.isinf(span.t_plus) else span.t_plus
    if profile.kind == "tabulated":
        dlo, dhi = profile.domain()
        lo, hi = max(lo, dlo), min(hi, dhi)
    width = hi - lo
    return lo + 0.05 * width, hi - 0.05 * width


def sample_times(pair: CauchyPair, profile: LapseProfile, n: int,
                 tol: float = DEFAULT_TOL) -> np.ndarray:
    lo, hi = sample_window(pair, profile, tol)
    return np.linspace(lo, hi, n)


def suite_constraints(pair: CauchyPair, profile: LapseProfile, samples: int = 50,
                      tol: float = DEFAULT_TOL) -> list[CheckResult]:
    """Propagation of the vacuum constraints along the flow."""
    require_valid(pair, tol)
    h0 = constraints(pair, tol).hamiltonian
    constrained = is_constrained_ricci_flat(pair, tol)
    ham_dev = mom_dev = ham_abs = mom_abs = 0.0
    for t in sample_times(pair, profile, samples, tol):
        th_t = theta_exact(pair, profile, t, tol)
        rep = constraints(CauchyPair(th_t), tol)
        ham_dev = max(ham_dev, abs(rep.hamiltonian
                                   - hamiltonian_exact(pair, h0, profile, t, tol)))
        # the momentum residual is tied to the Hamiltonian: -(H/2) e_u
        target = -0.5 * rep.hamiltonian * np.array([1.0, 0.0, 0.0])
        mom_dev = max(mom_dev, float(np.max(np.abs(rep.momentum_residual - target))))
        ham_abs = max(ham_abs, abs(rep.hamiltonian))
        mom_abs = max(mom_abs, float(np.max(np.abs(rep.momentum_residual))))
    rows = [
        CheckResult("hamiltonian matches its closed-form evolution", ham_dev, 1e-8),
        CheckResult("momentum residual equals -(H/2) e_u along the flow",
                    mom_dev, 1e-9),
    ]
    if constrained:
        rows.append(CheckResult(
            "hamiltonian stays zero (constrained pair)", ham_abs, 1e-9))
        rows.append(CheckResult(
            "momentum residual vanishes (constrained pair)", mom_abs, 1e-9))
    return rows


def suite_ricci4(pair: CauchyPair, profile: LapseProfile, samples: int = 20,
                 tol: float = DEFAULT_TOL) -> list[CheckResult]:
    """The 4D Ricci identity, plus exact flatness on constrained pairs."""
    require_valid(pair, tol)
    ident = flat = 0.0
    constrained = is_constrained_ricci_flat(pair, tol)
    for t in sample_times(pair, profile, samples, tol):
        ident = max(ident, verify_ricci_identity(pair, profile, t, tol))
        if constrained:
            ric = ricci4(coframe4_at(pair, profile, t, tol))
            flat = max(flat, float(np.max(np.abs(ric.components))))
    rows = [CheckResult("4D Ricci equals (H/2) null-direction square", ident, 1e-6)]
    if constrained:
        rows.append(CheckResult("4D Ricci vanishes (constrained pair)", flat, 1e-8))
    return rows


def _ricci3_reference_frame(pair, profile, t, tol):
    """3D Ricci of h_t pulled back to the reference coframe components."""
    th_t = theta_exact(pair, profile, t, tol)
    u = frame_exact(pair, profile, t, tol).U
    ric_t, _ = ricci3(structure_constants_from_theta(th_t))
    return u.T @ ric_t.as_matrix() @ u


def suite_ricciflow(pair: CauchyPair, profile: LapseProfile, samples: int = 20,
                    tol: float = DEFAULT_TOL) -> list[CheckResult]:
    """Remark identities tying Ric(h_t) to the shape tensor and, on
    constrained quasi-diagonal pairs, to the time derivative of h_t."""
    require_valid(pair, tol)
    qd = branch(pair, tol) == QD
    rows = []
    times = sample_times(pair, profile, samples, tol)

    if qd:
        res = 0.0
        for t in times:
            th_t = theta_exact(pair, profile, t, tol)
            ric_t, _ = ricci3(structure_constants_from_theta(th_t))
            ham = hamiltonian_of(th_t)
            # T is the trace of the lower 2x2 block, not the full trace
            target = -(th_t.ll + th_t.nn) * th_t.as_matrix()
            target[0, 0] += 0.5 * ham
            res = max(res, float(np.max(np.abs(ric_t.as_matrix() - target))))
        rows.append(CheckResult(
            "Ric(h) = -Tr(Theta) Theta + (H/2) e_u x e_u (quasi-diagonal)",
            res, 1e-8))
    else:
        res = 0.0
        inv = invariants(pair)
        eta_t = np.array([0.0, pair.theta.un, -pair.theta.ul]) / inv.lam
        for t in times:
            th_t = theta_exact(pair, profile, t, tol)
            ric_t, _ = ricci3(structure_constants_from_theta(th_t))
            ham = hamiltonian_of(th_t)
            target = 0.25 * ham * (np.eye(3) - np.outer(eta_t, eta_t))
            res = max(res, float(np.max(np.abs(ric_t.as_matrix() - target))))
        rows.append(CheckResult(
            "Ric(h) = (H/4)(h - eta x eta) (off-diagonal branches)", res, 1e-8))

    if qd and is_constrained_ricci_flat(pair, tol):
        step = 1e-5
        res = 0.0
        for t in times:
            ric_ref = _ricci3_reference_frame(pair, profile, t, tol)
            h_plus = metric_exact(pair, profile, t + step, tol).as_matrix()
            h_minus = metric_exact(pair, profile, t - step, tol).as_matrix()
            dh = (h_plus - h_minus) / (2.0 * step)
            th_t = theta_exact(pair, profile, t, tol)
            factor = (th_t.ll + th_t.nn) / (2.0 * profile.beta(t))
            res = max(res, float(np.max(np.abs(ric_ref - factor * dh))))
        rows.append(CheckResult(
            "Ric(h) = (Tr(Theta)/(2 beta)) dh/dt (constrained quasi-diagonal)",
            res, 1e-6))
    return rows


def suite_cosymplectic(pair: CauchyPair, profile: LapseProfile, samples: int = 20,
                       tol: float = DEFAULT_TOL) -> list[CheckResult]:
    """Parallelism and closedness of the distinguished one-forms."""
    require_valid(pair, tol)
    inv = invariants(pair)
    rows = []
    times = sample_times(pair, profile, samples, tol)

    if inv.lam > tol * max(1.0, pair.theta.max_abs()):
        # evolved-frame components of eta_t are constant in t
        eta_t = np.array([0.0, pair.theta.un, -pair.theta.ul]) / inv.lam
        res = 0.0
        for t in times:
            th_t = theta_exact(pair, profile, t, tol)
            om = levi_civita(structure_constants_from_theta(th_t))
            res = max(res, float(np.max(np.abs(np.einsum("abd,d->ab", om, eta_t)))))
        rows.append(CheckResult("parallel one-form: nabla eta = 0", res, 1e-10))

    res = 0.0
    for t in times:
        current = dirac_current_frame(pair, profile, t, tol)
        res = max(res, closedness_residual(pair, current.log_scale_differential))
    rows.append(CheckResult("log-scale differential is closed", res, 1e-12))
    return rows


def suite_oracle(pair: CauchyPair, profile: LapseProfile, samples: int = 20,
                 tol: float = DEFAULT_TOL, n_steps: int = 20_000) -> list[CheckResult]:
    """Closed forms against the numerical integrator."""
    require_valid(pair, tol)
    times = sample_times(pair, profile, samples, tol)
    states = integrate_to(pair, profile, times, n_steps_total=n_steps, tol=tol)
    th_dev = u_dev = resid = 0.0
    for t, st in zip(times, states):
        th_dev = max(th_dev, float(np.max(np.abs(
            st.theta.as_matrix() - theta_exact(pair, profile, t, tol).as_matrix()))))
        u_dev = max(u_dev, float(np.max(np.abs(
            st.U - frame_exact(pair, profile, t, tol).U))))
        resid = max(resid, flow_residuals(st, pair).max())
    return [
        CheckResult("shape components match the closed form", th_dev, 1e-8),
        CheckResult("coframe transform matches the closed form", u_dev, 1e-8),
        CheckResult("flow-equation residuals along the trajectory", resid, 1e-8),
    ]


_SUITE_FUNCS = {
    "constraints": suite_constraints,
    "ricci4": suite_ricci4,
    "ricciflow": suite_ricciflow,
    "cosymplectic": suite_cosymplectic,
    "oracle": suite_oracle,
}


def run_suite(pair: CauchyPair, profile: LapseProfile, suite: str,
              samples: int | None = None, tol: float = DEFAULT_TOL) -> list[CheckResult]:
    """Run one named suite, or all of them in declaration order."""
    if suite == "all":
        rows = []
        for name in SUITES:
            rows.extend(run_suite(pair, profile, name, samples, tol))
        return rows
    func = _SUITE_FUNCS.get(suite)
    if func is None:
        raise ValueError(f"unknown suite: {suite!r}")
    if samples is None:
        return func(pair, profile, tol=tol)
    return func(pair, profile, samples=samples, tol=tol)
