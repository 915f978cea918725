"""Left-invariant Cauchy pairs: validation, classification, constraints.

A pair is stored through the components of its shape tensor in the fixed
orthonormal coframe (e_u, e_l, e_n).  Admissible components solve a small
algebraic system and fall into one of the structural families realized on
the four simply connected 3D groups R^3, E(1,1), tau_2 + R and tau_{3,mu}.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .errors import InvalidPair
from .frames import Sym3, divergence_sym, ricci3, structure_constants_from_theta

DEFAULT_TOL = 1e-9


@dataclass(frozen=True)
class CauchyPair:
    """Initial datum of the flow: shape components Theta_ab."""

    theta: Sym3

    @classmethod
    def from_components(cls, uu=0.0, ul=0.0, un=0.0, ll=0.0, ln=0.0, nn=0.0) -> "CauchyPair":
        return cls(Sym3(uu=uu, ul=ul, un=un, ll=ll, ln=ln, nn=nn))

    @classmethod
    def from_json_dict(cls, data: dict) -> "CauchyPair":
        """Parse the `{"theta": {"uu": ..., ...}}` wire format."""
        if not isinstance(data, dict) or "theta" not in data:
            raise ValueError("pair JSON must be an object with a 'theta' field")
        th = data["theta"]
        if not isinstance(th, dict):
            raise ValueError("'theta' must be an object")
        missing = [k for k in ("uu", "ul", "un", "ll", "ln", "nn") if k not in th]
        if missing:
            raise ValueError(f"missing theta components: {', '.join(missing)}")
        vals = {}
        for k in ("uu", "ul", "un", "ll", "ln", "nn"):
            v = th[k]
            if isinstance(v, bool) or not isinstance(v, (int, float)) or not math.isfinite(v):
                raise ValueError(f"theta component '{k}' must be a finite number")
            vals[k] = float(v)
        return cls(Sym3(**vals))

    def to_json_dict(self) -> dict:
        return {"theta": self.theta.to_dict()}


@dataclass(frozen=True)
class ThetaInvariants:
    """Scalar invariants driving branch selection and classification."""

    lam: float
    theta2: np.ndarray  # lower 2x2 block [[ll, ln], [ln, nn]]
    T: float
    Delta: float


class GroupTag(Enum):
    R3 = "R3"
    E11 = "E11"
    TAU2_PLUS_R = "Tau2PlusR"
    TAU3_MU = "Tau3Mu"


@dataclass(frozen=True)
class GroupType:
    tag: GroupTag
    mu: float | None = None


@dataclass(frozen=True)
class ValidationReport:
    valid: bool
    violations: list = field(default_factory=list)
    row: str | None = None


@dataclass(frozen=True)
class ConstraintReport:
    hamiltonian: float
    momentum_residual: np.ndarray
    scalar_curvature: float
    is_vacuum_admissible: bool


def invariants(pair: CauchyPair) -> ThetaInvariants:
    th = pair.theta
    theta2 = np.array([[th.ll, th.ln], [th.ln, th.nn]])
    return ThetaInvariants(
        lam=math.hypot(th.ul, th.un),
        theta2=theta2,
        T=th.ll + th.nn,
        Delta=th.ll * th.nn - th.ln**2,
    )


# The four algebraic relations every admissible shape tensor satisfies.
_ALGEBRAIC = (
    ("Theta_ln*Theta_ul - Theta_ll*Theta_un", lambda t: t.ln * t.ul - t.ll * t.un),
    ("Theta_nn*Theta_ul - Theta_ln*Theta_un", lambda t: t.nn * t.ul - t.ln * t.un),
    (
        "Theta_ln*Theta_un + Theta_ul*(Theta_ll + Theta_uu)",
        lambda t: t.ln * t.un + t.ul * (t.ll + t.uu),
    ),
    (
        "Theta_ln*Theta_ul + Theta_un*(Theta_nn + Theta_uu)",
        lambda t: t.ln * t.ul + t.un * (t.nn + t.uu),
    ),
)


def algebraic_residuals(pair: CauchyPair) -> list[tuple[str, float]]:
    return [(name, f(pair.theta)) for name, f in _ALGEBRAIC]


def _match_row(pair: CauchyPair, tol: float) -> str | None:
    """Structural match against the admissible-family table, first match wins."""
    th = pair.theta
    inv = invariants(pair)
    scale = max(1.0, th.max_abs())

    def zero(x):
        return abs(x) <= tol * scale

    def zero2(x):
        # quantities quadratic in the components
        return abs(x) <= tol * scale * scale

    if zero(th.ul) and zero(th.un):
        if zero(th.ll) and zero(th.ln) and zero(th.nn):
            return "R3"
        if zero(inv.T):
            return "E11"
        if zero2(inv.Delta):
            return "tau2+R (quasi-diagonal)"
        return "tau3mu"
    # lambda != 0 families
    if zero(th.uu) and zero(th.ll) and zero(th.ln) and zero(th.nn):
        return "tau2+R (lambda)"
    if zero(th.un) and zero(th.ln) and zero(th.nn):
        if not zero(th.ul) and not zero(th.ll) and zero(th.uu + th.ll):
            return "tau2+R (u-l)"
        return None
    if zero(th.ul) and zero(th.ln) and zero(th.ll):
        if not zero(th.un) and not zero(th.nn) and zero(th.uu + th.nn):
            return "tau2+R (u-n)"
        return None
    if not zero(th.ln) and not zero(th.ul) and not zero(th.un):
        if (
            zero2(th.nn * th.ul - th.un * th.ln)
            and zero2(th.ll * th.un - th.ul * th.ln)
            and zero(th.uu + inv.T)
        ):
            return "tau2+R (general)"
    return None


def validate(pair: CauchyPair, tol: float = DEFAULT_TOL) -> ValidationReport:
    """Check the algebraic system and table membership; name the matched row."""
    if tol <= 0:
        raise ValueError("tol must be positive")
    scale = max(1.0, pair.theta.max_abs())
    violations = [
        f"{name} = {val:.3e} != 0"
        for name, val in algebraic_residuals(pair)
        if abs(val) > tol * scale * scale
    ]
    inv = invariants(pair)
    if inv.lam > tol * scale and abs(inv.Delta) > tol * scale * scale:
        violations.append("lambda != 0 together with Delta != 0 is not admissible")
    row = _match_row(pair, tol) if not violations else None
    if row is None and not violations:
        violations.append("component pattern matches no admissible family")
    return ValidationReport(valid=not violations, violations=violations, row=row)


def require_valid(pair: CauchyPair, tol: float = DEFAULT_TOL) -> ValidationReport:
    report = validate(pair, tol)
    if not report.valid:
        raise InvalidPair(report.violations)
    return report


def classify(pair: CauchyPair, tol: float = DEFAULT_TOL) -> GroupType:
    """Isomorphism type of the underlying group from (T, Delta, lambda)."""
    th = pair.theta
    inv = invariants(pair)
    scale = max(1.0, th.max_abs())
    lam_zero = inv.lam <= tol * scale
    t_zero = abs(inv.T) <= tol * scale
    d_zero = abs(inv.Delta) <= tol * scale * scale

    if not lam_zero and not d_zero:
        raise InvalidPair(["lambda != 0 together with Delta != 0 is not admissible"])
    if lam_zero and t_zero and d_zero:
        return GroupType(GroupTag.R3)
    if lam_zero and t_zero:
        return GroupType(GroupTag.E11)
    if d_zero:
        return GroupType(GroupTag.TAU2_PLUS_R)

    # tau_{3,mu}: T, Delta != 0 and lambda = 0
    if abs(th.ln) > tol * scale:
        s = math.copysign(1.0, inv.T)
        root = math.sqrt(max(inv.T**2 - 4.0 * inv.Delta, 0.0))
        mu = (inv.T - s * root) / (inv.T + s * root)
    elif abs(th.ll) >= abs(th.nn):
        mu = th.nn / th.ll
    else:
        mu = th.ll / th.nn
    if not 0.0 < abs(mu) <= 1.0 + tol:
        raise InvalidPair([f"tau3 ratio mu = {mu:.6g} outside the admissible range"])
    return GroupType(GroupTag.TAU3_MU, mu=mu)


def constraints(pair: CauchyPair, tol: float = DEFAULT_TOL) -> ConstraintReport:
    """Vacuum Hamiltonian and momentum residuals of (h, Theta)."""
    require_valid(pair, tol)
    th = pair.theta
    c = structure_constants_from_theta(th)
    _, scal = ricci3(c)
    ham = scal - th.norm2() + th.trace() ** 2
    # d Tr(Theta) vanishes for constant components, so the momentum residual
    # is the divergence alone.
    mom = divergence_sym(c, th)
    scale = max(1.0, th.max_abs()) ** 2
    ok = abs(ham) <= tol * scale and float(np.max(np.abs(mom))) <= tol * scale
    return ConstraintReport(
        hamiltonian=ham,
        momentum_residual=mom,
        scalar_curvature=scal,
        is_vacuum_admissible=ok,
    )


def is_constrained_ricci_flat(pair: CauchyPair, tol: float = DEFAULT_TOL) -> bool:
    return constraints(pair, tol).is_vacuum_admissible
