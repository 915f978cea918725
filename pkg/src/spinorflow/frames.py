"""Dense tensor algebra on 3D/4D orthonormal frames.

Everything here works with frame components only: the 3D frame labels are
(u, l, n) = (0, 1, 2) and the metric in frame indices is the identity
(3D Riemannian) or diag(-1, 1, 1, 1) (4D Lorentzian).  Curvature of a
left-invariant metric then reduces to finite-dimensional algebra on the
structure constants of the orthonormal (co)frame.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

# Frame label order used by every 3x3 array in the package.
U, L, N = 0, 1, 2
FRAME_LABELS = ("u", "l", "n")

_SYM_KEYS = ("uu", "ul", "un", "ll", "ln", "nn")


@dataclass(frozen=True)
class Sym3:
    """Symmetric two-tensor in the (u, l, n) frame; upper-triangle storage."""

    uu: float = 0.0
    ul: float = 0.0
    un: float = 0.0
    ll: float = 0.0
    ln: float = 0.0
    nn: float = 0.0

    def as_matrix(self) -> np.ndarray:
        return np.array(
            [
                [self.uu, self.ul, self.un],
                [self.ul, self.ll, self.ln],
                [self.un, self.ln, self.nn],
            ]
        )

    @classmethod
    def from_matrix(cls, m) -> "Sym3":
        m = np.asarray(m, dtype=float)
        return cls(uu=m[0, 0], ul=m[0, 1], un=m[0, 2], ll=m[1, 1], ln=m[1, 2], nn=m[2, 2])

    def as_array(self) -> np.ndarray:
        """Components in the fixed order (uu, ul, un, ll, ln, nn)."""
        return np.array([self.uu, self.ul, self.un, self.ll, self.ln, self.nn])

    @classmethod
    def from_array(cls, a) -> "Sym3":
        return cls(*(float(x) for x in a))

    def max_abs(self) -> float:
        return float(max(abs(x) for x in self.as_array()))

    def trace(self) -> float:
        return self.uu + self.ll + self.nn

    def norm2(self) -> float:
        """Squared frame norm |S|^2 = S_ab S_ab (off-diagonals counted twice)."""
        return (
            self.uu**2
            + self.ll**2
            + self.nn**2
            + 2.0 * (self.ul**2 + self.un**2 + self.ln**2)
        )

    def to_dict(self) -> dict:
        return {k: float(getattr(self, k)) for k in _SYM_KEYS}

    @classmethod
    def from_dict(cls, d: dict) -> "Sym3":
        return cls(**{k: float(d[k]) for k in _SYM_KEYS})


@dataclass(frozen=True)
class EigenData2:
    """Ordered orthogonal diagonalization of a symmetric 2x2 matrix."""

    rho_plus: float
    rho_minus: float
    Q: np.ndarray  # 2x2, orthogonal, det = +1


def eigen2x2(theta2) -> EigenData2:
    """Diagonalize a symmetric 2x2 matrix with deterministic conventions.

    Returns eigenvalues in decreasing order and a rotation Q (det = +1) with
    Q @ diag(rho_plus, rho_minus) @ Q.T equal to the input.  Tie-breaking:
    diagonal input with ordered entries (and the degenerate case) yields
    Q = Id; otherwise the first column's first nonzero entry is positive.
    """
    m = np.asarray(theta2, dtype=float)
    a, b, c = m[0, 0], m[0, 1], m[1, 1]
    scale = max(abs(a), abs(b), abs(c), 1.0)
    half_tr = 0.5 * (a + c)
    # discriminant sqrt((a-c)^2/4 + b^2) is always real for symmetric input
    disc = np.hypot(0.5 * (a - c), b)
    rho_p = half_tr + disc
    rho_m = half_tr - disc

    if abs(b) <= 1e-15 * scale:
        if a >= c:
            Q = np.eye(2)
        else:
            # swap with a rotation by pi/2 to keep det = +1
            Q = np.array([[0.0, -1.0], [1.0, 0.0]])
        return EigenData2(rho_plus=rho_p, rho_minus=rho_m, Q=Q)

    # the rho_plus eigenspace is the range of (m - rho_minus * Id); taking
    # the larger column avoids cancellation when b is tiny
    col1 = np.array([a - rho_m, b])
    col2 = np.array([b, c - rho_m])
    v = col1 if np.linalg.norm(col1) >= np.linalg.norm(col2) else col2
    nv = np.linalg.norm(v)
    if nv <= 1e-300:
        return EigenData2(rho_plus=rho_p, rho_minus=rho_m, Q=np.eye(2))
    v = v / nv
    if v[0] < 0 or (v[0] == 0 and v[1] < 0):
        v = -v
    Q = np.array([[v[0], -v[1]], [v[1], v[0]]])
    return EigenData2(rho_plus=rho_p, rho_minus=rho_m, Q=Q)


def structure_constants_from_theta(theta: Sym3) -> np.ndarray:
    """Structure constants c[a][b][c] of the coframe induced by a shape tensor.

    The coframe differential system d e_a = Theta_ab e_b ^ e_u translates into
    brackets [x_u, x_b] = Theta_ab x_a for spatial b, i.e. the only nonzero
    constants are c^a_{ub} = -c^a_{bu} = Theta_ab with b in (l, n).
    """
    th = theta.as_matrix()
    c = np.zeros((3, 3, 3))
    for a in range(3):
        for b in (L, N):
            c[a, U, b] = th[a, b]
            c[a, b, U] = -th[a, b]
    return c


def jacobi_residual(c: np.ndarray) -> float:
    """Max-norm residual of the Jacobi identity for c[a][b][c] = c^a_{bc}."""
    # [[x_a, x_b], x_c] summed cyclically; bracket composition contracts c twice
    comp = np.einsum("eab,dec->dabc", c, c)
    cyc = comp + np.transpose(comp, (0, 2, 3, 1)) + np.transpose(comp, (0, 3, 1, 2))
    return float(np.max(np.abs(cyc)))


def antisymmetry_residual(c: np.ndarray) -> float:
    return float(np.max(np.abs(c + np.transpose(c, (0, 2, 1)))))


def levi_civita(c: np.ndarray) -> np.ndarray:
    """Connection coefficients om[a][b][d] = <nabla_{x_a} x_b, x_d>.

    Koszul formula for left-invariant fields on an orthonormal frame:
    om[a][b][d] = (c_{ab,d} - c_{bd,a} + c_{da,b}) / 2 with c_{ab,d} = c^d_{ab}.
    Antisymmetric in (b, d) and torsion-free by construction.
    """
    low = np.transpose(c, (1, 2, 0))  # low[a][b][d] = c^d_{ab}
    # transpose (2,0,1) reads c_{bd,a}, transpose (1,2,0) reads c_{da,b}
    return 0.5 * (low - np.transpose(low, (2, 0, 1)) + np.transpose(low, (1, 2, 0)))


def first_structure_residual(c: np.ndarray) -> float:
    """Reconstruction error of c from the connection (first Cartan equation)."""
    om = levi_civita(c)
    rec = om - np.transpose(om, (1, 0, 2))  # c^d_{bc} = om[b][c][d] - om[c][b][d]
    rec = np.transpose(rec, (2, 0, 1))
    return float(np.max(np.abs(rec - c)))


def frame_ricci(eta: np.ndarray, c: np.ndarray, dc0: np.ndarray | None = None):
    """Ricci tensor in an orthonormal frame with diagonal metric ``eta``.

    ``c[a][b][d] = c^a_{bd}`` are the structure functions of the frame; when
    they depend on time through the frame direction 0, ``dc0`` must hold their
    derivative along the unit vector X_0 and the curvature picks up the
    corresponding derivative terms of the connection.  Components of tensors
    are otherwise constant along the frame.

    Returns (ricci, scalar) with all indices down.
    """
    eta = np.asarray(eta, dtype=float)
    dim = len(eta)

    def koszul(cc):
        # omega_{a b d} = <nabla_a X_b, X_d>, indices all down
        low = np.einsum("dab,de->abe", cc, np.diag(eta))
        return 0.5 * (low - np.transpose(low, (2, 0, 1)) + np.transpose(low, (1, 2, 0)))

    om_low = koszul(c)
    inv = np.diag(1.0 / eta)
    om = np.einsum("abd,de->abe", om_low, inv)  # om[a][b][e]: nabla_a X_b = om X_e

    # R(X_a, X_b) X_c = nabla_a nabla_b X_c - nabla_b nabla_a X_c - nabla_[a,b] X_c
    quad = np.einsum("bce,aef->abcf", om, om)
    riem = quad - np.transpose(quad, (1, 0, 2, 3))
    riem -= np.einsum("eab,ecf->abcf", c, om)

    if dc0 is not None:
        dom0 = np.einsum("abd,de->abe", koszul(dc0), inv)
        deriv = np.zeros_like(riem)
        deriv[0, :, :, :] += dom0
        deriv[:, 0, :, :] -= dom0
        riem += deriv

    # Ric_{bc} = R^a_{a b c}: component on X_a of R(X_a, X_b) X_c
    ric = np.einsum("abca->bc", riem)
    scalar = float(np.einsum("bc,bc->", ric, np.diag(1.0 / eta)))
    return ric, scalar


def ricci3(c: np.ndarray) -> tuple[Sym3, float]:
    """Ricci tensor and scalar curvature of the 3D left-invariant metric."""
    ric, scal = frame_ricci(np.ones(3), c)
    return Sym3.from_matrix(0.5 * (ric + ric.T)), scal


def divergence_sym(c: np.ndarray, s: Sym3) -> np.ndarray:
    """Frame components of div_h S for a constant-component symmetric S.

    (div S)_b = sum_a (nabla_a S)(x_a, x_b); for constant components the
    covariant derivative is pure connection contraction.
    """
    om = levi_civita(c)
    sm = s.as_matrix()
    div = -np.einsum("aae,eb->b", om, sm) - np.einsum("abe,ae->b", om, sm)
    return div
