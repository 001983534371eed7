"""The truncated Siegel disc: symmetric contractions and their homogeneous geometry.

A point is a symmetric N x N complex matrix Z with I - Z conj(Z)^T positive
definite, written in the orthonormal mode basis shared with
``composition.SymplecticBlockMatrix``.  Block matrices act by generalized
fractional-linear transformations

    Z -> (g Z + h)(conj(h) Z + conj(g))^{-1},

and the composition operator of a circle map is sent to its period point
Z = h conj(g)^{-1}, the image of 0 under the map's own action.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .composition import SymplecticBlockMatrix
from .errors import IllConditionedError

# Directions of the denominator conditioned worse than this are dropped
# from the solve; the residual check below decides whether that loss matters.
DEFAULT_COND_CAP = 1e6
# Regularized solves must reproduce the numerator this well, in Frobenius
# norm, absolutely or relative to its size.  Dropped directions that hold
# a sub-0.1% share of the numerator are truncation tail, not failure.
RESIDUAL_ATOL = 1e-8
RESIDUAL_RTOL = 1e-3
# Spectral floor for certifying I - Z Z* > 0.
POSITIVITY_TOL = 1e-10


@dataclass(frozen=True)
class SiegelPoint:
    """Symmetric contraction Z; row i / column j correspond to modes i+1 / -(j+1)."""

    N: int
    Z: np.ndarray

    def __post_init__(self):
        z = np.array(self.Z, dtype=complex)
        if z.shape != (self.N, self.N):
            raise ValueError(f"expected shape {(self.N, self.N)}, got {z.shape}")
        z.setflags(write=False)
        object.__setattr__(self, "Z", z)

    @classmethod
    def origin(cls, N: int) -> "SiegelPoint":
        return cls(N, np.zeros((N, N), dtype=complex))


@dataclass(frozen=True)
class DiscDiagnostics:
    """Membership certificate: symmetry defect, contraction margin, size."""

    symmetry_defect: float      # ||Z - Z^T||_F / max(1, ||Z||_F)
    min_eigenvalue: float       # smallest eigenvalue of I - Z Z*
    hs_norm: float              # ||Z||_F

    @property
    def inside(self) -> bool:
        return self.min_eigenvalue > POSITIVITY_TOL


def _as_matrix(point) -> np.ndarray:
    if isinstance(point, SiegelPoint):
        return point.Z
    z = np.asarray(point, dtype=complex)
    if z.ndim != 2 or z.shape[0] != z.shape[1]:
        raise ValueError("expected a square matrix or SiegelPoint")
    return z


def _guarded_right_inverse(num: np.ndarray, den: np.ndarray, cond_cap: float, what: str) -> np.ndarray:
    """Solve X den = num, dropping singular directions beyond ``cond_cap``.

    Hard mode truncation can make ``den`` numerically rank-deficient even
    though the untruncated operator is boundedly invertible; the deficient
    directions carry only mass that escaped the retained band.  They are
    excised from the solve, and an IllConditionedError is raised only when
    the excised part actually mattered, i.e. when X den fails to reproduce
    num to RESIDUAL_ATOL or RESIDUAL_RTOL * ||num||_F.
    """
    if not np.all(np.isfinite(den)) or not np.all(np.isfinite(num)):
        raise IllConditionedError(f"{what}: non-finite entries")
    U, s, Vh = np.linalg.svd(den)
    if s[0] == 0.0:
        raise IllConditionedError(f"{what} is identically zero")
    keep = s > s[0] / cond_cap
    inv = Vh.conj().T[:, keep] @ ((1.0 / s[keep])[:, None] * U.conj().T[keep, :])
    X = num @ inv
    residual = float(np.linalg.norm(X @ den - num))
    bound = max(RESIDUAL_ATOL, RESIDUAL_RTOL * float(np.linalg.norm(num)))
    if residual > bound:
        raise IllConditionedError(
            f"{what}: dropping directions past condition {cond_cap:.1e} leaves "
            f"residual {residual:.3e} (bound {bound:.3e}); the map is too far "
            f"from the identity for this truncation"
        )
    return X


def su11_block(a: complex, b: complex) -> SymplecticBlockMatrix:
    """Rank-one block matrix of a disc automorphism, |a|^2 - |b|^2 = 1."""
    a = complex(a)
    b = complex(b)
    det = abs(a) ** 2 - abs(b) ** 2
    if abs(det - 1.0) > 1e-10 * max(1.0, abs(a) ** 2 + abs(b) ** 2):
        raise ValueError(f"|a|^2 - |b|^2 = {det!r}, expected 1")
    A = np.array([[np.conj(a), np.conj(b)], [b, a]], dtype=complex)
    return SymplecticBlockMatrix(1, A)


def period_point(mat: SymplecticBlockMatrix, cond_cap: float = DEFAULT_COND_CAP) -> SiegelPoint:
    """Z = h conj(g)^{-1}: where the operator's action sends the origin.

    Left composition of the underlying map by a disc automorphism leaves the
    result unchanged, so this descends to cosets.

    Raises
    ------
    IllConditionedError
        If the solve against conj(g), regularized at ``cond_cap``, cannot
        reproduce h within tolerance.
    """
    g, h = mat.g(), mat.h()
    Z = _guarded_right_inverse(h, np.conj(g), cond_cap, "conj(g)")
    return SiegelPoint(mat.N, Z)


def disc_membership(point) -> DiscDiagnostics:
    """Certify symmetry and the contraction bound I - Z Z* > 0."""
    Z = _as_matrix(point)
    hs = float(np.linalg.norm(Z))
    sym = float(np.linalg.norm(Z - Z.T) / max(1.0, hs))
    gram = np.eye(Z.shape[0]) - Z @ Z.conj().T
    min_eig = float(np.min(np.linalg.eigvalsh(gram)))
    return DiscDiagnostics(symmetry_defect=sym, min_eigenvalue=min_eig, hs_norm=hs)


def moebius_action(
    mat: SymplecticBlockMatrix, point, cond_cap: float = DEFAULT_COND_CAP
) -> SiegelPoint:
    """Generalized fractional-linear action Z -> (g Z + h)(conj(h) Z + conj(g))^{-1}."""
    Z = _as_matrix(point)
    g, h = mat.g(), mat.h()
    if Z.shape[0] != mat.N:
        raise ValueError(f"point has size {Z.shape[0]}, operator expects {mat.N}")
    num = g @ Z + h
    den = np.conj(h) @ Z + np.conj(g)
    out = _guarded_right_inverse(num, den, cond_cap, "denominator conj(h) Z + conj(g)")
    return SiegelPoint(mat.N, out)


def metric_at_zero(U, V, sym_rtol: float = 1e-8) -> complex:
    """Invariant Hermitian pairing trace(conj(V) U) of tangent matrices at Z = 0.

    Tangents must be (nearly) symmetric; they are symmetrized before the
    trace is taken.  Positive definite: the self-pairing is the squared
    Frobenius norm.
    """
    U = np.asarray(U, dtype=complex)
    V = np.asarray(V, dtype=complex)
    for name, T in (("U", U), ("V", V)):
        defect = np.linalg.norm(T - T.T) / max(1.0, np.linalg.norm(T))
        if defect > sym_rtol:
            raise ValueError(f"tangent {name} is not symmetric (relative defect {defect:.3e})")
    Us = 0.5 * (U + U.T)
    Vs = 0.5 * (V + V.T)
    return complex(np.trace(Vs.conj() @ Us))


def su11_orbit(a: complex, b: complex, z):
    """Scalar disc action (a z + b)/(conj(b) z + conj(a)) for |a|^2 - |b|^2 = 1."""
    a = complex(a)
    b = complex(b)
    det = abs(a) ** 2 - abs(b) ** 2
    if abs(det - 1.0) > 1e-10 * max(1.0, abs(a) ** 2 + abs(b) ** 2):
        raise ValueError(f"|a|^2 - |b|^2 = {det!r}, expected 1")
    z = np.asarray(z, dtype=complex)
    if np.any(np.abs(z) >= 1.0):
        raise ValueError("orbit points must lie strictly inside the unit disc")
    out = (a * z + b) / (np.conj(b) * z + np.conj(a))
    return complex(out) if out.ndim == 0 else out


def hyperbolic_metric(z: complex, u: complex, v: complex) -> complex:
    """Poincare pairing u conj(v) / (1 - |z|^2)^2 on the unit disc."""
    z = complex(z)
    if abs(z) >= 1.0:
        raise ValueError("base point must lie strictly inside the unit disc")
    return complex(u * np.conj(v) / (1.0 - abs(z) ** 2) ** 2)
