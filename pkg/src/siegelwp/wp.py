"""Invariant metric weights at the identity coset and the period-map pullback study.

Tangent directions are real vector fields with the modes {-1, 0, 1} removed
(those generate the disc-automorphism stabilizer).  On such fields the
invariant Hermitian form and its real/imaginary parts are the mode sums

    h(u, v) = 2 pi sum_{n >= 2}    n (n^2 - 1) u_n conj(v_n),
    g(u, v) =   pi sum_{|n| >= 2} |n|(n^2 - 1) u_n conj(v_n),
    w(u, v) =  -i pi sum_{|n| >= 2}  n (n^2 - 1) u_n conj(v_n),

with h = g + i w.  The pullback study differentiates the period map along
flows of u by central differences and compares trace(conj(U) U) with
h(u, u); the ratio is mode-independent and is measured, never assumed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .circlemaps import VectorField, flow_map
from .composition import composition_matrix
from .siegel import DEFAULT_COND_CAP, period_point

STABILIZER_MODES = (-1, 0, 1)


def project_psu11(v: VectorField) -> VectorField:
    """Remove the modes -1, 0, 1 (the stabilizer directions); idempotent."""
    c = np.array(v.coeffs)
    B = v.band
    for n in STABILIZER_MODES:
        if abs(n) <= B:
            c[n + B] = 0.0
    return VectorField(c)


def _check_projected(v: VectorField, what: str) -> None:
    B = v.band
    scale = max(1.0, float(np.max(np.abs(v.coeffs))))
    for n in STABILIZER_MODES:
        if abs(n) <= B and abs(v.coeff(n)) > 1e-12 * scale:
            raise ValueError(
                f"{what} has stabilizer mode {n}; apply project_psu11 first"
            )


@dataclass(frozen=True)
class MetricForms:
    """Hermitian, Riemannian and symplectic values of the invariant metric."""

    h: complex
    g: float
    w: float


def wp_forms(u: VectorField, v: VectorField) -> MetricForms:
    """Evaluate the three invariant forms on projected real fields.

    Raises ValueError if either field still carries modes -1, 0, 1.
    """
    _check_projected(u, "first argument")
    _check_projected(v, "second argument")
    B = max(u.band, v.band)
    n = np.arange(-B, B + 1)
    cu = np.array([u.coeff(k) for k in n])
    cv = np.array([v.coeff(k) for k in n])
    prod = cu * np.conj(cv)
    weight = n.astype(float) * (n.astype(float) ** 2 - 1.0)
    h = 2.0 * math.pi * complex(np.sum(weight[n >= 2] * prod[n >= 2]))
    g_val = math.pi * complex(np.sum(np.abs(weight) * prod))
    w_val = -1j * math.pi * complex(np.sum(weight * prod))
    # Real fields give real g and w; tolerate only roundoff.
    scale = max(1.0, abs(g_val), abs(w_val))
    if abs(g_val.imag) > 1e-9 * scale or abs(w_val.imag) > 1e-9 * scale:
        raise ValueError("unexpected imaginary part; fields must be real")
    return MetricForms(h=h, g=float(g_val.real), w=float(w_val.real))


def tangent_period(
    u: VectorField,
    eps: float = 1e-3,
    N: int = 64,
    M: int | None = None,
    steps: int | None = None,
    richardson: bool = False,
    cond_cap: float = DEFAULT_COND_CAP,
) -> np.ndarray:
    """Derivative of the period map at the identity along the flow of u.

    Central difference (Z(eps) - Z(-eps)) / (2 eps) of period points of the
    time +-eps flows; ``richardson=True`` combines steps eps and eps/2 to
    cancel the leading quadratic error.
    """
    _check_projected(u, "tangent field")
    if eps <= 0:
        raise ValueError("eps must be positive")

    def central(e: float) -> np.ndarray:
        zp = period_point(composition_matrix(flow_map(u, e, steps), N, M), cond_cap).Z
        zm = period_point(composition_matrix(flow_map(u, -e, steps), N, M), cond_cap).Z
        return (zp - zm) / (2.0 * e)

    U = central(eps)
    if richardson:
        U = (4.0 * central(eps / 2.0) - U) / 3.0
    return U


def pullback_ratio(
    u: VectorField,
    eps: float = 1e-3,
    N: int = 64,
    M: int | None = None,
    steps: int | None = None,
    richardson: bool = False,
    cond_cap: float = DEFAULT_COND_CAP,
) -> float:
    """trace(conj(U) U) / h(u, u) for U = d(period map)(u).

    The field is rescaled to unit h-norm before differencing, which makes
    invariance under scalar rescaling of u exact up to roundoff.  Raises
    ValueError on h(u, u) <= 0 (null tangent).
    """
    h = wp_forms(u, u).h.real
    if h <= 0.0:
        raise ValueError("tangent field has no mass above mode 1")
    unit = u.scaled(1.0 / math.sqrt(h))
    U = tangent_period(unit, eps=eps, N=N, M=M, steps=steps,
                       richardson=richardson, cond_cap=cond_cap)
    Us = 0.5 * (U + U.T)
    return float(np.sum(np.abs(Us) ** 2))


@dataclass(frozen=True)
class PullbackStudy:
    """Pullback ratios across modes at step eps and at the refined step eps/2."""

    modes: tuple
    eps: float
    N: int
    M: int
    h_values: np.ndarray        # h(u_n, u_n) for u_n = cos(n x)
    ratios: np.ndarray          # at step eps
    ratios_refined: np.ndarray  # at step eps / 2

    @property
    def max_pairwise_deviation(self) -> float:
        r = self.ratios
        return float((np.max(r) - np.min(r)) / np.min(r))

    @property
    def refinement_drift(self) -> float:
        return float(np.max(np.abs(self.ratios - self.ratios_refined) / self.ratios_refined))

    @property
    def constant(self) -> float:
        """Best available estimate: quadratic-error cancellation of the two steps."""
        return float(np.mean((4.0 * self.ratios_refined - self.ratios) / 3.0))


def pullback_study(
    modes=(2, 3, 4, 5),
    eps: float = 1e-3,
    N: int = 64,
    M: int | None = None,
) -> PullbackStudy:
    """Measure the pullback ratio on cosine fields across the given modes."""
    M = 4 * N if M is None else int(M)
    h_vals, r_eps, r_half = [], [], []
    for n in modes:
        u = VectorField.cosine(int(n))
        h_vals.append(wp_forms(u, u).h.real)
        r_eps.append(pullback_ratio(u, eps=eps, N=N, M=M))
        r_half.append(pullback_ratio(u, eps=eps / 2.0, N=N, M=M))
    return PullbackStudy(
        modes=tuple(int(n) for n in modes),
        eps=float(eps),
        N=int(N),
        M=int(M),
        h_values=np.asarray(h_vals),
        ratios=np.asarray(r_eps),
        ratios_refined=np.asarray(r_half),
    )
