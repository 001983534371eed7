"""Matrices of the composition action f -> f o phi - mean on truncated Fourier space.

Matrices are expressed in the orthonormalized mode basis e^{inx}/sqrt(|n|),
1 <= |n| <= N.  In that basis the H^{1/2} inner product is the plain
Hermitian dot product, adjoints are conjugate transposes, and the symplectic
form acts through the diagonal multiplier -i sgn(n).  The block structure

    A = [[ g_bar, h_bar ],
         [ h    , g     ]]

(rows/columns ordered -N..-1 then 1..N, negative side mirrored) then carries
the exact relations g g* - h h* = 1 and g h^T = h g^T of a symplectic map
commuting with complex conjugation, up to truncation error that decays
spectrally for smooth maps.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .circlemaps import CircleMap, compose, uniform_grid
from .errors import AliasingError, MonotonicityError
from .fourier import modes_for

# Sampling must oversample the band at least this much.
MIN_OVERSAMPLE = 4


@dataclass(frozen=True)
class SymplecticBlockMatrix:
    """Truncated matrix of a composition operator in the orthonormal mode basis.

    ``A[i, j]`` couples output mode m(i) to input mode n(j) where the index
    order is -N..-1, 1..N.  ``g`` and ``h`` are returned with the negative
    side listed as -1..-N so that the bar operation on blocks is entrywise
    conjugation and block transposes are plain matrix transposes.
    """

    N: int
    A: np.ndarray

    def __post_init__(self):
        a = np.array(self.A, dtype=complex)
        if a.shape != (2 * self.N, 2 * self.N):
            raise ValueError(f"expected shape {(2 * self.N,) * 2}, got {a.shape}")
        a.setflags(write=False)
        object.__setattr__(self, "A", a)

    @property
    def modes(self) -> np.ndarray:
        return modes_for(self.N)

    def g(self) -> np.ndarray:
        """Positive-to-positive block, rows/cols indexed by modes 1..N."""
        return self.A[self.N:, self.N:]

    def h(self) -> np.ndarray:
        """Negative-to-positive block; column j corresponds to mode -(j+1)."""
        return self.A[self.N:, self.N - 1::-1]

    def g_conj_block(self) -> np.ndarray:
        """Negative-to-negative block in mirrored order (should equal conj(g))."""
        return self.A[self.N - 1::-1, self.N - 1::-1]

    def h_conj_block(self) -> np.ndarray:
        """Positive-to-negative block in mirrored order (should equal conj(h))."""
        return self.A[self.N - 1::-1, self.N:]

    def reality_defect(self) -> float:
        """Max deviation from A_{-m,-n} = conj(A_{m,n})."""
        return float(np.max(np.abs(self.A[::-1, ::-1] - np.conj(self.A))))

    def interior_indices(self, n_core: int) -> np.ndarray:
        return np.where(np.abs(self.modes) <= n_core)[0]


def composition_matrix(m: CircleMap, N: int, M: int | None = None) -> SymplecticBlockMatrix:
    """Matrix of f -> f o m - mean on modes 1 <= |n| <= N.

    Column n holds the coefficients of e^{i n m(x)}; they are computed by an
    FFT of length M >= 4N (default exactly 4N) of the sampled column, then
    rescaled into the orthonormal basis.  The sampled lift is checked to be
    strictly increasing.

    Raises
    ------
    AliasingError
        If M < 4N.
    MonotonicityError
        If the sampled lift is not strictly increasing.
    """
    if N < 1:
        raise ValueError("truncation order must be >= 1")
    M = MIN_OVERSAMPLE * N if M is None else int(M)
    if M < MIN_OVERSAMPLE * N:
        raise AliasingError(f"sampling M={M} undersamples band N={N}; need M >= {MIN_OVERSAMPLE * N}")
    x = uniform_grid(M)
    phi = np.asarray(m.lift(x), dtype=float)
    if not (np.all(np.diff(phi) > 0.0) and phi[0] + 2.0 * np.pi > phi[-1]):
        raise MonotonicityError("sampled lift is not strictly increasing")
    modes = modes_for(N)
    columns = np.exp(1j * np.outer(modes, phi))  # row per input mode n
    coeffs = np.fft.fft(columns, axis=1) / M     # coeffs[n_idx, k] = k-th Fourier coeff
    A_raw = coeffs[:, modes % M].T               # rows = output mode m
    scale = np.sqrt(np.abs(modes).astype(float))
    A = A_raw * (scale[:, None] / scale[None, :])
    return SymplecticBlockMatrix(N, A)


def block_decompose(mat: SymplecticBlockMatrix):
    """Return (g, h, reality_defect) for the operator's block structure."""
    return mat.g(), mat.h(), mat.reality_defect()


def _interior(mat: SymplecticBlockMatrix, n_core: int | None) -> np.ndarray:
    n_core = mat.N // 4 if n_core is None else int(n_core)
    if n_core < 1 or n_core > mat.N // 4:
        raise ValueError(f"interior band must satisfy 1 <= n_core <= N/4 = {mat.N // 4}")
    return mat.interior_indices(n_core)


def symplectic_defect(mat: SymplecticBlockMatrix, n_core: int | None = None) -> float:
    """Worst violation of Omega(A e_m, A e_n) = Omega(e_m, e_n) on interior modes.

    Interior means |m|, |n| <= n_core (default N/4), keeping the probe modes
    insulated from the truncation boundary.
    """
    idx = _interior(mat, n_core)
    d = -1j * np.sign(mat.modes).astype(complex)
    S = mat.A.conj().T @ (d[:, None] * mat.A) - np.diag(d)
    return float(np.max(np.abs(S[np.ix_(idx, idx)])))


def block_relation_defects(mat: SymplecticBlockMatrix, n_core: int | None = None):
    """Violations of g g* - h h* = 1 and g h^T = h g^T on interior modes."""
    idx = np.arange(mat.N // 4 if n_core is None else int(n_core))
    if idx.size < 1 or idx.size > mat.N // 4:
        raise ValueError(f"interior band must satisfy 1 <= n_core <= N/4 = {mat.N // 4}")
    g, h = mat.g(), mat.h()
    unit = g @ g.conj().T - h @ h.conj().T - np.eye(mat.N)
    sym = g @ h.T - h @ g.T
    unit_defect = float(np.max(np.abs(unit[np.ix_(idx, idx)])))
    sym_defect = float(np.max(np.abs(sym[np.ix_(idx, idx)])))
    return unit_defect, sym_defect


def hs_offdiag(mat: SymplecticBlockMatrix) -> float:
    """Frobenius norm of the two off-diagonal blocks (the Hilbert-Schmidt part).

    Vanishes (to roundoff) exactly for Moebius maps; finite and stabilizing
    in N for smooth maps.
    """
    N = mat.N
    upper = mat.A[:N, N:]
    lower = mat.A[N:, :N]
    return float(np.sqrt(np.sum(np.abs(upper) ** 2) + np.sum(np.abs(lower) ** 2)))


def action_composition_residual(
    phi: CircleMap,
    psi: CircleMap,
    N: int,
    M: int | None = None,
    n_core: int | None = None,
) -> float:
    """Operator-norm residual of the contravariant law A(phi o psi) = A(psi) A(phi).

    The difference matrix is restricted to interior modes (default |n| <= N/4)
    before taking the spectral norm, since band-edge columns are dominated by
    truncation.
    """
    A_comp = composition_matrix(compose(phi, psi), N, M)
    A_phi = composition_matrix(phi, N, M)
    A_psi = composition_matrix(psi, N, M)
    idx = _interior(A_comp, n_core)
    diff = A_comp.A - A_psi.A @ A_phi.A
    return float(np.linalg.norm(diff[np.ix_(idx, idx)], ord=2))
