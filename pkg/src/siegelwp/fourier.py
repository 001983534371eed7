"""Truncated Fourier model of the mean-zero H^{1/2} space on the circle.

A vector is the trigonometric polynomial u(x) = sum_{1<=|n|<=N} u_n e^{inx}.
The constant mode is quotiented away and never stored.  The inner product
weights mode n by |n|, the Hilbert transform is the Fourier multiplier
i*sgn(n), and the symplectic pairing is

    Omega(u, v) = -i sum_n n u_n conj(v_n) = <u, J v>.

Real-valued functions satisfy u_{-n} = conj(u_n); vectors carry an optional
``is_real`` flag that is validated at construction.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import AliasingError

# Relative tolerance for the u_{-n} = conj(u_n) check.
REAL_SYMMETRY_RTOL = 1e-10


def modes_for(N: int) -> np.ndarray:
    """Mode indices in storage order: -N..-1 followed by 1..N (no zero)."""
    return np.concatenate([np.arange(-N, 0), np.arange(1, N + 1)])


@dataclass(frozen=True)
class FourierVector:
    """Coefficients u_n for 1 <= |n| <= N of a mean-zero circle function.

    ``coeffs[k]`` holds mode ``k - N`` for ``k < N`` and mode ``k - N + 1``
    otherwise.  Coefficients are immutable after construction.
    """

    N: int
    coeffs: np.ndarray
    is_real: bool = False

    def __post_init__(self):
        if self.N < 1:
            raise ValueError("truncation order must be >= 1")
        c = np.array(self.coeffs, dtype=complex)
        if c.shape != (2 * self.N,):
            raise ValueError(f"expected {2 * self.N} coefficients, got shape {c.shape}")
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)
        if self.is_real:
            defect = float(np.max(np.abs(c[::-1] - np.conj(c))))
            scale = max(1.0, float(np.max(np.abs(c))))
            if defect > REAL_SYMMETRY_RTOL * scale:
                raise ValueError(f"is_real violated: conjugate-symmetry defect {defect:.3e}")

    @property
    def modes(self) -> np.ndarray:
        return modes_for(self.N)

    def coeff(self, n: int) -> complex:
        """Coefficient of e^{inx}."""
        if n == 0 or abs(n) > self.N:
            raise IndexError(f"mode {n} outside 1 <= |n| <= {self.N}")
        k = n + self.N if n < 0 else n + self.N - 1
        return complex(self.coeffs[k])

    def padded(self, N: int) -> "FourierVector":
        """Same function viewed at a larger truncation order."""
        if N < self.N:
            raise ValueError("padding cannot shrink the band")
        if N == self.N:
            return self
        c = np.zeros(2 * N, dtype=complex)
        c[N - self.N:N] = self.coeffs[:self.N]
        c[N:N + self.N] = self.coeffs[self.N:]
        return FourierVector(N, c, is_real=self.is_real)

    @classmethod
    def zeros(cls, N: int) -> "FourierVector":
        return cls(N, np.zeros(2 * N, dtype=complex), is_real=True)

    @classmethod
    def from_modes(cls, entries: dict, N: int | None = None, is_real: bool = False) -> "FourierVector":
        if not entries:
            raise ValueError("no modes given")
        top = max(abs(int(n)) for n in entries)
        if N is None:
            N = top
        elif N < top:
            raise ValueError(f"mode {top} exceeds requested order {N}")
        c = np.zeros(2 * N, dtype=complex)
        for n, val in entries.items():
            n = int(n)
            if n == 0:
                raise ValueError("mode 0 is quotiented away")
            k = n + N if n < 0 else n + N - 1
            c[k] = val
        return cls(N, c, is_real=is_real)

    @classmethod
    def cosine(cls, n: int, N: int | None = None, amplitude: float = 1.0) -> "FourierVector":
        half = amplitude / 2.0
        return cls.from_modes({n: half, -n: half}, N=N, is_real=True)

    @classmethod
    def sine(cls, n: int, N: int | None = None, amplitude: float = 1.0) -> "FourierVector":
        half = amplitude / 2.0j
        return cls.from_modes({n: half, -n: -half}, N=N, is_real=True)

    @classmethod
    def exponential(cls, n: int, N: int | None = None) -> "FourierVector":
        return cls.from_modes({n: 1.0}, N=N)


def _aligned(u: FourierVector, v: FourierVector):
    N = max(u.N, v.N)
    return u.padded(N).coeffs, v.padded(N).coeffs, modes_for(N)


def h_half_inner(u: FourierVector, v: FourierVector) -> complex:
    """Hermitian inner product sum_n |n| u_n conj(v_n)."""
    cu, cv, m = _aligned(u, v)
    return complex(np.sum(np.abs(m) * cu * np.conj(cv)))


def hilbert_transform(u: FourierVector) -> FourierVector:
    """Fourier multiplier i*sgn(n): the compatible complex structure J.

    J is an isometry of the inner product and squares to -identity
    coefficient-exactly (no floating error beyond sign flips).
    """
    return FourierVector(u.N, 1j * np.sign(u.modes) * u.coeffs, is_real=u.is_real)


def symplectic_form(u: FourierVector, v: FourierVector) -> complex:
    """Omega(u, v) = -i sum_n n u_n conj(v_n).

    Equals ``h_half_inner(u, hilbert_transform(v))``; real and antisymmetric
    on real vectors.
    """
    cu, cv, m = _aligned(u, v)
    return complex(-1j * np.sum(m * cu * np.conj(cv)))


def project(u: FourierVector, sign) -> FourierVector:
    """Spectral projection onto positive (+1) or negative (-1) modes."""
    s = {"+": 1, "-": -1, 1: 1, -1: -1}.get(sign)
    if s is None:
        raise ValueError("sign must be +1/-1 (or '+'/'-')")
    keep = np.sign(u.modes) == s
    return FourierVector(u.N, np.where(keep, u.coeffs, 0.0 + 0.0j))


def synthesize(u: FourierVector, M: int | None = None) -> np.ndarray:
    """Values of u on the uniform grid x_j = 2 pi j / M, j = 0..M-1.

    Exact trigonometric evaluation for any M >= 1 (modes are reduced mod M
    before the inverse FFT, which reproduces pointwise values exactly).
    """
    M = 4 * u.N if M is None else int(M)
    if M < 1:
        raise ValueError("need at least one sample point")
    spectrum = np.zeros(M, dtype=complex)
    np.add.at(spectrum, u.modes % M, u.coeffs)
    return M * np.fft.ifft(spectrum)


def analyze(samples, N: int) -> FourierVector:
    """Recover modes 1 <= |n| <= N from uniform samples; the mean is dropped.

    Raises
    ------
    AliasingError
        If fewer than 2N + 1 samples are supplied.
    """
    f = np.asarray(samples, dtype=complex)
    if f.ndim != 1:
        raise ValueError("samples must be one-dimensional")
    M = f.shape[0]
    if M < 2 * N + 1:
        raise AliasingError(f"{M} samples cannot resolve modes up to {N}; need >= {2 * N + 1}")
    c = np.fft.fft(f) / M
    return FourierVector(N, c[modes_for(N) % M])
