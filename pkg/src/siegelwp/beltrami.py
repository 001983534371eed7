"""Beltrami coefficients on the unit disc and hyperbolic-L2 quadrature.

The disc carries the hyperbolic area density rho(z) = 4 (1 - |z|^2)^{-2}.
Fields are sampled on a polar product grid whose radial nodes are
Gauss-Legendre points in the variable t = r^2 (so the area element r dr
is absorbed exactly) and whose angular nodes are uniform.  For a harmonic
Beltrami differential mu = (1 - |z|^2)^2 conj(phi) with polynomial phi the
weighted integrand is again polynomial in t, hence integrated exactly once
the rule's degree suffices; tests lean on that.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass

import numpy as np

from .errors import DivergenceError, GridMismatchError

DEFAULT_RADIAL_NODES = 64
DEFAULT_ANGULAR_NODES = 256
# An integrand whose outermost radial shell exceeds this multiple of the
# median shell is treated as non-decaying.
DIVERGENCE_SHELL_FACTOR = 50.0


@dataclass(frozen=True)
class DiscGrid:
    """Polar quadrature grid: Gauss-Legendre in r^2 times uniform angles.

    ``radial_weights`` are normalized so that

        integral_D F dA  ~=  sum_{ij} F(r_i, theta_j) w_i (2 pi / n_theta).
    """

    r: np.ndarray
    theta: np.ndarray
    radial_weights: np.ndarray

    def __post_init__(self):
        for name in ("r", "theta", "radial_weights"):
            arr = np.array(getattr(self, name), dtype=float)
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)
        if self.r.shape != self.radial_weights.shape:
            raise ValueError("radial nodes and weights disagree")
        if np.any(self.r <= 0.0) or np.any(self.r >= 1.0):
            raise ValueError("radial nodes must lie strictly inside (0, 1)")

    @classmethod
    def polar(cls, n_r: int = DEFAULT_RADIAL_NODES, n_theta: int = DEFAULT_ANGULAR_NODES) -> "DiscGrid":
        if n_r < 1 or n_theta < 1:
            raise ValueError("need at least one node in each direction")
        nodes, weights = np.polynomial.legendre.leggauss(n_r)
        t = 0.5 * (nodes + 1.0)            # Gauss-Legendre on (0, 1)
        # integral_0^1 f(r) r dr = 1/2 integral_0^1 f(sqrt(t)) dt
        return cls(np.sqrt(t), 2.0 * math.pi * np.arange(n_theta) / n_theta, 0.25 * weights)

    @property
    def shape(self):
        return (self.r.size, self.theta.size)

    def points(self) -> np.ndarray:
        """Complex nodes z_{ij} = r_i e^{i theta_j}."""
        return self.r[:, None] * np.exp(1j * self.theta[None, :])

    def integrate(self, values: np.ndarray) -> complex:
        """Area integral of a sampled function (no density weight)."""
        values = np.asarray(values)
        if values.shape != self.shape:
            raise ValueError(f"expected samples of shape {self.shape}, got {values.shape}")
        dtheta = 2.0 * math.pi / self.theta.size
        return complex(np.sum(values * self.radial_weights[:, None]) * dtheta)

    def matches(self, other: "DiscGrid") -> bool:
        return (
            self.shape == other.shape
            and bool(np.allclose(self.r, other.r, rtol=0, atol=1e-13))
            and bool(np.allclose(self.theta, other.theta, rtol=0, atol=1e-13))
        )


@dataclass(frozen=True)
class HolomorphicPolynomial:
    """Polynomial phi(z) = sum_k c_k z^k with complex coefficients."""

    c: np.ndarray

    def __post_init__(self):
        c = np.atleast_1d(np.array(self.c, dtype=complex))
        if c.ndim != 1:
            raise ValueError("coefficients must be one-dimensional")
        c.setflags(write=False)
        object.__setattr__(self, "c", c)

    @property
    def degree(self) -> int:
        return self.c.size - 1

    def __call__(self, z):
        return np.polynomial.polynomial.polyval(np.asarray(z, dtype=complex), self.c)

    @classmethod
    def monomial(cls, k: int, coefficient: complex = 1.0) -> "HolomorphicPolynomial":
        c = np.zeros(k + 1, dtype=complex)
        c[k] = coefficient
        return cls(c)


@dataclass(frozen=True)
class BeltramiField:
    """Samples of a Beltrami coefficient on a DiscGrid; records sup |mu|."""

    grid: DiscGrid
    values: np.ndarray

    def __post_init__(self):
        v = np.array(self.values, dtype=complex)
        if v.shape != self.grid.shape:
            raise ValueError(f"expected samples of shape {self.grid.shape}, got {v.shape}")
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    @property
    def sup(self) -> float:
        return float(np.max(np.abs(self.values)))


def harmonic_beltrami_values(phi, z):
    """mu(z) = (1 - |z|^2)^2 conj(phi(z)) at arbitrary points."""
    z = np.asarray(z, dtype=complex)
    return (1.0 - np.abs(z) ** 2) ** 2 * np.conj(phi(z))


def harmonic_beltrami(phi, grid: DiscGrid | None = None) -> BeltramiField:
    """Sample the harmonic Beltrami differential of phi on a quadrature grid."""
    grid = DiscGrid.polar() if grid is None else grid
    return BeltramiField(grid, harmonic_beltrami_values(phi, grid.points()))


def _density(grid: DiscGrid) -> np.ndarray:
    return 4.0 / (1.0 - grid.r[:, None] ** 2) ** 2


def _guard_decay(grid: DiscGrid, integrand: np.ndarray) -> None:
    shells = np.mean(integrand, axis=1)
    median = float(np.median(shells))
    if float(shells[-1]) > DIVERGENCE_SHELL_FACTOR * median + 1e-300:
        raise DivergenceError(
            "integrand grows toward the boundary circle; hyperbolic integral diverges"
        )


def hyperbolic_l2(field: BeltramiField) -> float:
    """Squared hyperbolic L2 norm: integral of |mu|^2 rho over the disc.

    Raises DivergenceError when the weighted integrand fails to decay at
    the boundary (e.g. mu bounded away from zero near |z| = 1).
    """
    integrand = np.abs(field.values) ** 2 * _density(field.grid)
    _guard_decay(field.grid, integrand)
    return float(np.real(field.grid.integrate(integrand)))


def wp_pairing(mu: BeltramiField, nu: BeltramiField) -> complex:
    """Hermitian pairing integral of mu conj(nu) rho; Hermitian in its arguments.

    Both fields must be sampled on the same grid.
    """
    if mu.grid is not nu.grid and not mu.grid.matches(nu.grid):
        raise GridMismatchError("fields are sampled on different grids")
    integrand = mu.values * np.conj(nu.values) * _density(mu.grid)
    _guard_decay(mu.grid, np.abs(integrand))
    return mu.grid.integrate(integrand)


def monomial_norm_exact(k: int) -> float:
    """Closed form of hyperbolic_l2(harmonic_beltrami(z^k)): 8 pi / ((k+1)(k+2)(k+3))."""
    return 8.0 * math.pi / ((k + 1) * (k + 2) * (k + 3))


def linear_dilatation(alpha: complex, beta: complex):
    """Beltrami data of the linear map z -> alpha z + beta conj(z).

    Returns (mu, k, K) with mu = beta/alpha, k = |mu| and distortion
    K = (1 + k)/(1 - k); requires |beta| < |alpha| (orientation-preserving).
    """
    alpha = complex(alpha)
    beta = complex(beta)
    if abs(beta) >= abs(alpha):
        raise ValueError("need |beta| < |alpha| for an orientation-preserving map")
    mu = beta / alpha
    k = abs(mu)
    return mu, k, (1.0 + k) / (1.0 - k)


def beltrami_of_grid_map(grid: DiscGrid, dz: np.ndarray, dzbar: np.ndarray):
    """mu = dzbar / dz from sampled Wirtinger derivatives of a map.

    Returns (field, sup, quasiconformal) where ``quasiconformal`` records
    sup |mu| < 1.  Raises ValueError when dz vanishes somewhere, naming the
    first offending node.
    """
    dz = np.asarray(dz, dtype=complex)
    dzbar = np.asarray(dzbar, dtype=complex)
    if dz.shape != grid.shape or dzbar.shape != grid.shape:
        raise ValueError(f"derivative samples must have shape {grid.shape}")
    mag = np.abs(dz)
    if np.any(mag == 0.0):
        i, j = np.unravel_index(int(np.argmin(mag)), mag.shape)
        raise ValueError(
            f"dz vanishes at node r={grid.r[i]:.6f}, theta={grid.theta[j]:.6f}"
        )
    field = BeltramiField(grid, dzbar / dz)
    return field, field.sup, bool(field.sup < 1.0)


def field_to_csv_text(field: BeltramiField) -> str:
    """Serialize samples as rows r, theta, re, im (full product grid)."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["r", "theta", "re", "im"])
    for i, r in enumerate(field.grid.r):
        for j, th in enumerate(field.grid.theta):
            v = complex(field.values[i, j])
            writer.writerow([repr(float(r)), repr(float(th)), repr(v.real), repr(v.imag)])
    return buf.getvalue()


def field_from_csv_text(text: str) -> BeltramiField:
    """Rebuild a field from its CSV serialization.

    The nodes must form the standard Gauss-Legendre-in-r^2 product grid
    (that is how the quadrature weights are reconstructed); anything else
    is rejected.
    """
    rows = list(csv.reader(io.StringIO(text)))
    if not rows or rows[0] != ["r", "theta", "re", "im"]:
        raise ValueError("expected header r,theta,re,im")
    data = np.array([[float(c) for c in row] for row in rows[1:]], dtype=float)
    if data.size == 0:
        raise ValueError("no samples")
    r_nodes = np.unique(data[:, 0])
    th_nodes = np.unique(data[:, 1])
    if r_nodes.size * th_nodes.size != data.shape[0]:
        raise ValueError("samples do not form a full product grid")
    grid = DiscGrid.polar(r_nodes.size, th_nodes.size)
    if not (
        np.allclose(np.sort(r_nodes), grid.r, rtol=0, atol=1e-10)
        and np.allclose(np.sort(th_nodes), grid.theta, rtol=0, atol=1e-10)
    ):
        raise ValueError("nodes are not the standard Gauss-Legendre polar layout")
    values = np.zeros(grid.shape, dtype=complex)
    for row in data:
        i = int(np.argmin(np.abs(grid.r - row[0])))
        j = int(np.argmin(np.abs(grid.theta - row[1])))
        values[i, j] = complex(row[2], row[3])
    return BeltramiField(grid, values)
