"""Shared builders for the test suite.

The flow family below is the reference workload for the operator-level
checks: band-8 real fields with geometrically decaying coefficients,
rescaled to a fixed sup norm.  Strong enough to be off-diagonal,
tame enough that mode truncation converges.
"""

import numpy as np

from siegelwp import FourierVector, VectorField, flow_map

FAMILY_BAND = 8
FAMILY_DECAY = 0.6
FAMILY_SUP = 0.3


def family_field(seed: int, decay: float = FAMILY_DECAY, sup: float = FAMILY_SUP) -> VectorField:
    rng = np.random.default_rng(seed)
    entries = {
        n: decay ** n * rng.uniform(0.5, 1.0) * np.exp(1j * rng.uniform(0.0, 2.0 * np.pi))
        for n in range(1, FAMILY_BAND + 1)
    }
    field = VectorField.from_positive_modes(entries)
    return field.scaled(sup / field.sup_norm())


def family_flow(seed: int, t: float = 1.0, decay: float = FAMILY_DECAY, sup: float = FAMILY_SUP):
    return flow_map(family_field(seed, decay, sup), t)


def random_vector(rng: np.random.Generator, N: int, scale: float = 1.0) -> FourierVector:
    c = scale * (rng.standard_normal(2 * N) + 1j * rng.standard_normal(2 * N))
    return FourierVector(N, c)


def random_real_vector(rng: np.random.Generator, N: int, scale: float = 1.0) -> FourierVector:
    pos = scale * (rng.standard_normal(N) + 1j * rng.standard_normal(N))
    return FourierVector(N, np.concatenate([np.conj(pos[::-1]), pos]), is_real=True)


def omega_direct(u: FourierVector, v: FourierVector) -> complex:
    # Slow mode-by-mode oracle, independent of the vectorized implementation.
    total = 0.0 + 0.0j
    N = max(u.N, v.N)
    up, vp = u.padded(N), v.padded(N)
    for n in range(-N, N + 1):
        if n == 0:
            continue
        total += -1j * n * up.coeff(n) * np.conj(vp.coeff(n))
    return total


def random_su11(rng: np.random.Generator, t_max: float = 1.5):
    t = rng.uniform(0.0, t_max)
    a = np.cosh(t) * np.exp(1j * rng.uniform(0.0, 2.0 * np.pi))
    b = np.sinh(t) * np.exp(1j * rng.uniform(0.0, 2.0 * np.pi))
    return a, b
