import numpy as np
import pytest

from conftest import family_flow, random_su11
from siegelwp import (
    IllConditionedError,
    MoebiusMap,
    SiegelPoint,
    SymplecticBlockMatrix,
    composition_matrix,
    compose,
    disc_membership,
    hyperbolic_metric,
    metric_at_zero,
    moebius_action,
    period_point,
    su11_block,
    su11_orbit,
)


def block_matrix(g, h):
    # assemble [[conj g, conj h], [h, g]] with the mirrored index order
    g = np.asarray(g, dtype=complex)
    h = np.asarray(h, dtype=complex)
    N = g.shape[0]
    A = np.zeros((2 * N, 2 * N), dtype=complex)
    A[N:, N:] = g
    A[N:, :N] = h[:, ::-1]
    A[:N, :N] = np.conj(g)[::-1, ::-1]
    A[:N, N:] = np.conj(h)[::-1, :]
    return SymplecticBlockMatrix(N, A)


# --- period points -----------------------------------------------------------


def test_period_point_identity_and_rotation_vanish():
    for m in (MoebiusMap.identity(), MoebiusMap.rotation(0.9)):
        Z = period_point(composition_matrix(m, 8)).Z
        assert np.max(np.abs(Z)) < 1e-13


def test_period_point_moebius_vanishes():
    m = MoebiusMap(np.cosh(0.4) * np.exp(0.3j), np.sinh(0.4) * np.exp(-0.9j))
    Z = period_point(composition_matrix(m, 32, 512)).Z
    assert np.linalg.norm(Z) < 1e-8


def test_period_point_flow_inside_disc():
    Z = period_point(composition_matrix(family_flow(0, t=0.5), 32, 256))
    d = disc_membership(Z)
    assert d.symmetry_defect < 1e-6
    assert 0.0 < d.min_eigenvalue <= 1.0
    assert d.hs_norm > 1e-3


def test_period_point_constant_on_left_moebius_cosets():
    phi = family_flow(1, t=0.5)
    m = MoebiusMap(np.cosh(0.3) * np.exp(0.2j), np.sinh(0.3) * np.exp(1.0j))
    Z_phi = period_point(composition_matrix(phi, 64, 1024)).Z
    Z_comp = period_point(composition_matrix(compose(m, phi), 64, 1024)).Z
    assert np.linalg.norm(Z_comp - Z_phi) < 1e-6


def test_period_point_unresolvable_raises():
    g = np.array([[1.0, 0.0], [0.0, 1e-12]])
    h = np.array([[0.0, 0.0], [0.0, 1.0]])
    with pytest.raises(IllConditionedError):
        period_point(block_matrix(g, h))


def test_period_point_tolerates_noise_in_dead_directions():
    g = np.array([[1.0, 0.0], [0.0, 1e-12]])
    h = np.array([[0.0, 0.0], [0.0, 1e-13]])
    Z = period_point(block_matrix(g, h)).Z
    assert np.linalg.norm(Z) < 1e-8


# --- the disc action ---------------------------------------------------------


def test_action_of_identity_fixes_points():
    Z0 = SiegelPoint(2, np.array([[0.2, 0.1j], [0.1j, -0.3]]))
    ident = block_matrix(np.eye(2), np.zeros((2, 2)))
    out = moebius_action(ident, Z0)
    np.testing.assert_allclose(out.Z, Z0.Z, atol=1e-14)


def test_action_at_origin_gives_period_point():
    mat = composition_matrix(family_flow(2, t=0.5), 16, 128)
    direct = period_point(mat).Z
    via_action = moebius_action(mat, SiegelPoint.origin(16)).Z
    np.testing.assert_allclose(via_action, direct, atol=1e-12)


def test_action_group_law():
    A1 = composition_matrix(family_flow(3, t=0.5), 16, 128)
    A2 = composition_matrix(family_flow(4, t=0.5), 16, 128)
    prod = SymplecticBlockMatrix(16, A1.A @ A2.A)
    lhs = moebius_action(A1, moebius_action(A2, SiegelPoint.origin(16))).Z
    rhs = moebius_action(prod, SiegelPoint.origin(16)).Z
    assert np.linalg.norm(lhs - rhs) < 1e-10


def test_action_preserves_membership():
    A = composition_matrix(family_flow(5, t=0.5), 64, 256)
    Z0 = period_point(composition_matrix(family_flow(6, t=0.5), 64, 256))
    d = disc_membership(moebius_action(A, Z0))
    assert d.symmetry_defect < 1e-6
    assert d.min_eigenvalue > 0.0


def test_action_size_mismatch_rejected():
    mat = composition_matrix(MoebiusMap.rotation(0.1), 4)
    with pytest.raises(ValueError):
        moebius_action(mat, SiegelPoint.origin(5))


# --- diagnostics -------------------------------------------------------------


def test_membership_of_origin():
    d = disc_membership(SiegelPoint.origin(4))
    assert d.symmetry_defect == 0.0
    assert abs(d.min_eigenvalue - 1.0) < 1e-14
    assert d.hs_norm == 0.0
    assert d.inside


def test_membership_rank_one_half():
    Z = np.zeros((3, 3), dtype=complex)
    Z[0, 0] = 0.5
    d = disc_membership(Z)
    assert abs(d.min_eigenvalue - 0.75) < 1e-14
    assert d.inside


def test_membership_outside():
    Z = np.eye(2, dtype=complex) * 1.5
    assert not disc_membership(Z).inside


# --- the metric at the origin ------------------------------------------------


def test_metric_unit_entries():
    E11 = np.zeros((3, 3)); E11[0, 0] = 1.0
    E12 = np.zeros((3, 3)); E12[0, 1] = E12[1, 0] = 1.0
    assert metric_at_zero(E11, E11) == 1.0
    assert metric_at_zero(E12, E12) == 2.0
    assert metric_at_zero(E11, E12) == 0.0


def test_metric_positive_definite():
    rng = np.random.default_rng(12)
    for _ in range(20):
        U = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
        U = U + U.T
        val = metric_at_zero(U, U)
        assert val.real > 0.0
        assert abs(val.imag) < 1e-12 * val.real
        assert abs(val - np.linalg.norm(U) ** 2) < 1e-10 * val.real


def test_metric_rejects_asymmetric():
    U = np.array([[0.0, 1.0], [0.0, 0.0]])
    with pytest.raises(ValueError):
        metric_at_zero(U, U)


def test_metric_unitary_congruence_invariance():
    rng = np.random.default_rng(13)
    for _ in range(10):
        U = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
        V = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
        U, V = U + U.T, V + V.T
        q, _ = np.linalg.qr(rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4)))
        before = metric_at_zero(U, V)
        after = metric_at_zero(q @ U @ q.T, q @ V @ q.T)
        assert abs(after - before) < 1e-10 * max(1.0, abs(before))


# --- the rank-one reduction --------------------------------------------------


def test_su11_block_layout():
    blk = su11_block(np.cosh(0.3), np.sinh(0.3) * 1j)
    assert blk.g()[0, 0] == np.cosh(0.3)
    assert blk.h()[0, 0] == np.sinh(0.3) * 1j
    assert blk.reality_defect() == 0.0
    with pytest.raises(ValueError):
        su11_block(1.0, 1.0)


def test_rank_one_action_equals_scalar_orbit():
    rng = np.random.default_rng(14)
    worst = 0.0
    for _ in range(200):
        a, b = random_su11(rng)
        z = np.sqrt(rng.uniform()) * 0.97 * np.exp(1j * rng.uniform(0, 2 * np.pi))
        via_matrix = moebius_action(su11_block(a, b), SiegelPoint(1, [[z]])).Z[0, 0]
        worst = max(worst, abs(via_matrix - su11_orbit(a, b, z)))
    assert worst < 1e-12


def test_su11_orbit_basics():
    assert su11_orbit(1.0, 0.0, 0.3 + 0.1j) == 0.3 + 0.1j
    t = 0.8
    assert abs(su11_orbit(np.cosh(t), np.sinh(t), 0.0) - np.tanh(t)) < 1e-15
    rng = np.random.default_rng(15)
    for _ in range(200):
        a, b = random_su11(rng)
        z = np.sqrt(rng.uniform()) * 0.99 * np.exp(1j * rng.uniform(0, 2 * np.pi))
        assert abs(su11_orbit(a, b, z)) < 1.0
    with pytest.raises(ValueError):
        su11_orbit(1.0, 0.0, 1.0)
    with pytest.raises(ValueError):
        su11_orbit(2.0, 0.0, 0.1)


def test_hyperbolic_metric_values_and_invariance():
    assert hyperbolic_metric(0.0, 1.0, 1.0) == 1.0
    assert abs(hyperbolic_metric(1.0 / np.sqrt(2.0), 1.0, 1.0) - 4.0) < 1e-12
    with pytest.raises(ValueError):
        hyperbolic_metric(1.0, 1.0, 1.0)
    rng = np.random.default_rng(16)
    for _ in range(100):
        a, b = random_su11(rng)
        z = np.sqrt(rng.uniform()) * 0.9 * np.exp(1j * rng.uniform(0, 2 * np.pi))
        u = rng.standard_normal() + 1j * rng.standard_normal()
        v = rng.standard_normal() + 1j * rng.standard_normal()
        dphi = 1.0 / (np.conj(b) * z + np.conj(a)) ** 2
        before = hyperbolic_metric(z, u, v)
        after = hyperbolic_metric(su11_orbit(a, b, z), dphi * u, dphi * v)
        assert abs(after - before) < 1e-10 * max(1.0, abs(before))
