import numpy as np
import pytest

from conftest import family_flow
from siegelwp import (
    AliasingError,
    MoebiusMap,
    SymplecticBlockMatrix,
    action_composition_residual,
    block_decompose,
    block_relation_defects,
    composition_matrix,
    compose,
    hs_offdiag,
    symplectic_defect,
)


def test_rotation_matrix_is_diagonal_phases():
    theta = 0.7
    mat = composition_matrix(MoebiusMap.rotation(theta), 8)
    modes = np.concatenate([np.arange(-8, 0), np.arange(1, 9)])
    expected = np.diag(np.exp(1j * modes * theta))
    np.testing.assert_allclose(mat.A, expected, atol=1e-13)


def test_matrix_against_direct_quadrature():
    # same integral, summed the slow way
    m = family_flow(0, t=0.5)
    N, M = 4, 32
    mat = composition_matrix(m, N, M)
    x = 2.0 * np.pi * np.arange(M) / M
    phi = m.lift(x)
    modes = np.concatenate([np.arange(-N, 0), np.arange(1, N + 1)])
    raw = np.array(
        [[np.mean(np.exp(1j * (n * phi - k * x))) for n in modes] for k in modes]
    )
    scale = np.sqrt(np.abs(modes), dtype=float)
    np.testing.assert_allclose(mat.A, raw * scale[:, None] / scale[None, :], atol=1e-12)


def test_block_accessors_tile_the_matrix():
    mat = composition_matrix(family_flow(1, t=0.5), 6)
    g, h = mat.g(), mat.h()
    N = 6
    assert g.shape == (N, N) and h.shape == (N, N)
    # lower-right block is g; lower-left is h with mirrored columns
    np.testing.assert_array_equal(mat.A[N:, N:], g)
    np.testing.assert_array_equal(mat.A[N:, :N][:, ::-1], h)
    # reality ties the upper half to the lower half
    np.testing.assert_allclose(mat.A[:N, :N], np.conj(g)[::-1, ::-1], atol=1e-12)
    np.testing.assert_allclose(mat.A[:N, N:], np.conj(h)[::-1, :], atol=1e-12)


def test_reality_defect_small_for_real_maps():
    mat = composition_matrix(family_flow(2, t=1.0), 16)
    assert mat.reality_defect() < 1e-12


def test_block_decompose_returns_blocks():
    mat = composition_matrix(family_flow(3, t=0.5), 8)
    g, h, defect = block_decompose(mat)
    np.testing.assert_array_equal(g, mat.g())
    np.testing.assert_array_equal(h, mat.h())
    assert defect < 1e-12


def test_undersampling_rejected():
    with pytest.raises(AliasingError):
        composition_matrix(MoebiusMap.rotation(0.1), 8, 31)


def test_symplectic_defect_identity_is_zero():
    mat = composition_matrix(MoebiusMap.identity(), 8)
    assert symplectic_defect(mat) < 1e-14


def test_symplectic_defect_flow_small_on_interior():
    mat = composition_matrix(family_flow(4, t=1.0), 64, 256)
    assert symplectic_defect(mat, 16) < 1e-6


def test_symplectic_defect_interior_bounds_checked():
    mat = composition_matrix(MoebiusMap.identity(), 8)
    with pytest.raises(ValueError):
        symplectic_defect(mat, 3)  # > N // 4
    with pytest.raises(ValueError):
        symplectic_defect(mat, 0)


def test_block_relations():
    mat = composition_matrix(family_flow(5, t=0.5), 64, 512)
    gg, gh = block_relation_defects(mat, 16)
    assert gg < 1e-8
    assert gh < 1e-8


def test_hs_offdiag_zero_for_rotation():
    assert hs_offdiag(composition_matrix(MoebiusMap.rotation(1.3), 16)) < 1e-13
    assert hs_offdiag(composition_matrix(family_flow(6, t=0.5), 16)) > 1e-3


def test_composition_law_contravariant():
    phi, psi = family_flow(7, t=0.5), family_flow(8, t=0.5)
    res = action_composition_residual(phi, psi, 32, 256, 8)
    assert res < 1e-6
    # the other product order is wrong by a visible margin
    A_phi = composition_matrix(phi, 32, 256).A
    A_psi = composition_matrix(psi, 32, 256).A
    A_comp = composition_matrix(compose(phi, psi), 32, 256).A
    sl = slice(32 - 8, 32 + 8)
    good = np.linalg.norm((A_comp - A_psi @ A_phi)[sl, sl], 2)
    bad = np.linalg.norm((A_comp - A_phi @ A_psi)[sl, sl], 2)
    assert bad > 100 * good


def test_composition_exact_for_rotations():
    r1, r2 = MoebiusMap.rotation(0.9), MoebiusMap.rotation(2.2)
    assert action_composition_residual(r1, r2, 16) < 1e-12


def test_block_matrix_validates_shape():
    with pytest.raises(ValueError):
        SymplecticBlockMatrix(3, np.zeros((5, 5)))
