"""Surface construction, the closed-form point map, area forms, and tangents.

The frozen values come from the scalar and equal-singular-value cases where
everything reduces to hyperbolic one-liners; the generic cases are pinned to
the all-purpose matrix exponential and to finite differences.
"""

import numpy as np
import numpy.testing as npt
import pytest

from holonomy_forge import (
    DimensionError,
    Signature,
    TrivialInputError,
    build_surface,
    exp_surface_point,
    expm_generic,
    hat_embed,
    is_pseudo_unitary,
    killing_inner,
    lie_generators,
    omega0_potential,
    omega1_density,
    omega1_potential,
    point_separation_check,
    surface_point,
    tangent_pushforwards,
    totally_geodesic_check,
)
from holonomy_forge.algebra import algebra_residual
from holonomy_forge.surface import omega1_potential_grid


def _random_surface(seed, n=2, m=3, scale=1.7):
    rng = np.random.default_rng(seed)
    x = rng.standard_normal((m, n)) + 1j * rng.standard_normal((m, n))
    x *= scale / np.linalg.norm(x)
    return build_surface(Signature(n=n, m=m), x)


def test_build_surface_rejects_zero():
    with pytest.raises(TrivialInputError):
        build_surface(Signature(2, 2), np.zeros((2, 2), dtype=complex))


def test_build_surface_normalization():
    s = _random_surface(0)
    assert abs(float(np.sum(s.sigma**2)) - 1.0) < 1e-14
    npt.assert_allclose(s.x_norm, np.linalg.norm(s.x), rtol=1e-14)
    npt.assert_allclose(s.w * s.x_norm, s.x, atol=1e-15)
    assert s.sigma.shape == (2,)


def test_grouping_frozen():
    s = build_surface(Signature(2, 2), np.diag([1.0, 2.0]).astype(complex))
    assert s.rank == 2 and s.p == 2
    assert s.groups == ((0,), (1,))
    npt.assert_allclose(s.group_sigma, [2.0 / np.sqrt(5.0), 1.0 / np.sqrt(5.0)], rtol=1e-15)

    s_eq = build_surface(Signature(2, 2), np.eye(2, dtype=complex))
    assert s_eq.p == 1 and s_eq.groups == ((0, 1),)
    npt.assert_allclose(s_eq.group_sigma, [1.0 / np.sqrt(2.0)], rtol=1e-15)


def test_point_map_matches_generic_exponential():
    for seed, n, m in ((1, 2, 3), (2, 3, 2), (3, 1, 4), (4, 4, 4)):
        s = _random_surface(seed, n=n, m=m)
        for z in (0.9 + 0.4j, -1.2j, 0.3):
            direct = expm_generic(hat_embed(s.sig, z * s.w))
            npt.assert_allclose(exp_surface_point(s, z), direct, atol=1e-12)


def test_point_map_is_pseudo_unitary():
    s = _random_surface(5)
    npt.assert_allclose(exp_surface_point(s, 0.0), np.eye(5), atol=1e-15)
    for z in (1.5, 0.7 - 1.1j):
        assert is_pseudo_unitary(s.sig, exp_surface_point(s, z)).ok


def test_omega0_scalar_frozen():
    s = build_surface(Signature(1, 1), np.array([[3.0 + 0j]]))
    for r in (0.0, 0.5, 1.7):
        assert omega0_potential(s, r) == pytest.approx(0.5 * np.sinh(r) ** 2, abs=1e-14)
    arr = omega0_potential(s, np.array([0.5, 1.0]))
    assert arr.shape == (2,)


def test_omega1_density_scalar_frozen():
    s = build_surface(Signature(1, 1), np.array([[1.0 + 0j]]))
    for r in (0.3, 1.1):
        assert omega1_density(s, r) == pytest.approx(0.5 * np.sinh(2 * r), rel=1e-14)


def test_omega1_potential_scalar_equals_omega0():
    # with a single unit singular value the two area forms coincide
    s = build_surface(Signature(1, 1), np.array([[2.0 + 0j]]))
    for r in (0.4, 1.0, 2.2):
        assert omega1_potential(s, r) == pytest.approx(omega0_potential(s, r), abs=1e-12)
    assert omega1_potential(s, 0.0) == 0.0


def test_omega1_potential_equal_sigma_frozen():
    # q equal singular values 1/sqrt(q): F1(r) = (q/2) sinh^2(r/sqrt(q))
    q = 3
    s = build_surface(Signature(q, q), np.eye(q, dtype=complex))
    for r in (0.6, 1.4):
        expected = 0.5 * q * np.sinh(r / np.sqrt(q)) ** 2
        assert omega1_potential(s, r) == pytest.approx(expected, abs=1e-10)


def test_omega1_grid_matches_adaptive():
    s = _random_surface(6, n=3, m=3)
    radii = np.array([0.0, 0.3, 0.9, 1.8, 2.5])
    grid = omega1_potential_grid(s, radii)
    for r, val in zip(radii, grid):
        assert val == pytest.approx(omega1_potential(s, r), abs=1e-12)


def test_tangents_match_finite_differences():
    # left-translated derivatives: gamma^{-1} d gamma / d(r, theta)
    s = _random_surface(7, n=3, m=2)
    r, theta = 0.8, 0.6
    z = r * np.exp(1j * theta)
    pair = tangent_pushforwards(s, z)
    h = 1e-6
    g = exp_surface_point(s, z)
    g_inv = np.linalg.inv(g)
    fd_r = g_inv @ (
        surface_point(s, r + h, theta) - surface_point(s, r - h, theta)
    ) / (2 * h)
    fd_th = g_inv @ (
        surface_point(s, r, theta + h) - surface_point(s, r, theta - h)
    ) / (2 * h)
    npt.assert_allclose(pair.d_r, fd_r, atol=5e-9)
    npt.assert_allclose(pair.d_theta, fd_th, atol=5e-9)


def test_tangent_inner_products():
    s = _random_surface(8, n=2, m=4)
    for z in (0.5 + 0.2j, 1.3 - 0.9j):
        pair = tangent_pushforwards(s, z)
        assert killing_inner(pair.d_r, pair.d_r) == pytest.approx(1.0, abs=1e-12)
        assert killing_inner(pair.d_r, pair.d_theta) == pytest.approx(0.0, abs=1e-12)
        # horizontal norm is the metric-induced area density at radius |z|
        npt.assert_allclose(
            np.sqrt(killing_inner(pair.d_theta_horizontal, pair.d_theta_horizontal)),
            omega1_density(s, abs(z)),
            rtol=1e-12,
        )
        assert algebra_residual(s.sig, pair.d_r) < 1e-12
        assert algebra_residual(s.sig, pair.d_theta) < 1e-12


def test_tangent_theta_vanishes_at_origin():
    s = _random_surface(9)
    pair = tangent_pushforwards(s, 0.0)
    npt.assert_allclose(pair.d_theta, np.zeros((5, 5)), atol=1e-15)


def test_lie_generators_bracket():
    s = _random_surface(10, n=2, m=2)
    triples = lie_generators(s, 3)
    assert len(triples) == 3
    v1, x1, ix1 = triples[0]
    npt.assert_allclose(x1 @ ix1 - ix1 @ x1, 2.0 * v1, atol=1e-12)
    # k-th v stacks i (X*X)^k against -i (XX*)^k
    xsx = s.x.conj().T @ s.x
    npt.assert_allclose(triples[2].v[:2, :2], 1j * np.linalg.matrix_power(xsx, 3), atol=1e-12)
    with pytest.raises(DimensionError):
        lie_generators(s, 0)


def test_totally_geodesic_rank_one():
    rng = np.random.default_rng(11)
    u = rng.standard_normal(3) + 1j * rng.standard_normal(3)
    v = rng.standard_normal(2) + 1j * rng.standard_normal(2)
    s = build_surface(Signature(2, 3), np.outer(u, v))
    check = totally_geodesic_check(s)
    assert check.ok and check.residual <= 1e-12
    assert check.bracket_residual is not None and check.bracket_residual <= 1e-12


def test_totally_geodesic_equal_sigma():
    s = build_surface(Signature(2, 2), 1.3 * np.eye(2, dtype=complex))
    check = totally_geodesic_check(s)
    assert check.ok and check.bracket_residual <= 1e-12


def test_totally_geodesic_fails_for_spread_spectrum():
    s = build_surface(Signature(2, 2), np.diag([1.0, 2.0]).astype(complex))
    check = totally_geodesic_check(s)
    assert not check.ok
    assert check.residual > 1e-3
    assert check.bracket_residual is None


def test_point_separation():
    s = _random_surface(12, n=3, m=3)
    z = 0.9 * np.exp(0.4j)
    assert point_separation_check(s, z, z)
    assert not point_separation_check(s, z, 1.1 * z)
    assert not point_separation_check(s, z, z * np.exp(0.5j))
