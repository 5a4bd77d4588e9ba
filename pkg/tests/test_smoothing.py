from __future__ import annotations

import random
from fractions import Fraction as F
from itertools import combinations

import numpy as np
import pytest

from orichain.simplex import Perm, RegionSpec, barycenter_points, project_to_codim2, region_contains
from orichain.smoothing import (
    BumpSpec,
    DimensionOverflow,
    ExcludedLocus,
    SmoothingMap,
    _smooth_step,
    eta,
    phi,
)

TOL = 1e-12


def uniform(n, k, rng):
    return rng.dirichlet(np.ones(k + 1), size=n)


def near_face(n, k, p, rng, scale=0.02):
    x = uniform(n, k, rng)
    x[:, p] *= scale
    return x / x.sum(axis=1, keepdims=True)


def test_step_profile():
    t = np.linspace(-1, 2, 301)
    s = _smooth_step(t)
    assert np.all(s[t <= 0] == 0) and np.all(s[t >= 1] == 1)
    mid = s[(t > 0.05) & (t < 0.95)]  # binary64 saturates closer to the ends
    assert np.all(np.diff(mid) > 0)


def test_bump_validation():
    with pytest.raises(ValueError):
        BumpSpec(3, lo=0.4)
    with pytest.raises(ValueError):
        BumpSpec(3, lo=0.7, hi=0.6)
    with pytest.raises(DimensionOverflow):
        SmoothingMap(40)


def test_eta_levels_on_exact_regions():
    rng = random.Random(5)
    for dim in (2, 3, 4):
        bump = BumpSpec(dim)
        for _ in range(300):
            w = [rng.randint(0, 30) for _ in range(dim + 1)]
            if not any(w):
                continue
            x = tuple(F(v, sum(w)) for v in w)
            for p, q in combinations(range(dim + 1), 2):
                try:
                    val = eta(bump, p, q, [float(v) for v in x])
                except ExcludedLocus:
                    continue
                if region_contains(RegionSpec("U_codim2", dim, p, q), x)[0]:
                    assert val == 1.0
                if not region_contains(RegionSpec("U_tilde_codim2", dim, p, q), x)[0]:
                    assert val == 0.0


def test_eta_vanishes_at_face_barycenter():
    _, faces, _ = barycenter_points(3)
    bump = BumpSpec(3)
    x = [float(v) for v in faces[3]]
    for p, q in combinations(range(4), 2):
        assert eta(bump, p, q, x) == 0.0


def test_eta_excluded_locus():
    bump = BumpSpec(3)
    with pytest.raises(ExcludedLocus):
        eta(bump, 0, 1, [0.0, 0.0, 0.0, 1.0])
    assert np.isnan(eta(bump, 0, 1, [0.0, 0.0, 0.0, 1.0], strict=False))


def test_eta_symmetry():
    rng = np.random.default_rng(2)
    bump = BumpSpec(3)
    x = uniform(500, 3, rng)
    for tau in Perm.all(3):
        order = np.argsort(tau.images)
        tx = x[:, order]
        for p, q in combinations(range(4), 2):
            a, b = sorted((tau(p), tau(q)))
            assert np.allclose(eta(bump, a, b, tx), eta(bump, p, q, x), atol=TOL, rtol=0)


def test_phi_tilde_examples():
    smap = SmoothingMap(2, "phi_tilde")
    _, faces, _ = barycenter_points(3)
    x = np.array([float(v) for v in faces[3]])
    assert np.allclose(smap(x), x, atol=TOL)
    b = np.full(4, 0.25)
    assert np.allclose(smap(b), b, atol=TOL)


def test_phi_tilde_is_projection_on_inner_neighbourhood():
    rng = random.Random(8)
    smap = SmoothingMap(2, "phi_tilde")
    checked = 0
    for _ in range(400):
        w = [rng.randint(0, 40) for _ in range(4)]
        w[0] //= 10
        w[1] //= 10
        if not any(w):
            continue
        x = tuple(F(v, sum(w)) for v in w)
        for p, q in combinations(range(4), 2):
            if region_contains(RegionSpec("U_codim2", 3, p, q), x)[0]:
                got = smap(np.array([float(v) for v in x]))
                want = np.array([float(v) for v in project_to_codim2(x, p, q)])
                assert np.max(np.abs(got - want)) <= TOL
                checked += 1
    assert checked > 20


def test_phi_examples():
    smap = SmoothingMap(2)
    b = np.full(3, 1 / 3)
    assert np.allclose(phi(smap, b), b, atol=TOL)
    # points of the open faces are fixed
    edge = np.array([0.3, 0.7, 0.0])
    assert np.allclose(phi(smap, edge), edge, atol=TOL)
    # close to face 0 the map is the radial projection from e_0
    assert np.allclose(phi(smap, [0.1, 0.45, 0.45]), [0.0, 0.5, 0.5], atol=TOL)


def test_phi_output_in_simplex():
    rng = np.random.default_rng(4)
    for k in (1, 2, 3):
        y = phi(SmoothingMap(k), uniform(2000, k, rng))
        assert np.all(y >= -TOL)
        assert np.allclose(y.sum(axis=1), 1.0, atol=TOL)


@pytest.mark.parametrize("k", [1, 2, 3])
def test_equivariance(k):
    rng = np.random.default_rng(10 + k)
    smap = SmoothingMap(k, "phi_tilde")
    x = np.vstack([uniform(1500, k + 1, rng)] + [near_face(300, k + 1, p, rng) for p in range(k + 2)])
    y = smap(x)
    for tau in Perm.all(k + 1):
        order = np.argsort(tau.images)
        assert np.max(np.abs(smap(x[:, order]) - y[:, order])) <= TOL


@pytest.mark.parametrize("k", [1, 2, 3])
def test_face_compatibility_and_well_definedness(k):
    rng = np.random.default_rng(20 + k)
    smap = SmoothingMap(k)
    tilde = SmoothingMap(k, "phi_tilde")
    x = np.vstack([uniform(2000, k, rng)] + [near_face(300, k, p, rng) for p in range(k + 1)])
    base = phi(smap, x)
    for p in range(k + 2):
        lifted = np.insert(x, p, 0.0, axis=1)
        assert np.max(np.abs(tilde(lifted) - np.insert(base, p, 0.0, axis=1))) <= TOL
        assert np.max(np.abs(phi(smap, x, p=p) - base)) <= TOL


@pytest.mark.parametrize("k", [1, 2, 3])
def test_projection_property(k):
    rng = np.random.default_rng(30 + k)
    smap = SmoothingMap(k)
    for p in range(k + 1):
        x = near_face(3000, k, p, rng, scale=0.01)
        others = np.delete(x, p, axis=1)
        inside = np.all(others > (k + 2) * x[:, [p]], axis=1)
        assert inside.sum() > 100
        xs = x[inside]
        want = xs / (1 - xs[:, [p]])
        want[:, p] = 0.0
        assert np.max(np.abs(phi(smap, xs) - want)) <= TOL


def test_continuity_probe():
    rng = np.random.default_rng(40)
    smap = SmoothingMap(2, "phi_tilde")
    bump = smap.bump
    # straddle the outer support boundary u_r = lo of the (0, 1) bump
    x = uniform(1000, 3, rng)
    s = x[:, 0] + x[:, 1]
    target = bump.lo / (1 - bump.lo) * s
    x[:, 2] = target
    x = x / x.sum(axis=1, keepdims=True)
    d = np.zeros_like(x)
    d[:, 2] = 5e-7
    d[:, 3] = -5e-7
    a, b = smap(x - d), smap(x + d)
    assert np.max(np.abs(a - b)) < 1e-3
