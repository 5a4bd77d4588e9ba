from __future__ import annotations

import random

import pytest

from orichain.chains import Chain, SimplicialComplex, boundary
from orichain.fixtures import COMPLEXES, COVERS, hexagon, octahedron, tetrahedron_boundary
from orichain.homology import (
    CoverError,
    HomologyGroup,
    betti_numbers_rational,
    connected_components,
    euler_characteristic,
    homology,
    is_oriented_boundary,
    relative_homology,
    verify_mv_vanishing,
)


def groups(table):
    return [HomologyGroup(r, tuple(t)) for r, t in table]


@pytest.mark.parametrize("name", sorted(COMPLEXES))
def test_fixture_complexes_both_models(name):
    make, want = COMPLEXES[name]
    K = SimplicialComplex(make())
    oriented = homology(K, "oriented")
    assert oriented == groups(want)
    assert betti_numbers_rational(K) == [g.free_rank for g in oriented]
    if K.dim <= 2:
        assert homology(K, "ordered") == oriented


def test_group_formatting_and_validation():
    assert str(HomologyGroup(0)) == "0"
    assert str(HomologyGroup(1)) == "Z"
    assert str(HomologyGroup(2, (2,))) == "Z^2 + Z/2"
    assert HomologyGroup().is_zero
    with pytest.raises(ValueError):
        HomologyGroup(0, (1,))
    with pytest.raises(ValueError):
        HomologyGroup(0, (2, 3))


def test_point_and_disjoint_points():
    assert homology(SimplicialComplex([(0,)])) == [HomologyGroup(1)]
    assert homology(SimplicialComplex([(0,), (1,), (2,)]), "ordered") == [HomologyGroup(3)]
    assert homology(SimplicialComplex([])) == []


def test_relative_homology():
    K = SimplicialComplex([(0, 1, 2)])
    rim = [(0, 1), (1, 2), (0, 2)]
    assert relative_homology(K) == homology(K)
    assert relative_homology(K, []) == [HomologyGroup(1), HomologyGroup(0), HomologyGroup(0)]
    assert all(g.is_zero for g in relative_homology(K, K.simplices))
    assert relative_homology(K, rim) == [HomologyGroup(0), HomologyGroup(0), HomologyGroup(1)]
    # a segment relative to its two ends is a circle's worth of H_1
    seg = SimplicialComplex([(0, 1)])
    assert relative_homology(seg, [(0,), (1,)]) == [HomologyGroup(0), HomologyGroup(1)]


def random_complex(rng, n=8):
    tops = set()
    for _ in range(rng.randint(1, 8)):
        size = rng.randint(1, 3)
        tops.add(tuple(sorted(rng.sample(range(n), size))))
    return SimplicialComplex(sorted(tops))


def test_h0_counts_components():
    rng = random.Random(9)
    for _ in range(20):
        K = random_complex(rng)
        H = homology(K)
        assert H[0] == HomologyGroup(connected_components(K))
        assert euler_characteristic(H) == K.euler_characteristic()
        assert betti_numbers_rational(K) == [g.free_rank for g in H]


def test_oriented_boundary_decision():
    K = SimplicialComplex(tetrahedron_boundary())
    loop = boundary(Chain.simplex((0, 1, 2)))
    assert is_oriented_boundary(loop, K)
    # the fundamental class is a cycle but not a boundary
    assert not is_oriented_boundary(boundary(Chain.simplex((0, 1, 2, 3))), K)
    hex_ = SimplicialComplex(hexagon())
    around = Chain({(i, (i + 1) % 6): 1 for i in range(6)})
    assert not is_oriented_boundary(around, hex_)
    assert is_oriented_boundary(Chain(), hex_)


@pytest.mark.parametrize("name", sorted(COVERS))
def test_mv_fixture_covers(name):
    make, cover = COVERS[name]
    report = verify_mv_vanishing(SimplicialComplex(make()), cover())
    assert report.passed
    assert report.top_index == len(cover()) - 1


def test_mv_hypothesis_failures():
    S = SimplicialComplex(tetrahedron_boundary())
    one = verify_mv_vanishing(S, [S])
    assert not one.hypothesis_holds and not one.conclusion_holds
    assert one.counterexample_degree == 2
    # two hemispheres meet in a circle
    octa = SimplicialComplex(octahedron())
    upper = [t for t in octahedron() if 4 in t]
    lower = [t for t in octahedron() if 5 in t]
    rep = verify_mv_vanishing(octa, [upper, lower])
    assert not rep.hypothesis_holds
    assert rep.failures == [{"pieces": [0, 1], "degrees": [1]}]


def test_mv_single_contractible_piece():
    K = SimplicialComplex([(0, 1, 2), (1, 2, 3)])
    assert verify_mv_vanishing(K, [K]).passed


def test_cover_errors():
    K = SimplicialComplex(hexagon())
    with pytest.raises(CoverError):
        verify_mv_vanishing(K, [])
    with pytest.raises(CoverError):
        verify_mv_vanishing(K, [[[0, 1], [1, 2]]])
