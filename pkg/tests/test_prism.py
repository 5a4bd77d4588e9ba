from __future__ import annotations

import random
from fractions import Fraction as F

import pytest

from orichain.chains import Chain, boundary
from orichain.prism import (
    NotInSPrime,
    generator_chain,
    homotopy_D,
    homotopy_of_identity,
    identity_map,
    linear_map,
    postcompose,
    precompose,
    prism,
    prism_chain,
    random_linear_map,
    verify_homotopy_identity,
)
from orichain.simplex import Perm, barycenter, vertex


def test_prism_examples():
    ident = identity_map(2)
    assert prism(ident) == (vertex(2, 0), vertex(2, 1), vertex(2, 2), barycenter(2))
    const = (vertex(3, 0),)
    assert prism(const) == (vertex(3, 0), barycenter(3))
    b1 = barycenter(1)
    assert prism(prism(identity_map(1))) == (vertex(1, 0), vertex(1, 1), b1, b1)
    assert b1 == (F(1, 2), F(1, 2))


def test_linear_map_validation():
    with pytest.raises(ValueError):
        linear_map([])
    with pytest.raises(ValueError):
        linear_map([(1, 0), (0, 0, 1)])
    with pytest.raises(ValueError):
        linear_map([(F(1, 2), F(1, 3))])


def test_prism_commutes_with_precomposition():
    rng = random.Random(0)
    for m in range(4):
        f = random_linear_map(m, 2, rng)
        for tau in Perm.all(m):
            assert prism(precompose(f, tau)) == precompose(prism(f), tau.extend(1))


def test_prism_commutes_with_postcomposition():
    rng = random.Random(1)
    for k in (1, 2, 3):
        for _ in range(10):
            f = random_linear_map(rng.randint(0, 3), k, rng)
            for tau in Perm.all(k):
                assert postcompose(tau, prism(f)) == prism(postcompose(tau, f))


def test_prism_boundary_formula():
    rng = random.Random(2)
    for _ in range(100):
        m = rng.randint(1, 4)
        f = random_linear_map(m, rng.randint(1, 3), rng)
        lhs = boundary(Chain.simplex(prism(f)))
        rhs = Chain.simplex(f) * (-1) ** (m + 1) + prism_chain(boundary(Chain.simplex(f)))
        assert lhs == rhs


def test_homotopy_examples():
    assert homotopy_D(Chain.simplex((vertex(2, 1),))) == Chain()
    assert homotopy_D(Chain()) == Chain()
    assert homotopy_of_identity(1) == Chain.simplex((vertex(1, 0), vertex(1, 1), barycenter(1)))
    assert homotopy_of_identity(1) is homotopy_of_identity(1)


def test_homotopy_on_transposition_generator():
    c = generator_chain(identity_map(1), Perm((1, 0)))
    d = homotopy_D(c)
    assert d.grade == 2 and d
    assert verify_homotopy_identity([(1, identity_map(1), Perm((1, 0)))])[0]


def test_homotopy_identity_examples():
    ok, defect = verify_homotopy_identity([(1, identity_map(2), Perm((1, 2, 0)))])
    assert ok and defect == Chain()
    assert verify_homotopy_identity([]) == (True, Chain())
    # odd permutation: the generator is f + f∘tau
    tau = Perm.transposition(2, 0, 2)
    assert generator_chain(identity_map(2), tau) == Chain(
        {identity_map(2): 1, precompose(identity_map(2), tau): 1}
    )
    assert verify_homotopy_identity([(1, identity_map(2), tau)])[0]


def test_identity_fails_off_the_subcomplex():
    # a single map is not an S' generator, so the identity need not hold on it
    f = identity_map(1)
    c = Chain.simplex(f)
    defect = boundary(homotopy_D(c)) - c - homotopy_D(boundary(c))
    assert defect != Chain()


def test_not_in_sprime():
    f = identity_map(2)
    with pytest.raises(NotInSPrime):
        verify_homotopy_identity([(1, f)])
    with pytest.raises(NotInSPrime):
        verify_homotopy_identity([(1, f, (1, 0, 2))])
    with pytest.raises(NotInSPrime):
        verify_homotopy_identity([(1, f, Perm((1, 0)))])
    with pytest.raises(NotInSPrime):
        verify_homotopy_identity([(0.5, f, Perm((1, 0, 2)))])


@pytest.mark.parametrize("k", [1, 2, 3])
def test_homotopy_identity_random_generators(k):
    rng = random.Random(100 + k)
    perms = list(Perm.all(k))
    for _ in range(30):
        f = random_linear_map(k, rng.randint(1, 3), rng)
        ok, defect = verify_homotopy_identity([(rng.randint(-3, 3) or 1, f, rng.choice(perms))])
        assert ok, defect
    combo = [(rng.randint(1, 4), random_linear_map(k, 2, rng), rng.choice(perms)) for _ in range(4)]
    assert verify_homotopy_identity(combo)[0]
