from __future__ import annotations

import random
from itertools import combinations
from math import gcd

import pytest
from hypothesis import given, settings, strategies as st

from orichain.snf import (
    IntegerMatrix,
    determinant,
    invariant_factors,
    normalize_diagonal,
    smith_normal_form,
    solve_integer,
)


def minors_gcd(a, r):
    """gcd of all r x r minors (the r-th determinantal divisor)."""
    g = 0
    n, m = len(a), len(a[0])
    for rows in combinations(range(n), r):
        for cols in combinations(range(m), r):
            g = gcd(g, determinant([[a[i][j] for j in cols] for i in rows]))
    return g


def divisor_oracle(a):
    out, prev = [], 1
    for r in range(1, min(len(a), len(a[0])) + 1):
        d = minors_gcd(a, r)
        if d == 0:
            break
        out.append(d // prev)
        prev = d
    return out


matrices = st.integers(1, 4).flatmap(
    lambda n: st.integers(1, 4).flatmap(
        lambda m: st.lists(st.lists(st.integers(-6, 6), min_size=m, max_size=m), min_size=n, max_size=n)
    )
)


def test_small_examples():
    S, _, _ = smith_normal_form([[2, 4], [6, 8]])
    assert S.diagonal() == [2, 4]
    S, _, _ = smith_normal_form([[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    assert S.diagonal() == [1, 1, 1]
    S, _, _ = smith_normal_form([[0, 0], [0, 0], [0, 0]])
    assert S.entries == {}
    assert invariant_factors(IntegerMatrix.from_dense([[2, 4], [6, 8]])) == [2, 4]
    assert invariant_factors(IntegerMatrix(3, 2)) == []


def test_determinant():
    assert determinant([]) == 1
    assert determinant([[0, 1], [1, 0]]) == -1
    assert determinant([[2, 0, 0], [0, 3, 0], [1, 1, 5]]) == 30
    assert determinant([[1, 2], [2, 4]]) == 0


def test_normalize_diagonal():
    assert normalize_diagonal([4, 6]) == [2, 12]
    assert normalize_diagonal([0, -3, 1]) == [1, 3]


def test_matrix_validation():
    with pytest.raises(IndexError):
        IntegerMatrix(2, 2, {(2, 0): 1})
    with pytest.raises(ValueError):
        IntegerMatrix(2, 3) @ IntegerMatrix(2, 3)


@settings(max_examples=150, deadline=None)
@given(matrices)
def test_against_determinantal_divisors(a):
    want = divisor_oracle(a)
    S, U, V = smith_normal_form(a)  # check=True verifies U A V = S and unimodularity
    assert [d for d in S.diagonal() if d] == want
    assert invariant_factors(IntegerMatrix.from_dense(a)) == want


def test_random_larger_sparse():
    rng = random.Random(4)
    for _ in range(30):
        n, m = rng.randint(3, 9), rng.randint(3, 9)
        a = [[rng.choice([0, 0, 0, 1, -1, 2, 3]) for _ in range(m)] for _ in range(n)]
        S, _, _ = smith_normal_form(a)
        assert [d for d in S.diagonal() if d] == invariant_factors(IntegerMatrix.from_dense(a))


def test_solve_integer():
    A = [[2, 0], [0, 3]]
    assert solve_integer(A, [4, 9]) == [2, 3]
    assert solve_integer(A, [1, 0]) is None
    assert solve_integer([[1, 1]], [5]) is not None
    assert solve_integer(IntegerMatrix(2, 0), [0, 0]) == []
    assert solve_integer(IntegerMatrix(2, 0), [0, 1]) is None
    with pytest.raises(ValueError):
        solve_integer(A, [1])


@settings(max_examples=100, deadline=None)
@given(matrices, st.data())
def test_solve_integer_roundtrip(a, data):
    x = data.draw(st.lists(st.integers(-5, 5), min_size=len(a[0]), max_size=len(a[0])))
    b = [sum(r * v for r, v in zip(row, x)) for row in a]
    y = solve_integer(a, b)
    assert y is not None
    assert [sum(r * v for r, v in zip(row, y)) for row in a] == b
