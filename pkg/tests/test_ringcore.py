from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hopf_algebroid.ringcore import (
    AlgebraR,
    AutomorphismT,
    FunctionAlgebra,
    InputError,
    LOperator,
    preset_algebra,
    radical_dim,
    rho_left,
    rho_right,
)

PRESETS = ("base", "dual", "mat2")


@pytest.mark.parametrize("name", PRESETS)
def test_presets_are_associative_and_unital(name):
    R = preset_algebra(name)
    basis = [R.basis(i) for i in range(R.dim)]
    for x, y, z in product(basis, repeat=3):
        assert R.product(R.product(x, y), z) == R.product(x, R.product(y, z))
    for x in basis:
        assert R.product(R.unit, x) == x == R.product(x, R.unit)


@pytest.mark.parametrize("name, expected", [("base", 0), ("dual", 1), ("mat2", 0)])
def test_radical_dimension(name, expected):
    assert radical_dim(preset_algebra(name)) == expected


def test_mat2_is_noncommutative():
    R = preset_algebra("mat2")
    assert not R.is_commutative
    assert preset_algebra("dual").is_commutative


def test_custom_algebra_validation():
    with pytest.raises(InputError):
        AlgebraR(preset_algebra("base").field, [[[1, 0]]], [1])
    # x^2 = x with unit x is fine; unit 0 is not
    with pytest.raises(InputError):
        AlgebraR(preset_algebra("base").field, [[[1]]], [0])


def elements(L):
    return st.lists(st.integers(-3, 3), min_size=L.dim, max_size=L.dim).map(L.element)


L_MAT = FunctionAlgebra(2, preset_algebra("mat2"))


@settings(max_examples=50, deadline=None)
@given(elements(L_MAT), elements(L_MAT), elements(L_MAT))
def test_function_algebra_ring_axioms(f, g, h):
    assert (f * g) * h == f * (g * h)
    assert f * (g + h) == f * g + f * h
    assert L_MAT.one * f == f == f * L_MAT.one


@settings(max_examples=30, deadline=None)
@given(elements(L_MAT), elements(L_MAT), elements(L_MAT))
def test_left_and_right_multiplications_commute(f, g, x):
    lhs = rho_left(f) @ rho_right(g)
    assert lhs == rho_right(g) @ rho_left(f)
    assert lhs.apply(x) == f * x * g


@settings(max_examples=30, deadline=None)
@given(elements(L_MAT), elements(L_MAT))
def test_rho_left_is_multiplicative_rho_right_antimultiplicative(f, g):
    assert rho_left(f * g) == rho_left(f) @ rho_left(g)
    assert rho_right(f * g) == rho_right(g) @ rho_right(f)


def test_automorphism_precomposition_and_inverse():
    L = FunctionAlgebra(3, preset_algebra("dual"))
    T = AutomorphismT((1, 2, 0))
    f = L.from_values([[1, 0], [2, 1], [3, 5]])
    assert T.apply(f).at(0) == f.at(1)
    assert T.then(T.inverse()) == AutomorphismT.identity(3)
    assert T.operator(L) @ T.inverse().operator(L) == LOperator.identity(L.dim)
    for a, b in product(L.basis_elements(), repeat=2):
        assert T.apply(a * b) == T.apply(a) * T.apply(b)


def test_then_matches_operator_composition():
    L = FunctionAlgebra(3, preset_algebra("base"))
    S, T = AutomorphismT((1, 0, 2)), AutomorphismT((2, 0, 1))
    assert S.then(T).operator(L) == S.operator(L) @ T.operator(L)


def test_rejects_non_permutation():
    with pytest.raises(InputError):
        AutomorphismT((0, 0, 1))


def test_operator_to_matrix():
    L = FunctionAlgebra(1, preset_algebra("dual"))
    x = L.from_values([[0, 1]])
    # multiplication by x on basis (1, x): 1 -> x, x -> 0
    assert rho_left(x).to_matrix() == [[0, 0], [Fraction(1), 0]]
