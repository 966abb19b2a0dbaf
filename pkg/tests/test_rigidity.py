from itertools import product

import pytest
import sympy

from conftest import ALGEBRAS, INSTANCES, algebra_for, sigma_for
from oracles import oracle_istar
from hopf_algebroid.rigidity import (
    RigidityFailure,
    build_q_family,
    certify_rigidity,
    contraction_defects,
    q_matrices,
    solve_condition,
    solve_istar,
)
from hopf_algebroid.sigma import SigmaTensor


@pytest.mark.parametrize("R", ALGEBRAS)
@pytest.mark.parametrize("name", INSTANCES)
def test_istar_matches_matrix_inverse(name, R):
    s = sigma_for(name, R)
    istar = solve_istar(s.tilde)
    expected = oracle_istar(s)
    for key, vals in expected.items():
        assert [tuple(istar[key].at(p)) for p in range(s.L.npoints)] == vals
    assert contraction_defects(istar, s.tilde) == []


@pytest.mark.parametrize("n", [2, 3, 5])
def test_abelian_istar_is_flip_and_q_matrices_are_identity(n):
    s = sigma_for(f"ab{n}")
    L = s.L
    istar = solve_istar(s.tilde)
    for a, b, c, d in product(range(n), repeat=4):
        assert istar[(a, b, c, d)] == (L.one if (c == b and d == a) else L.zero)
    for M in q_matrices(istar, s):
        for a, b in product(range(n), repeat=2):
            assert M[(a, b)] == (L.one if a == b else L.zero)


@pytest.mark.parametrize("R", ALGEBRAS)
@pytest.mark.parametrize("name", INSTANCES)
def test_all_conditions_certified(name, R):
    s = sigma_for(name, R)
    alg, _ = algebra_for(name, R)
    cert = certify_rigidity(s, alg)
    assert all(cert.qs.two_sided.values())
    mats = q_matrices(cert.istar, s)
    for c in range(2, 6):
        solve_condition(mats, c, s.L, s.n)


def test_qg5_q_matrices_invertible_pointwise():
    # oracle: determinant of each Q-matrix at each point is nonzero
    s = sigma_for("qg5")
    for M in q_matrices(solve_istar(s.tilde), s):
        for p in range(5):
            assert sympy.Matrix(5, 5, lambda a, b: M[(a, b)].at(p)[0]).det() != 0


def test_abelian_antipode_elements():
    s = sigma_for("ab2")
    alg, _ = algebra_for("ab2")
    cert = certify_rigidity(s, alg)
    for a, b in product(range(2), repeat=2):
        assert cert.x[(a, b)] == alg.letter("L", a, b) == cert.x_alt[(a, b)]
        assert cert.y[(a, b)] == alg.letter("Li", a, b) == cert.y_alt[(a, b)]


def test_zero_sigma_fails_condition_one():
    s = sigma_for("ab2")
    zero = SigmaTensor(s.L, s.deg, {})
    with pytest.raises(RigidityFailure) as e:
        solve_istar(zero.tilde)
    assert e.value.condition == 1 and e.value.point == 0


def test_singular_q_matrix_fails_condition_two():
    s = sigma_for("ab2")
    istar = solve_istar(s.tilde)
    Q, Qp, Qpp, Qppp = q_matrices(istar, s)
    Q = {k: s.L.one for k in Q}  # rank one
    with pytest.raises(RigidityFailure) as e:
        solve_condition((Q, Qp, Qpp, Qppp), 2, s.L, 2)
    assert e.value.condition == 2


def test_q_family_json_shape():
    s = sigma_for("ab3")
    data = build_q_family(solve_istar(s.tilde), s).to_json()
    assert len(data["Q"]) == 3 and len(data["Q"][0]) == 3
