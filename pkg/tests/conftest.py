from __future__ import annotations

from functools import lru_cache

import pytest

from hopf_algebroid.bialgebroid import Verifier
from hopf_algebroid.freealg import FreeAlgebra, relation_set
from hopf_algebroid.quasigroup import PiBijection, abelian_ternary, builtin_qg5, from_abelian_group
from hopf_algebroid.ringcore import preset_algebra
from hopf_algebroid.sigma import build_from_quasigroup

# the four quasigroup instances used throughout: Z/2, Z/3, Z/5 with a-b+c, and QG5 with pi = id
INSTANCES = ("ab2", "ab3", "ab5", "qg5")
ALGEBRAS = ("base", "dual")


def instance_data(name: str):
    if name == "qg5":
        return builtin_qg5(), abelian_ternary(5), PiBijection.identity(5)
    return from_abelian_group(int(name[2:]))


@lru_cache(maxsize=None)
def sigma_for(name: str, R: str = "base"):
    return build_from_quasigroup(*instance_data(name), preset_algebra(R))


@lru_cache(maxsize=None)
def algebra_for(name: str, R: str = "base"):
    s = sigma_for(name, R)
    alg = FreeAlgebra(s.L, s.deg)
    return alg, relation_set(alg, s)


@lru_cache(maxsize=None)
def verifier_for(name: str, R: str = "base", bound: int = 4) -> Verifier:
    return Verifier(sigma_for(name, R), bound)


@pytest.fixture(scope="session")
def ab2():
    return verifier_for("ab2")
