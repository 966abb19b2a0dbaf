"""The structure tensor sigma^{ab}_{cd} in L and the operator identities it must satisfy.

Indices are stored in the order (a, b, c, d) for sigma^{ab}_{cd}.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import product

from .quasigroup import (
    DegreeMap,
    PiBijection,
    Quasigroup,
    TernaryOp,
    degree_map,
    validate_latin,
    validate_ternary,
)
from .ringcore import (
    AlgebraR,
    FnElement,
    FunctionAlgebra,
    InputError,
    LOperator,
    rho_left,
    rho_right,
)


class SigmaTensor:
    """sigma^{ab}_{cd} for a, b, c, d in X = {0..n-1}, valued in L = R^H."""

    def __init__(self, L: FunctionAlgebra, deg: DegreeMap, entries: dict):
        self.L = L
        self.deg = deg
        self.n = deg.size
        self.entries = {}
        for key in product(range(self.n), repeat=4):
            f = entries.get(key, L.zero)
            if f.space != L:
                raise InputError(f"entry {key} lives in a different L")
            self.entries[key] = f

    def __getitem__(self, key) -> FnElement:
        return self.entries[tuple(key)]

    def with_entry(self, key, value: FnElement) -> "SigmaTensor":
        """Copy with one entry replaced (used for mutation tests)."""
        ent = dict(self.entries)
        ent[tuple(key)] = value
        return SigmaTensor(self.L, self.deg, ent)

    # composite T operators, cached as LOperators
    @cached_property
    def _T(self):
        return [self.deg.T(a).operator(self.L) for a in range(self.n)]

    @cached_property
    def _Tinv(self):
        return [self.deg.T_inv(a).operator(self.L) for a in range(self.n)]

    def T_op(self, a: int) -> LOperator:
        return self._T[a]

    def Tinv_op(self, a: int) -> LOperator:
        return self._Tinv[a]

    @cached_property
    def tilde(self) -> "SigmaTilde":
        return SigmaTilde.from_sigma(self)

    def nonzero_items(self):
        return [(k, f) for k, f in self.entries.items() if not f.is_zero()]

    def to_json(self) -> dict:
        return {
            "X": self.n,
            "entries": {",".join(map(str, k)): f.to_json() for k, f in self.nonzero_items()},
        }


@dataclass
class SigmaTilde:
    """tilde sigma^{ab}_{cd} = T_{deg(d)^{-1}}(sigma^{ab}_{cd})."""

    sigma: SigmaTensor
    entries: dict

    @classmethod
    def from_sigma(cls, s: SigmaTensor) -> "SigmaTilde":
        ent = {}
        for (a, b, c, d), f in s.entries.items():
            ent[(a, b, c, d)] = s.deg.T_inv(d).apply(f)
        return cls(s, ent)

    def __getitem__(self, key) -> FnElement:
        return self.entries[tuple(key)]


def build_from_quasigroup(q: Quasigroup, m: TernaryOp, pi: PiBijection, R: AlgebraR) -> SigmaTensor:
    """sigma^{ab}_{cd}(p) = 1_R iff c = m\\((pb)a) and d = p\\m with
    m = pi^{-1}(mu(pi(p), pi(pb), pi((pb)a))); 0_R otherwise."""
    bad = validate_latin(q)
    if bad is not None:
        raise InputError(f"not a Latin square: {bad}")
    if m.n != q.n or len(pi.map) != q.n:
        raise InputError("quasigroup, ternary operation and pi must have the same size")
    viol = validate_ternary(m)
    if viol:
        raise InputError(f"ternary operation violates {', '.join(v.axiom for v in viol)}")
    n = q.n
    L = FunctionAlgebra(n, R)
    deg = degree_map(q)
    zero_r = (R.field.zero,) * R.dim
    values = {key: [zero_r] * n for key in product(range(n), repeat=4)}
    for a, b, p in product(range(n), repeat=3):
        pb = q.multiply(p, b)
        pba = q.multiply(pb, a)
        mid = pi.inv(m(pi(p), pi(pb), pi(pba)))
        c = q.left_divide(mid, pba)
        d = q.left_divide(p, mid)
        values[(a, b, c, d)][p] = R.unit
    entries = {key: L.from_values(v) for key, v in values.items()}
    return SigmaTensor(L, deg, entries)


@dataclass
class Counterexample:
    indices: tuple
    lhs: object
    rhs: object

    def to_json(self) -> dict:
        return {"indices": list(self.indices), "lhs": self.lhs.to_json(), "rhs": self.rhs.to_json()}


def check_tt(s: SigmaTensor) -> Counterexample | None:
    """T_{deg a^-1} T_{deg c^-1}(sigma^{bd}_{ac}) = T_{deg b^-1} T_{deg d^-1}(sigma^{bd}_{ac})."""
    deg = s.deg
    for a, b, c, d in product(range(s.n), repeat=4):
        f = s[(b, d, a, c)]
        lhs = deg.T_inv(a).apply(deg.T_inv(c).apply(f))
        rhs = deg.T_inv(b).apply(deg.T_inv(d).apply(f))
        if lhs != rhs:
            return Counterexample((a, b, c, d), lhs, rhs)
    return None


def check_left_rhoT(s: SigmaTensor) -> Counterexample | None:
    """rho_l(sigma^{bd}_{ac}) T_{deg d} T_{deg b} = rho_r(sigma^{bd}_{ac}) T_{deg c} T_{deg a}."""
    T = s.T_op
    for a, b, c, d in product(range(s.n), repeat=4):
        f = s[(b, d, a, c)]
        lhs = rho_left(f) @ T(d) @ T(b)
        rhs = rho_right(f) @ T(c) @ T(a)
        if lhs != rhs:
            return Counterexample((a, b, c, d), lhs, rhs)
    return None


def check_right_rhoT(s: SigmaTensor) -> Counterexample | None:
    """T_{deg a^-1} T_{deg c^-1} rho_l(sigma^{bd}_{ac}) = T_{deg b^-1} T_{deg d^-1} rho_r(sigma^{bd}_{ac})."""
    Ti = s.Tinv_op
    for a, b, c, d in product(range(s.n), repeat=4):
        f = s[(b, d, a, c)]
        lhs = Ti(a) @ Ti(c) @ rho_left(f)
        rhs = Ti(b) @ Ti(d) @ rho_right(f)
        if lhs != rhs:
            return Counterexample((a, b, c, d), lhs, rhs)
    return None


@dataclass
class EquivalenceReport:
    right: bool
    left: bool
    tt: bool

    @property
    def consistent(self) -> bool:
        """right <=> (left and tt) on this instance."""
        return self.right == (self.left and self.tt)

    def to_json(self) -> dict:
        return {"right": self.right, "left": self.left, "tt": self.tt,
                "verdict": "consistent" if self.consistent else "inconsistent"}


def check_remark_equivalence(s: SigmaTensor) -> EquivalenceReport:
    return EquivalenceReport(
        right=check_right_rhoT(s) is None,
        left=check_left_rhoT(s) is None,
        tt=check_tt(s) is None,
    )


def flip_sigma(L: FunctionAlgebra, deg: DegreeMap) -> SigmaTensor:
    """sigma^{ab}_{cd} = delta_{cb} delta_{da} 1_L."""
    n = deg.size
    ent = {(a, b, b, a): L.one for a in range(n) for b in range(n)}
    return SigmaTensor(L, deg, ent)
