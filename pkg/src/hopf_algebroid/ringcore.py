"""Coefficient algebra R, the function algebra L = R^H, and k-linear operators on L.

The basis of L is fixed once: pairs (point, R-basis index) ordered
lexicographically, flattened to ``point * dim(R) + index``.  Every operator
matrix uses this basis, so operator equality is an exact entrywise test.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .field import QQ
from . import linalg


class InputError(ValueError):
    """Malformed or inconsistent input data."""


class UnsupportedMode(RuntimeError):
    pass


class AlgebraR:
    """Finite-dimensional associative unital k-algebra by structure constants.

    ``mul[i][j]`` is the coordinate vector of ``e_i e_j``.
    """

    def __init__(self, field, mul, unit, name: str = "custom", validate: bool = True):
        self.field = field
        self.dim = len(unit)
        self.name = name
        self.unit = tuple(field(u) for u in unit)
        self.mul = tuple(tuple(tuple(field(c) for c in mul[i][j]) for j in range(self.dim))
                         for i in range(self.dim))
        if any(len(row) != self.dim for row in mul) or any(
            len(v) != self.dim for row in mul for v in row
        ):
            raise InputError("structure constants must be dim x dim x dim")
        # sparse view: (i, j) -> [(k, c)]
        self.sparse = {
            (i, j): [(k, c) for k, c in enumerate(self.mul[i][j]) if c != 0]
            for i in range(self.dim)
            for j in range(self.dim)
        }
        self.unit_support = [(k, c) for k, c in enumerate(self.unit) if c != 0]
        if validate:
            self.validate()

    def product(self, u, v) -> tuple:
        out = [self.field.zero] * self.dim
        for i, a in enumerate(u):
            if a == 0:
                continue
            for j, b in enumerate(v):
                if b == 0:
                    continue
                ab = a * b
                for k, c in self.sparse[(i, j)]:
                    out[k] += ab * c
        return tuple(out)

    def basis(self, i: int) -> tuple:
        return tuple(self.field.one if k == i else self.field.zero for k in range(self.dim))

    def validate(self) -> None:
        """Raise :class:`InputError` unless associative with two-sided unit."""
        for i in range(self.dim):
            ei = self.basis(i)
            if self.product(self.unit, ei) != ei or self.product(ei, self.unit) != ei:
                raise InputError(f"unit is not two-sided on basis element {i}")
        for i in range(self.dim):
            for j in range(self.dim):
                eij = self.mul[i][j]
                for k in range(self.dim):
                    ek = self.basis(k)
                    if self.product(eij, ek) != self.product(self.basis(i), self.mul[j][k]):
                        raise InputError(f"not associative on basis triple {(i, j, k)}")

    @cached_property
    def is_commutative(self) -> bool:
        return all(self.mul[i][j] == self.mul[j][i]
                   for i in range(self.dim) for j in range(self.dim))

    def to_json(self) -> dict:
        f = self.field.format
        return {
            "name": self.name,
            "dim": self.dim,
            "mul": [[[f(c) for c in v] for v in row] for row in self.mul],
            "unit": [f(c) for c in self.unit],
        }

    def __repr__(self):
        return f"AlgebraR({self.name}, dim={self.dim}, {self.field!r})"


def preset_algebra(name: str, field=QQ) -> AlgebraR:
    """``base`` (R = k), ``dual`` (k[x]/(x^2), basis 1, x), ``mat2`` (basis E11, E12, E21, E22)."""
    if name == "base":
        return AlgebraR(field, [[[1]]], [1], name="base")
    if name == "dual":
        return AlgebraR(field, [[[1, 0], [0, 1]], [[0, 1], [0, 0]]], [1, 0], name="dual")
    if name == "mat2":
        mul = []
        for i in range(4):
            row = []
            for j in range(4):
                (p, q), (r, s) = divmod(i, 2), divmod(j, 2)
                v = [0] * 4
                if q == r:
                    v[2 * p + s] = 1
                row.append(v)
            mul.append(row)
        return AlgebraR(field, mul, [1, 0, 0, 1], name="mat2")
    raise InputError(f"unknown algebra preset {name!r}")


def radical_dim(R: AlgebraR) -> int:
    """Dimension of the radical of the trace form of the left regular representation.

    In characteristic zero this is the Jacobson radical (Dickson), so 0 means
    R is semisimple.
    """
    if R.field.characteristic != 0:
        raise UnsupportedMode("radical_dim needs characteristic 0")
    d = R.dim
    # trace of left multiplication by e_m: sum_j mul[m][j][j]
    tr = [sum((R.mul[m][j][j] for j in range(d)), R.field.zero) for m in range(d)]
    gram = [[sum((R.mul[i][j][m] * tr[m] for m in range(d)), R.field.zero)
             for j in range(d)] for i in range(d)]
    return d - linalg.rank(linalg.dense_rows(gram))


class FunctionAlgebra:
    """L = maps H -> R with pointwise product, H = {0, ..., npoints-1}."""

    def __init__(self, npoints: int, R: AlgebraR):
        if npoints < 1:
            raise InputError("H must be nonempty")
        self.npoints = npoints
        self.R = R
        self.field = R.field
        self.dim = npoints * R.dim

    def index(self, point: int, i: int) -> int:
        return point * self.R.dim + i

    def element(self, coords) -> "FnElement":
        coords = tuple(self.field(c) for c in coords)
        if len(coords) != self.dim:
            raise InputError(f"expected {self.dim} coordinates, got {len(coords)}")
        return FnElement(self, coords)

    def from_values(self, values) -> "FnElement":
        """From a list (indexed by H) of R-coordinate vectors."""
        if len(values) != self.npoints:
            raise InputError("one R-vector per point of H expected")
        flat = []
        for v in values:
            if len(v) != self.R.dim:
                raise InputError("R-vector of wrong length")
            flat.extend(v)
        return self.element(flat)

    @cached_property
    def zero(self) -> "FnElement":
        return FnElement(self, (self.field.zero,) * self.dim)

    @cached_property
    def one(self) -> "FnElement":
        return FnElement(self, self.R.unit * self.npoints)

    def constant(self, r) -> "FnElement":
        return self.from_values([tuple(r)] * self.npoints)

    def indicator(self, point: int, r=None) -> "FnElement":
        r = self.R.unit if r is None else tuple(r)
        vals = [r if p == point else (self.field.zero,) * self.R.dim for p in range(self.npoints)]
        return self.from_values(vals)

    def basis(self, k: int) -> "FnElement":
        return FnElement(self, tuple(self.field.one if m == k else self.field.zero
                                     for m in range(self.dim)))

    def basis_elements(self) -> list["FnElement"]:
        return [self.basis(k) for k in range(self.dim)]

    def __eq__(self, other):
        return (isinstance(other, FunctionAlgebra) and other.npoints == self.npoints
                and other.R is self.R)

    def __hash__(self):
        return hash((self.npoints, id(self.R)))


@dataclass(frozen=True)
class FnElement:
    space: FunctionAlgebra
    coords: tuple

    def at(self, point: int) -> tuple:
        r = self.space.R.dim
        return self.coords[point * r:(point + 1) * r]

    def _check(self, other: "FnElement") -> None:
        if not isinstance(other, FnElement) or other.space != self.space:
            raise InputError("FnElement shape mismatch")

    def __add__(self, other: "FnElement") -> "FnElement":
        self._check(other)
        return FnElement(self.space, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "FnElement") -> "FnElement":
        self._check(other)
        return FnElement(self.space, tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "FnElement":
        return FnElement(self.space, tuple(-a for a in self.coords))

    def scale(self, c) -> "FnElement":
        return FnElement(self.space, tuple(c * a for a in self.coords))

    def __mul__(self, other: "FnElement") -> "FnElement":
        return fn_mul(self, other)

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)

    def __eq__(self, other):
        return (isinstance(other, FnElement) and other.space == self.space
                and all(a == b for a, b in zip(self.coords, other.coords)))

    def __hash__(self):
        return hash(tuple(str(c) for c in self.coords))

    def to_json(self) -> list:
        f = self.space.field.format
        return [[f(c) for c in self.at(p)] for p in range(self.space.npoints)]

    def __repr__(self):
        return f"FnElement({self.to_json()})"


def fn_mul(f: FnElement, g: FnElement) -> FnElement:
    """Pointwise product (fg)(p) = f(p) g(p)."""
    f._check(g)
    L = f.space
    out = []
    for p in range(L.npoints):
        out.extend(L.R.product(f.at(p), g.at(p)))
    return FnElement(L, tuple(out))


class LOperator:
    """k-linear endomorphism of L, stored as sparse rows in the fixed basis."""

    __slots__ = ("dim", "rows", "field")

    def __init__(self, dim: int, rows: dict, field=QQ):
        self.dim = dim
        self.field = field
        self.rows = {r: {c: v for c, v in row.items() if v != 0} for r, row in rows.items()}
        self.rows = {r: row for r, row in self.rows.items() if row}

    @classmethod
    def identity(cls, dim: int, field=QQ) -> "LOperator":
        return cls(dim, {i: {i: field.one} for i in range(dim)}, field)

    @classmethod
    def zero(cls, dim: int, field=QQ) -> "LOperator":
        return cls(dim, {}, field)

    def compose(self, other: "LOperator") -> "LOperator":
        """``self ∘ other`` (apply ``other`` first)."""
        out = {}
        for r, row in self.rows.items():
            acc: dict = {}
            for m, a in row.items():
                orow = other.rows.get(m)
                if not orow:
                    continue
                for c, b in orow.items():
                    acc[c] = acc.get(c, 0) + a * b
            out[r] = acc
        return LOperator(self.dim, out, self.field)

    __matmul__ = compose

    def __add__(self, other: "LOperator") -> "LOperator":
        out = {r: dict(row) for r, row in self.rows.items()}
        for r, row in other.rows.items():
            acc = out.setdefault(r, {})
            for c, v in row.items():
                acc[c] = acc.get(c, 0) + v
        return LOperator(self.dim, out, self.field)

    def __sub__(self, other: "LOperator") -> "LOperator":
        return self + other.scale(-1)

    def scale(self, c) -> "LOperator":
        return LOperator(self.dim, {r: {k: c * v for k, v in row.items()}
                                    for r, row in self.rows.items()}, self.field)

    def apply(self, f: FnElement) -> FnElement:
        out = [f.space.field.zero] * self.dim
        for r, row in self.rows.items():
            s = f.space.field.zero
            for c, v in row.items():
                s += v * f.coords[c]
            out[r] = s
        return FnElement(f.space, tuple(out))

    def is_zero(self) -> bool:
        return not self.rows

    def __eq__(self, other):
        return isinstance(other, LOperator) and self.dim == other.dim and (self - other).is_zero()

    def __hash__(self):
        return hash(self.dim)

    def to_matrix(self) -> list[list]:
        z = self.field.zero
        return [[self.rows.get(r, {}).get(c, z) for c in range(self.dim)] for r in range(self.dim)]

    def to_json(self) -> list:
        f = self.field.format
        return [[f(v) for v in row] for row in self.to_matrix()]

    def __repr__(self):
        return f"LOperator({self.to_json()})"


def rho_left(f: FnElement) -> LOperator:
    """g -> f g."""
    L = f.space
    r = L.R.dim
    rows: dict = {}
    for p in range(L.npoints):
        fp = f.at(p)
        for i, a in enumerate(fp):
            if a == 0:
                continue
            for j in range(r):
                for k, c in L.R.sparse[(i, j)]:
                    row = rows.setdefault(p * r + k, {})
                    row[p * r + j] = row.get(p * r + j, 0) + a * c
    return LOperator(L.dim, rows, L.field)


def rho_right(f: FnElement) -> LOperator:
    """g -> g f."""
    L = f.space
    r = L.R.dim
    rows: dict = {}
    for p in range(L.npoints):
        fp = f.at(p)
        for i, a in enumerate(fp):
            if a == 0:
                continue
            for j in range(r):
                for k, c in L.R.sparse[(j, i)]:
                    row = rows.setdefault(p * r + k, {})
                    row[p * r + j] = row.get(p * r + j, 0) + a * c
    return LOperator(L.dim, rows, L.field)


@dataclass(frozen=True)
class AutomorphismT:
    """Precomposition with a permutation of H: (T f)(p) = f(point_perm[p]).

    Only permutation-induced automorphisms are modelled; they are closed under
    inverse and composition, and equality is decidable.
    """

    point_perm: tuple

    def __post_init__(self):
        if sorted(self.point_perm) != list(range(len(self.point_perm))):
            raise InputError(f"{self.point_perm} is not a permutation")

    def inverse(self) -> "AutomorphismT":
        inv = [0] * len(self.point_perm)
        for p, q in enumerate(self.point_perm):
            inv[q] = p
        return AutomorphismT(tuple(inv))

    def then(self, other: "AutomorphismT") -> "AutomorphismT":
        """The automorphism ``self ∘ other``: (self∘other)(f)(p) = f(other.perm[self.perm[p]])."""
        return AutomorphismT(tuple(other.point_perm[q] for q in self.point_perm))

    def apply(self, f: FnElement) -> FnElement:
        return t_apply(self, f)

    def operator(self, L: FunctionAlgebra) -> LOperator:
        r = L.R.dim
        one = L.field.one
        return LOperator(L.dim, {p * r + i: {self.point_perm[p] * r + i: one}
                                 for p in range(L.npoints) for i in range(r)}, L.field)

    @classmethod
    def identity(cls, n: int) -> "AutomorphismT":
        return cls(tuple(range(n)))


def t_apply(T: AutomorphismT, f: FnElement) -> FnElement:
    L = f.space
    if len(T.point_perm) != L.npoints:
        raise InputError("automorphism acts on a different H")
    out = []
    for p in range(L.npoints):
        out.extend(f.at(T.point_perm[p]))
    return FnElement(L, tuple(out))


def compose_all(ops, dim: int, field=QQ) -> LOperator:
    out = LOperator.identity(dim, field)
    for op in ops:
        out = out.compose(op)
    return out
