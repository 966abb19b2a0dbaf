"""Finite quasigroups (Latin squares), ternary operations and the degree map."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

from .ringcore import AutomorphismT, InputError

QG5_TABLE = (
    (4, 3, 2, 1, 0),
    (3, 1, 0, 2, 4),
    (0, 2, 3, 4, 1),
    (1, 0, 4, 3, 2),
    (2, 4, 1, 0, 3),
)


@dataclass(frozen=True)
class LatinCounterexample:
    kind: str  # "row" | "column" | "range"
    index: int
    value: int

    def to_json(self) -> dict:
        return {"kind": self.kind, "index": self.index, "value": self.value}


def _is_perm(seq, n) -> bool:
    return sorted(seq) == list(range(n))


@dataclass(frozen=True)
class Quasigroup:
    """Cayley table on {0..n-1}; ``table[a][b] = a*b`` (row = left factor)."""

    table: tuple
    n: int = field(init=False)

    def __post_init__(self):
        t = tuple(tuple(int(x) for x in row) for row in self.table)
        object.__setattr__(self, "table", t)
        object.__setattr__(self, "n", len(t))
        if any(len(row) != len(t) for row in t):
            raise InputError("Cayley table must be square")

    @classmethod
    def from_table(cls, table) -> "Quasigroup":
        return cls(tuple(tuple(r) for r in table))

    def _check(self, *xs):
        for x in xs:
            if not 0 <= x < self.n:
                raise InputError(f"element {x} out of range 0..{self.n - 1}")

    def multiply(self, a: int, b: int) -> int:
        self._check(a, b)
        return self.table[a][b]

    def left_divide(self, a: int, c: int) -> int:
        """The unique b with a*b = c."""
        self._check(a, c)
        return self._ldiv[a][c]

    def right_divide(self, c: int, b: int) -> int:
        """The unique a with a*b = c."""
        self._check(c, b)
        return self._rdiv[b][c]

    @property
    def _ldiv(self):
        cache = self.__dict__.get("_ldiv_cache")
        if cache is None:
            if validate_latin(self) is not None:
                raise InputError("divisions need a Latin square")
            cache = [[0] * self.n for _ in range(self.n)]
            for a in range(self.n):
                for b in range(self.n):
                    cache[a][self.table[a][b]] = b
            object.__setattr__(self, "_ldiv_cache", cache)
        return cache

    @property
    def _rdiv(self):
        cache = self.__dict__.get("_rdiv_cache")
        if cache is None:
            if validate_latin(self) is not None:
                raise InputError("divisions need a Latin square")
            cache = [[0] * self.n for _ in range(self.n)]
            for a in range(self.n):
                for b in range(self.n):
                    cache[b][self.table[a][b]] = a
            object.__setattr__(self, "_rdiv_cache", cache)
        return cache

    def to_json(self) -> dict:
        return {"kind": "table", "table": [list(r) for r in self.table]}


def validate_latin(q: Quasigroup) -> LatinCounterexample | None:
    """None if every row and column is a permutation, else the first offence."""
    n = q.n
    for a, row in enumerate(q.table):
        for v in row:
            if not 0 <= v < n:
                return LatinCounterexample("range", a, v)
    for a, row in enumerate(q.table):
        seen = set()
        for v in row:
            if v in seen:
                return LatinCounterexample("row", a, v)
            seen.add(v)
    for b in range(n):
        seen = set()
        for a in range(n):
            v = q.table[a][b]
            if v in seen:
                return LatinCounterexample("column", b, v)
            seen.add(v)
    return None


def builtin_qg5() -> Quasigroup:
    return Quasigroup(QG5_TABLE)


@dataclass(frozen=True)
class TernaryOp:
    """mu: M^3 -> M with ``mu[a][b][c]``."""

    mu: tuple
    n: int = field(init=False)

    def __post_init__(self):
        t = tuple(tuple(tuple(int(x) for x in r) for r in plane) for plane in self.mu)
        object.__setattr__(self, "mu", t)
        object.__setattr__(self, "n", len(t))
        n = len(t)
        if any(len(p) != n or any(len(r) != n for r in p) for p in t):
            raise InputError("ternary table must be n x n x n")
        if any(not 0 <= x < n for p in t for r in p for x in r):
            raise InputError("ternary table value out of range")

    def __call__(self, a: int, b: int, c: int) -> int:
        return self.mu[a][b][c]

    @classmethod
    def from_function(cls, n: int, fn) -> "TernaryOp":
        return cls(tuple(tuple(tuple(fn(a, b, c) for c in range(n)) for b in range(n))
                         for a in range(n)))

    def to_json(self) -> dict:
        return {"kind": "table", "table": [[list(r) for r in p] for p in self.mu]}


@dataclass(frozen=True)
class AxiomViolation:
    axiom: str
    witness: tuple
    detail: str = ""

    def to_json(self) -> dict:
        return {"axiom": self.axiom, "witness": list(self.witness), "detail": self.detail}


def validate_ternary(m: TernaryOp, first_only: bool = True) -> list[AxiomViolation]:
    """Exhaustive check of QG1-QG5; empty list means all hold.

    With ``first_only`` each axiom reports only its first witness.
    """
    mu = m.mu
    n = m.n
    out: list[AxiomViolation] = []

    def record(axiom, witness, detail=""):
        if first_only and any(v.axiom == axiom for v in out):
            return
        out.append(AxiomViolation(axiom, witness, detail))

    for a, b, c, d in product(range(n), repeat=4):
        abc = mu[a][b][c]
        bcd = mu[b][c][d]
        if mu[a][abc][mu[abc][c][d]] != mu[a][b][bcd]:
            record("QG1", (a, b, c, d))
        if mu[abc][c][d] != mu[mu[a][b][bcd]][bcd][d]:
            record("QG2", (a, b, c, d))

    # QG3: a unique given (b, c, d); QG4: b unique given (a, c, d); QG5: c unique given (a, b, d)
    for slot, axiom in ((0, "QG3"), (1, "QG4"), (2, "QG5")):
        for fixed in product(range(n), repeat=2):
            counts = [0] * n
            for x in range(n):
                args = list(fixed)
                args.insert(slot, x)
                counts[mu[args[0]][args[1]][args[2]]] += 1
            for d, cnt in enumerate(counts):
                if cnt != 1:
                    record(axiom, fixed + (d,), f"{cnt} solutions")
    return out


@dataclass(frozen=True)
class PiBijection:
    """Bijection QG -> M given as an array; stores the inverse."""

    map: tuple
    inverse: tuple = field(init=False)

    def __post_init__(self):
        m = tuple(int(x) for x in self.map)
        object.__setattr__(self, "map", m)
        if not _is_perm(m, len(m)):
            raise InputError(f"pi {m} is not a bijection")
        inv = [0] * len(m)
        for a, b in enumerate(m):
            inv[b] = a
        object.__setattr__(self, "inverse", tuple(inv))

    def __call__(self, a: int) -> int:
        return self.map[a]

    def inv(self, b: int) -> int:
        return self.inverse[b]

    @classmethod
    def identity(cls, n: int) -> "PiBijection":
        return cls(tuple(range(n)))


@dataclass(frozen=True)
class DegreeMap:
    """deg(a) is the permutation p -> p*a of H (column a of the Cayley table).

    Composition follows the opposite symmetric group: p(ab) = (pa)b, which
    is exactly the composition law of :class:`AutomorphismT`.
    """

    perms: tuple
    inverses: tuple

    def T(self, a: int) -> AutomorphismT:
        return AutomorphismT(self.perms[a])

    def T_inv(self, a: int) -> AutomorphismT:
        return AutomorphismT(self.inverses[a])

    @property
    def size(self) -> int:
        return len(self.perms)


def degree_map(q: Quasigroup) -> DegreeMap:
    n = q.n
    perms = []
    invs = []
    for a in range(n):
        col = tuple(q.table[p][a] for p in range(n))
        if not _is_perm(col, n):
            raise InputError(f"column {a} is not a permutation")
        inv = [0] * n
        for p, v in enumerate(col):
            inv[v] = p
        perms.append(col)
        invs.append(tuple(inv))
    return DegreeMap(tuple(perms), tuple(invs))


def abelian_ternary(n: int) -> TernaryOp:
    """mu(a, b, c) = a - b + c mod n."""
    return TernaryOp.from_function(n, lambda a, b, c: (a - b + c) % n)


def from_abelian_group(n: int) -> tuple[Quasigroup, TernaryOp, PiBijection]:
    if n < 2:
        raise InputError("the quasigroup needs at least two elements")
    q = Quasigroup(tuple(tuple((a + b) % n for b in range(n)) for a in range(n)))
    return q, abelian_ternary(n), PiBijection.identity(n)
