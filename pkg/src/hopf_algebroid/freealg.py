"""Normal forms in k<Gen> modulo the coefficient relations.

Every element is stored as a sparse vector over coordinates
``(word, block, i, j)``: the basis coefficient ``e_{lam,i} (x) e_{mu,j}`` of
L (x) L^op (block = lam * |H| + mu) placed to the left of a word in the letters
L_ab / Li_ab.  Straightening moves coefficients left through letters,

    L_ab  (f (x) g) = (T_{deg a} f (x) T_{deg b} g) L_ab
    Li_ab (f (x) g) = (T_{deg b}^{-1} f (x) T_{deg a}^{-1} g) Li_ab,

merges adjacent coefficients in L (x) L^op (second leg opposite) and
identifies the empty word with 1 (x) 1.  Only the Kronecker relations and the
sigma relations remain as ideal generators (:func:`relation_set`).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from itertools import product

from .ringcore import FnElement, FunctionAlgebra, InputError
from .quasigroup import DegreeMap

L_KIND, LI_KIND = 0, 1
_LETTER_RE = re.compile(r"^(L|Li)\[(\d+),(\d+)\]$")


@dataclass(frozen=True)
class Coeff:
    """A coefficient letter: sparse {(block, i, j): scalar} in L (x) L^op."""

    data: tuple  # sorted ((block, i, j), scalar) pairs


@dataclass(frozen=True)
class Lgen:
    a: int
    b: int


@dataclass(frozen=True)
class Linv:
    a: int
    b: int


class FreeAlgebra:
    """Context for normal-form arithmetic: L = R^H, X and deg."""

    def __init__(self, L: FunctionAlgebra, deg: DegreeMap):
        self.L = L
        self.deg = deg
        self.field = L.field
        self.R = L.R
        self.r = L.R.dim
        self.h = L.npoints
        self.nx = deg.size
        self.nblocks = self.h * self.h
        self.nletters = 2 * self.nx * self.nx
        taus = []
        for kind, a, b in self.letters():
            if kind == L_KIND:
                p1, p2 = deg.inverses[a], deg.inverses[b]
            else:
                p1, p2 = deg.perms[b], deg.perms[a]
            taus.append(tuple(p1[B // self.h] * self.h + p2[B % self.h]
                              for B in range(self.nblocks)))
        self.tau = tuple(taus)
        rr = {}
        Rs = self.R.sparse
        for i1, j1, i2, j2 in product(range(self.r), repeat=4):
            out = []
            for k, c1 in Rs[(i1, i2)]:
                for l, c2 in Rs[(j2, j1)]:
                    out.append((k, l, c1 * c2))
            rr[(i1, j1, i2, j2)] = tuple(out)
        self.rr = rr
        self.unit_pairs = tuple((i, j, ci * cj) for i, ci in self.R.unit_support
                                for j, cj in self.R.unit_support)
        self.block_map = lru_cache(maxsize=None)(self._block_map)
        self.block_map_inv = lru_cache(maxsize=None)(self._block_map_inv)

    # letters ---------------------------------------------------------------
    def letters(self):
        n = self.nx
        for kind in (L_KIND, LI_KIND):
            for a in range(n):
                for b in range(n):
                    yield kind, a, b

    def letter_id(self, kind, a: int, b: int) -> int:
        if isinstance(kind, str):
            kind = {"L": L_KIND, "Li": LI_KIND}[kind]
        if not (0 <= a < self.nx and 0 <= b < self.nx):
            raise InputError(f"letter index {(a, b)} out of range")
        return kind * self.nx * self.nx + a * self.nx + b

    def letter_info(self, ell: int) -> tuple[int, int, int]:
        kind, rest = divmod(ell, self.nx * self.nx)
        a, b = divmod(rest, self.nx)
        return kind, a, b

    def letter_name(self, ell: int) -> str:
        kind, a, b = self.letter_info(ell)
        return f"{'L' if kind == L_KIND else 'Li'}[{a},{b}]"

    def parse_letter(self, s: str) -> int:
        m = _LETTER_RE.match(s.replace(" ", ""))
        if not m:
            raise InputError(f"bad letter {s!r}")
        return self.letter_id(m.group(1), int(m.group(2)), int(m.group(3)))

    def word_names(self, word) -> list[str]:
        return [self.letter_name(x) for x in word]

    def _block_map(self, word: tuple) -> tuple:
        """tau_w as a tuple over blocks: w (c at B) = (c transported to tau_w(B)) w."""
        m = tuple(range(self.nblocks))
        for ell in reversed(word):
            t = self.tau[ell]
            m = tuple(t[x] for x in m)
        return m

    def _block_map_inv(self, word: tuple) -> tuple:
        m = self.block_map(word)
        inv = [0] * self.nblocks
        for B, C in enumerate(m):
            inv[C] = B
        return tuple(inv)

    def right_block(self, coord) -> int:
        """Block of the coefficient after moving it to the right end of the word."""
        return self.block_map_inv(coord[0])[coord[1]]

    # constructors ----------------------------------------------------------
    def element(self, terms: dict) -> "FreeElement":
        return FreeElement(self, {k: v for k, v in terms.items() if v != 0})

    @property
    def zero(self) -> "FreeElement":
        return FreeElement(self, {})

    def _unit_terms(self, word=()) -> dict:
        return {(word, B, i, j): c for B in range(self.nblocks) for i, j, c in self.unit_pairs}

    @property
    def unit(self) -> "FreeElement":
        return FreeElement(self, self._unit_terms())

    def word(self, word) -> "FreeElement":
        word = tuple(self.parse_letter(x) if isinstance(x, str) else x for x in word)
        return FreeElement(self, self._unit_terms(word))

    def letter(self, kind, a: int, b: int) -> "FreeElement":
        return self.word((self.letter_id(kind, a, b),))

    def basis_coeff(self, block: int, i: int, j: int, word=()) -> "FreeElement":
        return FreeElement(self, {(tuple(word), block, i, j): self.field.one})

    def coeff(self, f: FnElement, g: FnElement) -> "FreeElement":
        """f (x) g in L (x) L^op, as a degree-0 element."""
        return FreeElement(self, dict(self._coeff_terms(f, g)))

    def _coeff_terms(self, f: FnElement, g: FnElement):
        r, h = self.r, self.h
        for lam in range(h):
            fl = f.at(lam)
            for i in range(r):
                if fl[i] == 0:
                    continue
                for mu in range(h):
                    gm = g.at(mu)
                    for j in range(r):
                        if gm[j] != 0:
                            yield ((), lam * h + mu, i, j), fl[i] * gm[j]

    def s_map(self, f: FnElement) -> "FreeElement":
        return self.coeff(f, self.L.one)

    def t_map(self, f: FnElement) -> "FreeElement":
        return self.coeff(self.L.one, f)

    def sum(self, elements) -> "FreeElement":
        acc: dict = {}
        for e in elements:
            for k, v in e.terms.items():
                acc[k] = acc.get(k, 0) + v
        return self.element(acc)

    # products --------------------------------------------------------------
    def mul_coords(self, c1, c2):
        """Product of two basis coordinates as a list of (coord, scalar)."""
        w1, B1, i1, j1 = c1
        w2, B2, i2, j2 = c2
        if self.block_map(w1)[B2] != B1:
            return ()
        w = w1 + w2
        return [((w, B1, k, l), c) for k, l, c in self.rr[(i1, j1, i2, j2)]]

    def multiply(self, u: "FreeElement", v: "FreeElement") -> "FreeElement":
        by_block: dict = {}
        for (w2, B2, i2, j2), s2 in v.terms.items():
            by_block.setdefault(B2, []).append((w2, i2, j2, s2))
        acc: dict = {}
        rr = self.rr
        for (w1, B1, i1, j1), s1 in u.terms.items():
            B2 = self.block_map_inv(w1)[B1]
            for w2, i2, j2, s2 in by_block.get(B2, ()):
                s = s1 * s2
                w = w1 + w2
                for k, l, c in rr[(i1, j1, i2, j2)]:
                    key = (w, B1, k, l)
                    acc[key] = acc.get(key, 0) + s * c
        return self.element(acc)

    def coeff_letter(self, data) -> Coeff:
        return Coeff(tuple(sorted(data.items())))

    def raw_atom(self, letter) -> "FreeElement":
        if isinstance(letter, Coeff):
            return self.element({((), B, i, j): v for (B, i, j), v in letter.data})
        if isinstance(letter, Lgen):
            return self.letter("L", letter.a, letter.b)
        if isinstance(letter, Linv):
            return self.letter("Li", letter.a, letter.b)
        if isinstance(letter, str):
            return self.word((letter,))
        raise InputError(f"unknown letter {letter!r}")

    def coeff_letter_from(self, f: FnElement, g: FnElement) -> Coeff:
        return Coeff(tuple(sorted(((B, i, j), v) for (_, B, i, j), v in self._coeff_terms(f, g))))


def straighten(alg: FreeAlgebra, raw) -> "FreeElement":
    """Normal form of a raw k-linear combination of words over Gen.

    ``raw`` is a list of ``(scalar, [letters])`` with letters :class:`Coeff`,
    :class:`Lgen`, :class:`Linv` or strings like ``"L[0,1]"``; a
    :class:`FreeElement` is returned unchanged (straightening is idempotent).
    """
    if isinstance(raw, FreeElement):
        return raw
    total = alg.zero
    for scalar, letters in raw:
        acc = alg.unit
        for x in letters:
            acc = acc * alg.raw_atom(x)
        total = total + acc.scale(alg.field(scalar))
    return total


class FreeElement:
    __slots__ = ("alg", "terms")

    def __init__(self, alg: FreeAlgebra, terms: dict):
        self.alg = alg
        self.terms = terms

    def __add__(self, other: "FreeElement") -> "FreeElement":
        acc = dict(self.terms)
        for k, v in other.terms.items():
            nv = acc.get(k, 0) + v
            if nv == 0:
                acc.pop(k, None)
            else:
                acc[k] = nv
        return FreeElement(self.alg, acc)

    def __neg__(self) -> "FreeElement":
        return FreeElement(self.alg, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other: "FreeElement") -> "FreeElement":
        return self + (-other)

    def scale(self, c) -> "FreeElement":
        if c == 0:
            return FreeElement(self.alg, {})
        return FreeElement(self.alg, {k: c * v for k, v in self.terms.items()})

    def __mul__(self, other: "FreeElement") -> "FreeElement":
        return self.alg.multiply(self, other)

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def degree(self) -> int:
        return max((len(k[0]) for k in self.terms), default=0)

    def words(self) -> list[tuple]:
        return sorted({k[0] for k in self.terms}, key=lambda w: (len(w), w))

    def __eq__(self, other):
        return isinstance(other, FreeElement) and (self - other).is_zero()

    __hash__ = None

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: (len(kv[0][0]), kv[0]))

    def to_json(self) -> dict:
        alg = self.alg
        f = alg.field.format
        by_word: dict = {}
        for (w, B, i, j), v in self.terms.items():
            blocks = by_word.setdefault(w, {})
            lam, mu = divmod(B, alg.h)
            mat = blocks.setdefault(f"{lam},{mu}", [[f(0)] * alg.r for _ in range(alg.r)])
            mat[i][j] = f(v)
        return {"terms": [{"word": alg.word_names(w), "coeff": dict(sorted(by_word[w].items()))}
                          for w in sorted(by_word, key=lambda w: (len(w), w))]}

    @classmethod
    def from_json(cls, alg: FreeAlgebra, data: dict) -> "FreeElement":
        terms = {}
        for t in data["terms"]:
            w = tuple(alg.parse_letter(x) for x in t["word"])
            for blk, mat in t["coeff"].items():
                lam, mu = (int(x) for x in blk.split(","))
                for i, row in enumerate(mat):
                    for j, v in enumerate(row):
                        v = alg.field(v)
                        if v != 0:
                            terms[(w, lam * alg.h + mu, i, j)] = v
        return cls(alg, terms)

    def __repr__(self):
        parts = []
        for (w, B, i, j), v in self.sorted_terms()[:8]:
            parts.append(f"{v}*e[{B},{i},{j}]{''.join(self.alg.word_names(w))}")
        more = "" if len(self.terms) <= 8 else f" + ...({len(self.terms)} terms)"
        return "FreeElement(" + (" + ".join(parts) or "0") + more + ")"


@dataclass
class RelationSet:
    """Residual ideal generators in canonical order: R2a, R2b, then R4."""

    alg: FreeAlgebra
    ids: list
    elements: list

    def __len__(self):
        return len(self.ids)

    def __iter__(self):
        return iter(zip(self.ids, self.elements))

    def get(self, rid: str) -> FreeElement:
        return self.elements[self.ids.index(rid)]

    def index(self, rid: str) -> int:
        return self.ids.index(rid)


def relation_set(alg: FreeAlgebra, sigma) -> RelationSet:
    """R2a[a,b] = sum_c L_ac Li_cb - delta_ab,  R2b[a,b] = sum_c Li_ac L_cb - delta_ab,
    R4[a,b,c,d] = sum_{x,y} (sigma^{xy}_{ac} (x) 1) L_yd L_xb - sum_{x,y} (1 (x) sigma^{bd}_{xy}) L_cy L_ax."""
    n = alg.nx
    L = alg.L
    ids, els = [], []
    one = alg.unit
    for name, (k1, k2) in (("R2a", ("L", "Li")), ("R2b", ("Li", "L"))):
        for a, b in product(range(n), repeat=2):
            e = alg.sum(alg.letter(k1, a, c) * alg.letter(k2, c, b) for c in range(n))
            if a == b:
                e = e - one
            ids.append(f"{name}[{a},{b}]")
            els.append(e)
    for a, b, c, d in product(range(n), repeat=4):
        parts = []
        for x, y in product(range(n), repeat=2):
            s1 = sigma[(x, y, a, c)]
            if not s1.is_zero():
                parts.append(alg.coeff(s1, L.one) * alg.letter("L", y, d) * alg.letter("L", x, b))
            s2 = sigma[(b, d, x, y)]
            if not s2.is_zero():
                parts.append(-(alg.coeff(L.one, s2) * alg.letter("L", c, y) * alg.letter("L", a, x)))
        ids.append(f"R4[{a},{b},{c},{d}]")
        els.append(alg.sum(parts))
    return RelationSet(alg, ids, els)


def absorbed_generators(alg: FreeAlgebra):
    """Raw instances of the coefficient families that straightening absorbs.

    Yields ``(id, raw)`` with raw in the format accepted by :func:`straighten`.
    Coefficient-arithmetic instances use basis coefficients; the
    coefficient-commutation instances use every basis element f of L.
    """
    L = alg.L
    one = L.one
    basis = L.basis_elements()
    bl = [(B, i, j) for B in range(alg.nblocks) for i in range(alg.r) for j in range(alg.r)]
    F = alg.field

    def cl(items):
        return Coeff(tuple(sorted(items)))

    # coefficient arithmetic: sums, scalar multiples, products
    for p, q in product(bl, repeat=2):
        xi, xi2 = cl([(p, F.one)]), cl([(q, F.one)])
        merged = {}
        for key in (p, q):
            merged[key] = merged.get(key, F.zero) + F.one
        yield (f"sum[{p},{q}]", [(1, [xi]), (1, [xi2]), (-1, [cl(list(merged.items()))])])
        prod_el = alg.basis_coeff(*p) * alg.basis_coeff(*q)
        prod_coeff = cl([((B, i, j), v) for (_, B, i, j), v in prod_el.terms.items()])
        yield (f"product[{p},{q}]", [(1, [xi, xi2]), (-1, [prod_coeff])])
    for p in bl:
        yield (f"scalar[{p}]", [(3, [cl([(p, F.one)])]), (-1, [cl([(p, F(3))])])])
    n = alg.nx
    deg = alg.deg
    for f, (a, b) in product(basis, product(range(n), repeat=2)):
        Ta_f = deg.T(a).apply(f)
        Tb_f = deg.T(b).apply(f)
        c = alg.coeff_letter_from
        yield (f"commute-L-left[{a},{b}]", [(1, [c(Ta_f, one), Lgen(a, b)]), (-1, [Lgen(a, b), c(f, one)])])
        yield (f"commute-L-right[{a},{b}]", [(1, [c(one, Tb_f), Lgen(a, b)]), (-1, [Lgen(a, b), c(one, f)])])
        yield (f"commute-Li-left[{a},{b}]", [(1, [c(f, one), Linv(a, b)]), (-1, [Linv(a, b), c(Tb_f, one)])])
        yield (f"commute-Li-right[{a},{b}]", [(1, [c(one, f), Linv(a, b)]), (-1, [Linv(a, b), c(one, Ta_f)])])
    yield ("empty-word", [(1, []), (-1, [alg.coeff_letter_from(one, one)])])
