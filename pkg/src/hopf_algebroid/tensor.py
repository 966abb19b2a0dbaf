"""A_sigma (x)_k A_sigma, the coproduct on representatives and the I_2 quotients.

I_2 is the right ideal generated by t(l) (x) 1 - 1 (x) s(l); the mirrored
I_2' is the left ideal with the same generators.  Both are kernels of
explicit linear maps:

    right:  (e_{lam,i} (x) e_{mu,j}) w (x) y  ->  [w, lam, i] (x) s(e_{mu,j}) y
    left:   w (e_{lam,i} (x) e_{mu,j}) (x) y  ->  [w, lam, i] (x) y s(e_{mu,j})

(in the left case the coefficient is first moved to the right end of its
word).  Membership of a target in J (x) A + A (x) J + I_2 is decided in the
image of that map with the same bounded span as :mod:`.membership`; the
bound applies to the total degree of both legs.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .freealg import L_KIND, LI_KIND, Coeff, FreeAlgebra, FreeElement, RelationSet
from .membership import (
    Echelon,
    MembershipSolver,
    SpanLabel,
    SpanTooLarge,
    coord_key,
    span_element,
    word_grade,
    words_up_to,
)


class TensorSquare:
    """Sparse element of F (x)_k F over pairs of normal-form coordinates."""

    __slots__ = ("alg", "terms")

    def __init__(self, alg: FreeAlgebra, terms: dict):
        self.alg = alg
        self.terms = {k: v for k, v in terms.items() if v != 0}

    @classmethod
    def pure(cls, x: FreeElement, y: FreeElement) -> "TensorSquare":
        terms: dict = {}
        for c1, s1 in x.terms.items():
            for c2, s2 in y.terms.items():
                terms[(c1, c2)] = terms.get((c1, c2), 0) + s1 * s2
        return cls(x.alg, terms)

    @classmethod
    def zero(cls, alg: FreeAlgebra) -> "TensorSquare":
        return cls(alg, {})

    def __add__(self, other: "TensorSquare") -> "TensorSquare":
        acc = dict(self.terms)
        for k, v in other.terms.items():
            acc[k] = acc.get(k, 0) + v
        return TensorSquare(self.alg, acc)

    def __neg__(self):
        return TensorSquare(self.alg, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "TensorSquare":
        return TensorSquare(self.alg, {k: c * v for k, v in self.terms.items()})

    def __mul__(self, other: "TensorSquare") -> "TensorSquare":
        alg = self.alg
        acc: dict = {}
        for (a1, a2), s in self.terms.items():
            for (b1, b2), t in other.terms.items():
                p1 = alg.mul_coords(a1, b1)
                if not p1:
                    continue
                p2 = alg.mul_coords(a2, b2)
                for c1, x1 in p1:
                    for c2, x2 in p2:
                        acc[(c1, c2)] = acc.get((c1, c2), 0) + s * t * x1 * x2
        return TensorSquare(alg, acc)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        return isinstance(other, TensorSquare) and (self - other).is_zero()

    __hash__ = None

    @property
    def degree(self) -> int:
        return max((len(a[0]) + len(b[0]) for a, b in self.terms), default=0)

    def legs(self):
        """Group as a list of (left leg coordinate element, right leg element)."""
        by_first: dict = {}
        for (c1, c2), v in self.terms.items():
            by_first.setdefault(c1, {})[c2] = v
        alg = self.alg
        return [(FreeElement(alg, {c1: alg.field.one}), FreeElement(alg, rest))
                for c1, rest in sorted(by_first.items(), key=lambda kv: coord_key(kv[0]))]

    def to_json(self) -> dict:
        return {"terms": [{"left": x.to_json(), "right": y.to_json()} for x, y in self.legs()]}

    @classmethod
    def from_json(cls, alg: FreeAlgebra, data: dict) -> "TensorSquare":
        acc = cls.zero(alg)
        for t in data["terms"]:
            acc = acc + cls.pure(FreeElement.from_json(alg, t["left"]), FreeElement.from_json(alg, t["right"]))
        return acc

    def __repr__(self):
        return f"TensorSquare({len(self.terms)} terms, degree {self.degree})"


class Coproduct:
    """Delta-bar on normal forms: coefficient f (x) g -> s(f) (x) t(g), letters as
    L_ab -> sum_c L_ac (x) L_cb and Li_ab -> sum_c Li_cb (x) Li_ac, multiplicatively."""

    def __init__(self, alg: FreeAlgebra):
        self.alg = alg
        self.word_pairs = lru_cache(maxsize=None)(self._word_pairs)

    def _word_pairs(self, word: tuple) -> tuple:
        """Delta of a bare word as a tuple of (word1, word2) with unit coefficients."""
        alg = self.alg
        if not word:
            return (((), ()),)
        rest = self.word_pairs(word[1:])
        kind, a, b = alg.letter_info(word[0])
        out = []
        for c in range(alg.nx):
            if kind == L_KIND:
                l1, l2 = alg.letter_id(L_KIND, a, c), alg.letter_id(L_KIND, c, b)
            else:
                l1, l2 = alg.letter_id(LI_KIND, c, b), alg.letter_id(LI_KIND, a, c)
            for w1, w2 in rest:
                out.append(((l1,) + w1, (l2,) + w2))
        return tuple(out)

    def coord(self, c) -> dict:
        """Delta of one coordinate as {(c1, c2): scalar}."""
        alg = self.alg
        w, B, i, j = c
        lam, mu = divmod(B, alg.h)
        out: dict = {}
        for w1, w2 in self.word_pairs(w):
            # s(e_{lam,i}) w1: left block (lam, x) for every x; t(e_{mu,j}) w2: (y, mu)
            for x in range(alg.h):
                B1 = lam * alg.h + x
                for jj, cu in alg.R.unit_support:
                    for y in range(alg.h):
                        B2 = y * alg.h + mu
                        for ii, cv in alg.R.unit_support:
                            key = ((w1, B1, i, jj), (w2, B2, ii, j))
                            out[key] = out.get(key, 0) + cu * cv
        return out

    def __call__(self, el: FreeElement) -> TensorSquare:
        acc: dict = {}
        for c, s in el.terms.items():
            for k, v in self.coord(c).items():
                acc[k] = acc.get(k, 0) + s * v
        return TensorSquare(self.alg, acc)

    def raw(self, raw) -> TensorSquare:
        """Delta-bar of raw (pre-straightening) letter lists, evaluated letter by letter."""
        alg = self.alg
        total = TensorSquare.zero(alg)
        for scalar, letters in raw:
            acc = TensorSquare.pure(alg.unit, alg.unit)
            for x in letters:
                if isinstance(x, Coeff):
                    part = TensorSquare.zero(alg)
                    for (B, i, j), v in x.data:
                        part = part + self(alg.basis_coeff(B, i, j)).scale(v)
                else:
                    part = self(alg.raw_atom(x))
                acc = acc * part
            total = total + acc.scale(alg.field(scalar))
        return total


def tensor_unit(alg: FreeAlgebra) -> TensorSquare:
    return TensorSquare.pure(alg.unit, alg.unit)


# quotient maps -------------------------------------------------------------

def _s_times(alg: FreeAlgebra, mu: int, j: int, c2):
    """s(e_{mu,j}) * c2 as a list of (coord, scalar)."""
    w2, B2, k, l = c2
    if B2 // alg.h != mu:
        return ()
    return [((w2, B2, kk, l), v) for kk, v in alg.R.sparse[(j, k)]]


def _times_s(alg: FreeAlgebra, mu: int, j: int, c2):
    """c2 * s(e_{mu,j}) as a list of (coord, scalar)."""
    w2, B2, k, l = c2
    if alg.right_block(c2) // alg.h != mu:
        return ()
    return [((w2, B2, kk, l), v) for kk, v in alg.R.sparse[(k, j)]]


def split_coeff(alg: FreeAlgebra, c1, side: str):
    """(v-coordinate, mu, j) with c1 = t(e_{mu,j}) v (right) or v t(e_{mu,j}) (left)."""
    w, B, i, j = c1
    if side == "right":
        lam, mu = divmod(B, alg.h)
    else:
        lam, mu = divmod(alg.right_block(c1), alg.h)
    return (w, lam, i), mu, j


def quotient_map(alg: FreeAlgebra, x: TensorSquare, side: str = "right") -> dict:
    """Image under the map whose kernel is I_2 (side 'right') or I_2' (side 'left')."""
    mult = _s_times if side == "right" else _times_s
    out: dict = {}
    for (c1, c2), s in x.terms.items():
        v, mu, j = split_coeff(alg, c1, side)
        for c, t in mult(alg, mu, j, c2):
            key = (v, c)
            nv = out.get(key, 0) + s * t
            if nv == 0:
                out.pop(key, None)
            else:
                out[key] = nv
    return out


def v_element(alg: FreeAlgebra, v, side: str) -> FreeElement:
    """s(e_{lam,i}) w (right) or w s(e_{lam,i}) (left) as a FreeElement."""
    w, lam, i = v
    if side == "right":
        return alg.s_map(alg.L.basis(alg.L.index(lam, i))) * alg.word(w)
    return alg.word(w) * alg.s_map(alg.L.basis(alg.L.index(lam, i)))


@dataclass
class I2Term:
    """scalar * (t(e) (x) 1 - 1 (x) s(e)) (x (x) y)  (right)  or  (x (x) y)(t(e) (x) 1 - 1 (x) s(e))  (left)."""

    point: int
    index: int
    x: FreeElement
    y: FreeElement
    scalar: Fraction

    def value(self, alg: FreeAlgebra, side: str) -> TensorSquare:
        e = alg.L.basis(alg.L.index(self.point, self.index))
        if side == "right":
            a = TensorSquare.pure(alg.t_map(e) * self.x, self.y)
            b = TensorSquare.pure(self.x, alg.s_map(e) * self.y)
        else:
            a = TensorSquare.pure(self.x * alg.t_map(e), self.y)
            b = TensorSquare.pure(self.x, self.y * alg.s_map(e))
        return (a - b).scale(alg.field(self.scalar))

    def to_json(self) -> dict:
        return {"e": {"point": self.point, "index": self.index}, "x": self.x.to_json(),
                "y": self.y.to_json(), "scalar": str(self.scalar)}

    @classmethod
    def from_json(cls, alg: FreeAlgebra, d: dict) -> "I2Term":
        return cls(d["e"]["point"], d["e"]["index"], FreeElement.from_json(alg, d["x"]),
                   FreeElement.from_json(alg, d["y"]), Fraction(d["scalar"]))


def i2_decomposition(alg: FreeAlgebra, z: TensorSquare, side: str = "right") -> list[I2Term] | None:
    """Explicit I_2 (or I_2') terms summing to z, or None when z is not in the kernel."""
    if quotient_map(alg, z, side):
        return None
    terms = []
    for (c1, c2), s in sorted(z.terms.items(), key=lambda kv: (coord_key(kv[0][0]), coord_key(kv[0][1]))):
        v, mu, j = split_coeff(alg, c1, side)
        terms.append(I2Term(mu, j, v_element(alg, v, side), FreeElement(alg, {c2: alg.field.one}), s))
    return terms


def in_i2(alg: FreeAlgebra, x: TensorSquare, side: str = "right") -> bool:
    return not quotient_map(alg, x, side)


# bounded membership in J (x) A + A (x) J + I_2 -----------------------------

@dataclass
class TensorTerm:
    """scalar * (J-vector (x) partner) for leg 1, or (partner (x) J-vector) for leg 2."""

    leg: int
    label: SpanLabel
    relation: str
    partner: FreeElement
    scalar: Fraction

    def value(self, rels: RelationSet) -> TensorSquare:
        alg = rels.alg
        lab = self.label
        jv = span_element(alg, rels.elements[lab.relation], lab.left, lab.xi, lab.zeta, lab.right)
        pair = (jv, self.partner) if self.leg == 1 else (self.partner, jv)
        return TensorSquare.pure(*pair).scale(alg.field(self.scalar))

    def to_json(self, alg: FreeAlgebra) -> dict:
        lab = self.label

        def coeff(c):
            B, i, j = c
            return {"block": list(divmod(B, alg.h)), "i": i, "j": j}

        return {"leg": self.leg, "relation": self.relation,
                "left_word": alg.word_names(lab.left), "right_word": alg.word_names(lab.right),
                "left_coeff": coeff(lab.xi), "right_coeff": coeff(lab.zeta),
                "partner": self.partner.to_json(), "scalar": str(self.scalar)}

    @classmethod
    def from_json(cls, rels: RelationSet, d: dict) -> "TensorTerm":
        alg = rels.alg

        def coeff(c):
            lam, mu = c["block"]
            return (lam * alg.h + mu, c["i"], c["j"])

        def word(names):
            return tuple(alg.parse_letter(x) for x in names)

        label = SpanLabel(rels.index(d["relation"]), word(d["left_word"]), word(d["right_word"]),
                          coeff(d["left_coeff"]), coeff(d["right_coeff"]))
        return cls(d["leg"], label, d["relation"], FreeElement.from_json(alg, d["partner"]),
                   Fraction(d["scalar"]))


@dataclass
class TensorCertificate:
    target: TensorSquare
    side: str
    terms: list
    i2_terms: list
    bound: int

    def to_json(self) -> dict:
        alg = self.target.alg
        return {"side": self.side, "bound": self.bound, "target": self.target.to_json(),
                "ideal_terms": [t.to_json(alg) for t in self.terms],
                "i2_terms": [t.to_json() for t in self.i2_terms]}

    @classmethod
    def from_json(cls, rels: RelationSet, d: dict) -> "TensorCertificate":
        alg = rels.alg
        return cls(TensorSquare.from_json(alg, d["target"]), d["side"],
                   [TensorTerm.from_json(rels, t) for t in d["ideal_terms"]],
                   [I2Term.from_json(alg, t) for t in d["i2_terms"]], d["bound"])


@dataclass
class TensorMember:
    certificate: TensorCertificate
    member: bool = True


@dataclass
class TensorNotFound:
    bound: int
    reason: str = "not in the bounded span"
    member: bool = False


def _v_key(v):
    w, lam, i = v
    return (len(w), w, lam, i)


class TensorMembershipSolver:
    """Decides x in J (x) A + A (x) J + I_2 (or I_2') with total degree at most D."""

    def __init__(self, single: MembershipSolver, side: str = "right", max_vectors: int = 2_000_000):
        self.single = single
        self.rels = single.rels
        self.alg = single.alg
        self.D = single.D
        self.side = side
        self.max_vectors = max_vectors
        self._echelons: dict = {}
        self._labels: dict = {}
        self._lock = threading.RLock()
        self._coords_cache = None

    def _component(self, v, c):
        alg = self.alg
        w1, lam, _ = v
        if self.side == "right":
            other = alg.block_map_inv(w1)[lam * alg.h] // alg.h
            vblocks = (lam, other)
        else:
            other = alg.block_map(w1)[lam * alg.h] // alg.h
            vblocks = (other, lam)
        return (vblocks, word_grade(alg, w1), c[1], alg.right_block(c), word_grade(alg, c[0]))

    def _key(self, v, c):
        return (len(v[0]) + len(c[0]), _v_key(v), coord_key(c))

    def _all_coords(self):
        if self._coords_cache is None:
            alg = self.alg
            out = []
            for w in words_up_to(alg.nletters, self.D):
                for B in range(alg.nblocks):
                    for i in range(alg.r):
                        for j in range(alg.r):
                            out.append((w, B, i, j))
            self._coords_cache = out
        return self._coords_cache

    def _build(self, comp):
        alg = self.alg
        (vl, vr), g1, B2l, B2r, g2 = comp
        h = alg.h
        ech = Echelon(None)
        labels = []

        def push(label, vec):
            labels.append(label)
            if len(labels) > self.max_vectors:
                raise SpanTooLarge(len(labels))
            ech.add(len(labels) - 1, vec)

        mu = B2l // h if self.side == "right" else B2r // h
        # leg-1 ideal vectors: J (x) c2
        if self.side == "right":
            bl_set = [vl * h + mu]
            br_set = [vr * h + x for x in range(h)]
        else:
            bl_set = [vl * h + x for x in range(h)]
            br_set = [vr * h + mu]
        partners = [c for c in self._all_coords()
                    if c[1] == B2l and alg.right_block(c) == B2r and word_grade(alg, c[0]) == g2]
        for bl in bl_set:
            for lab, d1, jvec in self.single.span_vectors(bl, br_set, g1, self.D):
                for c2 in partners:
                    if d1 + len(c2[0]) > self.D:
                        continue
                    img = quotient_map(alg, TensorSquare.pure(FreeElement(alg, jvec),
                                                             FreeElement(alg, {c2: alg.field.one})), self.side)
                    if img:
                        push((1, lab, c2), {self._key(v, c): s for (v, c), s in img.items()})
        # leg-2 ideal vectors: v (x) J
        vs = []
        for w in words_up_to(alg.nletters, self.D):
            if word_grade(alg, w) != g1:
                continue
            for i in range(alg.r):
                lam = vl if self.side == "right" else vr
                v = (w, lam, i)
                if self._component(v, ((), B2l, 0, 0))[0] == (vl, vr):
                    vs.append(v)
        for lab, d2, jvec in self.single.span_vectors(B2l, (B2r,), g2, self.D):
            for v in vs:
                if len(v[0]) + d2 > self.D:
                    continue
                push((2, lab, v), {self._key(v, c): s for c, s in jvec.items()})
        self._labels[comp] = labels
        return ech

    def echelon(self, comp):
        with self._lock:
            if comp not in self._echelons:
                self._echelons[comp] = self._build(comp)
            return self._echelons[comp]

    def _partner(self, leg, p):
        alg = self.alg
        if leg == 1:
            return FreeElement(alg, {p: alg.field.one})
        return v_element(alg, p, self.side)

    def check(self, target: TensorSquare):
        alg = self.alg
        if target.degree > self.D:
            return TensorNotFound(self.D, "degree bound below target degree")
        img = quotient_map(alg, target, self.side)
        parts: dict = {}
        for (v, c), s in img.items():
            parts.setdefault(self._component(v, c), {})[self._key(v, c)] = s
        terms = []
        try:
            for comp, vec in sorted(parts.items()):
                combo = self.echelon(comp).express(vec)
                if combo is None:
                    return TensorNotFound(self.D)
                labels = self._labels[comp]
                for idx in sorted(combo):
                    leg, lab, p = labels[idx]
                    terms.append(TensorTerm(leg, lab, self.rels.ids[lab.relation],
                                            self._partner(leg, p), Fraction(combo[idx])))
        except SpanTooLarge as e:
            return TensorNotFound(self.D, f"span too large ({e.args[0]} vectors)")
        acc = TensorSquare.zero(alg)
        for t in terms:
            acc = acc + t.value(self.rels)
        i2 = i2_decomposition(alg, target - acc, self.side)
        if i2 is None:  # pragma: no cover - elimination is exact
            raise AssertionError("tensor certificate residue is not in the kernel")
        cert = TensorCertificate(target, self.side, terms, i2, self.D)
        if not replay_tensor(cert, self.rels).ok:  # pragma: no cover
            raise AssertionError("tensor certificate failed replay")
        return TensorMember(cert)


@dataclass
class TensorReplay:
    ok: bool
    difference: TensorSquare | None = None


def replay_tensor(cert: TensorCertificate, rels: RelationSet) -> TensorReplay:
    alg = cert.target.alg
    acc = TensorSquare.zero(alg)
    for t in cert.terms:
        acc = acc + t.value(rels)
    for t in cert.i2_terms:
        acc = acc + t.value(alg, cert.side)
    diff = acc - cert.target
    return TensorReplay(diff.is_zero(), None if diff.is_zero() else diff)
