"""Bounded-degree ideal membership in A_sigma with replayable certificates.

A target lies in the bounded part of the ideal when it is a k-linear
combination of span vectors ``u * xi * g * zeta * v`` with g a residual
relation, u and v words, xi and zeta basis coefficients of L (x) L^op and
``len(u) + deg(g) + len(v) <= D``.  Every such vector is bi-homogeneous for
the block grading (left block, right block), so the span splits into
independent pieces; each piece is reduced once to echelon form and cached.

Echelon rows keep their elimination history so that a successful reduction
of a target can be expanded into an explicit combination of span vectors,
which is then replayed with the general multiplication before anything is
reported as a member.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction

from .freealg import FreeAlgebra, FreeElement, RelationSet
from .ringcore import InputError

DEFAULT_PRIME = 2_147_483_647


class Echelon:
    """Incremental top-reduction echelon form with lazy combination tracking.

    Vectors are dicts keyed by sortable keys; the leading key of a row is its
    maximum.  With ``modulus`` set, scalars are ints reduced modulo a prime.
    """

    def __init__(self, modulus: int | None = None):
        self.p = modulus
        self.rows: list[dict] = []
        self.lead: dict = {}
        # row k = scale_k * (vector source_k - sum f * row_m)
        self.history: list[tuple] = []

    def _conv(self, v):
        if self.p is None:
            return v
        v = Fraction(v)
        return v.numerator % self.p * pow(v.denominator, -1, self.p) % self.p

    def _inv(self, v):
        return 1 / v if self.p is None else pow(v, -1, self.p)

    def _reduce(self, vec: dict):
        p = self.p
        used = []
        while vec:
            top = max(vec)
            k = self.lead.get(top)
            if k is None:
                break
            f = vec[top]
            used.append((k, f))
            for c, x in self.rows[k].items():
                nv = vec.get(c, 0) - f * x
                if p is not None:
                    nv %= p
                if nv == 0:
                    vec.pop(c, None)
                else:
                    vec[c] = nv
        return vec, used

    def add(self, source: int, vector: dict) -> bool:
        """Insert a vector; returns False when it is already in the span."""
        vec = {c: self._conv(v) for c, v in vector.items()}
        vec = {c: v for c, v in vec.items() if v != 0}
        vec, used = self._reduce(vec)
        if not vec:
            return False
        top = max(vec)
        s = self._inv(vec[top])
        if self.p is None:
            vec = {c: v * s for c, v in vec.items()}
        else:
            vec = {c: v * s % self.p for c, v in vec.items()}
        self.lead[top] = len(self.rows)
        self.rows.append(vec)
        self.history.append((source, s, tuple(used)))
        return True

    def express(self, target: dict):
        """Combination {source: scalar} summing to ``target``, or None."""
        vec = {c: self._conv(v) for c, v in target.items()}
        vec = {c: v for c, v in vec.items() if v != 0}
        vec, used = self._reduce(vec)
        if vec:
            return None
        weight: dict = {}
        for k, f in used:
            weight[k] = weight.get(k, 0) + f
        out: dict = {}
        for k in range(len(self.rows) - 1, -1, -1):
            w = weight.get(k)
            if not w:
                continue
            source, s, hist = self.history[k]
            ws = w * s
            if self.p is not None:
                ws %= self.p
            out[source] = out.get(source, 0) + ws
            for m, f in hist:
                weight[m] = weight.get(m, 0) - ws * f
        if self.p is not None:
            out = {k: v % self.p for k, v in out.items()}
        return {k: v for k, v in out.items() if v != 0}


def coord_key(c) -> tuple:
    w, B, i, j = c
    return (len(w), w, B, i, j)


@dataclass(frozen=True)
class SpanLabel:
    """u * xi * g * zeta * v with xi, zeta basis coefficients (block, i, j)."""

    relation: int
    left: tuple
    right: tuple
    xi: tuple
    zeta: tuple


@dataclass
class CertificateTerm:
    relation: str
    left_word: tuple
    right_word: tuple
    left_coeff: tuple
    right_coeff: tuple
    scalar: Fraction

    def to_json(self, alg: FreeAlgebra) -> dict:
        def coeff(c):
            B, i, j = c
            lam, mu = divmod(B, alg.h)
            return {"block": [lam, mu], "i": i, "j": j}

        return {
            "relation": self.relation,
            "left_word": alg.word_names(self.left_word),
            "right_word": alg.word_names(self.right_word),
            "left_coeff": coeff(self.left_coeff),
            "right_coeff": coeff(self.right_coeff),
            "scalar": str(self.scalar),
        }

    @classmethod
    def from_json(cls, alg: FreeAlgebra, d: dict) -> "CertificateTerm":
        def coeff(c):
            lam, mu = c["block"]
            return (lam * alg.h + mu, c["i"], c["j"])

        return cls(d["relation"], tuple(alg.parse_letter(x) for x in d["left_word"]),
                   tuple(alg.parse_letter(x) for x in d["right_word"]),
                   coeff(d["left_coeff"]), coeff(d["right_coeff"]), Fraction(d["scalar"]))


@dataclass
class MembershipCertificate:
    target: FreeElement
    terms: list
    bound: int
    solver: str = "rational"

    def to_json(self) -> dict:
        alg = self.target.alg
        return {"target": self.target.to_json(), "bound": self.bound, "solver": self.solver,
                "terms": [t.to_json(alg) for t in self.terms]}

    @classmethod
    def from_json(cls, alg: FreeAlgebra, d: dict) -> "MembershipCertificate":
        return cls(FreeElement.from_json(alg, d["target"]),
                   [CertificateTerm.from_json(alg, t) for t in d["terms"]],
                   d["bound"], d.get("solver", "rational"))


@dataclass
class ReplayResult:
    ok: bool
    difference: FreeElement | None = None


def span_element(alg: FreeAlgebra, g: FreeElement, u, xi, zeta, v) -> FreeElement:
    """u * xi * g * zeta * v computed with the general multiplication."""
    return (alg.word(u) * alg.basis_coeff(*xi) * g * alg.basis_coeff(*zeta)) * alg.word(v)


def replay(cert: MembershipCertificate, rels: RelationSet) -> ReplayResult:
    alg = rels.alg
    acc = alg.zero
    for t in cert.terms:
        g = rels.get(t.relation)
        acc = acc + span_element(alg, g, t.left_word, t.left_coeff, t.right_coeff,
                                 t.right_word).scale(alg.field(t.scalar))
    diff = acc - cert.target
    return ReplayResult(diff.is_zero(), None if diff.is_zero() else diff)


@dataclass
class Member:
    certificate: MembershipCertificate
    member: bool = True


@dataclass
class NotFoundAtBound:
    bound: int
    reason: str = "not in the bounded span"
    member: bool = False


def word_grade(alg: FreeAlgebra, word) -> int:
    """Number of L letters minus number of Li letters; every relation is homogeneous."""
    half = alg.nx * alg.nx
    return sum(1 if x < half else -1 for x in word)


def words_up_to(nletters: int, k: int):
    out = [()]
    layer = [()]
    for _ in range(k):
        layer = [w + (x,) for w in layer for x in range(nletters)]
        out.extend(layer)
    return out


class MembershipSolver:
    """Cached bounded-degree membership for one relation set and bound D."""

    def __init__(self, rels: RelationSet, bound: int, modulus: int | None = None,
                 max_vectors: int = 2_000_000):
        self.rels = rels
        self.alg = rels.alg
        self.D = bound
        self.modulus = modulus
        self.max_vectors = max_vectors
        self._pieces = None
        self._echelons: dict = {}
        self._labels: dict = {}
        self._word_cache = None
        self._lock = threading.RLock()

    # span generation -----------------------------------------------------
    def _relation_pieces(self):
        """xi * g * zeta for every relation and basis coefficients, grouped by blocks."""
        if self._pieces is not None:
            return self._pieces
        alg = self.alg
        coeffs = [(B, i, j) for B in range(alg.nblocks) for i in range(alg.r) for j in range(alg.r)]
        pieces = []
        for gi, (rid, g) in enumerate(self.rels):
            if g.is_zero():
                continue
            for xi in coeffs:
                left = alg.basis_coeff(*xi) * g
                if left.is_zero():
                    continue
                for zeta in coeffs:
                    el = left * alg.basis_coeff(*zeta)
                    if el.is_zero():
                        continue
                    pieces.append((gi, xi, zeta, g.degree, xi[0], zeta[0], el))
        self._pieces = pieces
        return pieces

    def _words(self):
        if self._word_cache is None:
            pieces = self._relation_pieces()
            min_deg = min((pc[3] for pc in pieces), default=0)
            self._word_cache = words_up_to(self.alg.nletters, max(0, self.D - min_deg))
        return self._word_cache

    def span_vectors(self, bl: int, brs, grade: int, max_deg: int):
        """Span vectors with left block ``bl``, right block in ``brs``, the given
        grade and degree at most ``max_deg``, in canonical order.

        Yields ``(label, degree, {coord: scalar})``.
        """
        alg = self.alg
        words = self._words()
        bmap = alg.block_map
        binv = alg.block_map_inv
        brs = set(brs)
        for gi, xi, zeta, dg, Bl, Br, el in self._relation_pieces():
            room = max_deg - dg
            if room < 0:
                continue
            need = grade - word_grade(alg, next(iter(el.terms))[0])
            lefts = [u for u in words if len(u) <= room and bmap(u)[Bl] == bl]
            if not lefts:
                continue
            rights = [v for v in words if len(v) <= room and binv(v)[Br] in brs]
            for u in lefts:
                tu = bmap(u)
                gu = word_grade(alg, u)
                for v in rights:
                    if len(u) + len(v) > room or gu + word_grade(alg, v) != need:
                        continue
                    vec = {}
                    for (w, B, i, j), s in el.terms.items():
                        vec[(u + w + v, tu[B], i, j)] = s
                    yield SpanLabel(gi, u, v, xi, zeta), dg + len(u) + len(v), vec

    def _build(self, key) -> Echelon:
        bl, br, grade = key
        ech = Echelon(self.modulus)
        labels = []
        for lab, _, vec in self.span_vectors(bl, (br,), grade, self.D):
            labels.append(lab)
            if len(labels) > self.max_vectors:
                raise SpanTooLarge(len(labels))
            ech.add(len(labels) - 1, {coord_key(c): s for c, s in vec.items()})
        self._labels[key] = labels
        return ech

    def echelon(self, key) -> Echelon:
        with self._lock:
            if key not in self._echelons:
                self._echelons[key] = self._build(key)
            return self._echelons[key]

    # queries -------------------------------------------------------------
    def check(self, target: FreeElement):
        alg = self.alg
        if target.degree > self.D:
            raise InputError(f"degree bound {self.D} is below the target degree {target.degree}")
        parts: dict = {}
        for c, v in target.terms.items():
            key = (c[1], alg.right_block(c), word_grade(alg, c[0]))
            parts.setdefault(key, {})[coord_key(c)] = v
        terms = []
        try:
            for key, vec in sorted(parts.items()):
                ech = self.echelon(key)
                combo = ech.express(vec)
                if combo is None:
                    return NotFoundAtBound(self.D)
                labels = self._labels[key]
                if self.modulus is not None:
                    combo = self._rational_resolve(vec, combo, labels)
                    if combo is None:
                        return NotFoundAtBound(self.D, "modular solution did not lift")
                for idx in sorted(combo):
                    lab = labels[idx]
                    terms.append(CertificateTerm(self.rels.ids[lab.relation], lab.left, lab.right,
                                                 lab.xi, lab.zeta, Fraction(combo[idx])))
        except SpanTooLarge as e:
            return NotFoundAtBound(self.D, f"span too large ({e.args[0]} vectors)")
        cert = MembershipCertificate(target, terms, self.D,
                                     "rational" if self.modulus is None else f"gf:{self.modulus}+rational")
        res = replay(cert, self.rels)
        if not res.ok:  # pragma: no cover - elimination is exact
            raise AssertionError("membership certificate failed replay")
        return Member(cert)

    def _rational_resolve(self, vec, combo, labels):
        """Re-solve over Q using only the span vectors the modular solution touched."""
        alg = self.alg
        ech = Echelon(None)
        for idx in sorted(combo):
            lab = labels[idx]
            el = span_element(alg, self.rels.elements[lab.relation], lab.left, lab.xi, lab.zeta, lab.right)
            ech.add(idx, {coord_key(c): s for c, s in el.terms.items()})
        return ech.express(vec)


class SpanTooLarge(RuntimeError):
    pass


def ideal_membership(target: FreeElement, rels: RelationSet, D: int, modulus: int | None = None):
    return MembershipSolver(rels, D, modulus).check(target)


@dataclass
class ModEq:
    equal: bool
    certificate: MembershipCertificate | None = None
    reason: str = ""

    @property
    def status(self) -> str:
        return "equal" if self.equal else "not-found-at-bound"


def mod_eq(u: FreeElement, v: FreeElement, solver: MembershipSolver) -> ModEq:
    """Sound equality in A_sigma: 'equal' comes with a replayed certificate."""
    diff = u - v
    if diff.is_zero():
        return ModEq(True, MembershipCertificate(diff, [], solver.D))
    if diff.degree > solver.D:
        return ModEq(False, None, "degree bound below target degree")
    res = solver.check(diff)
    if res.member:
        return ModEq(True, res.certificate)
    return ModEq(False, None, res.reason)
