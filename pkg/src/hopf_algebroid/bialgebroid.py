"""Structure maps of A_sigma and the verification suites built on them."""

from __future__ import annotations

import random
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product

from .freealg import (
    L_KIND,
    LI_KIND,
    Coeff,
    Lgen,
    FreeAlgebra,
    FreeElement,
    RelationSet,
    absorbed_generators,
    relation_set,
)
from .membership import MembershipSolver, mod_eq
from .quasigroup import DegreeMap
from .rigidity import (
    RigidityCertificate,
    RigidityFailure,
    antipode_elements,
    build_q_family,
    q_matrices,
    solve_condition,
    solve_istar,
)
from .ringcore import AutomorphismT, FnElement, LOperator, radical_dim, rho_left, rho_right
from .sigma import SigmaTensor, check_left_rhoT, check_remark_equivalence, check_right_rhoT, check_tt
from .tensor import Coproduct, TensorMembershipSolver, TensorSquare, in_i2, tensor_unit

PASS, FAIL, INCONCLUSIVE = "pass", "fail", "inconclusive-at-bound"


# structure maps -------------------------------------------------------------

def _raw_letter_id(alg: FreeAlgebra, x) -> int:
    kind = L_KIND if isinstance(x, Lgen) else LI_KIND
    return alg.letter_id(kind, x.a, x.b)


class CounitMaps:
    """epsilon-bar (homomorphism) and epsilon-bar' (anti-homomorphism) into End_k(L)."""

    def __init__(self, alg: FreeAlgebra):
        self.alg = alg
        self.L = alg.L
        self._rho = lru_cache(maxsize=None)(self._rho_pair)
        self._tword = lru_cache(maxsize=None)(self._t_word)
        self._tword_prime = lru_cache(maxsize=None)(self._t_word_prime)

    def _rho_pair(self, lam: int, i: int, mu: int, j: int) -> LOperator:
        """rho_l(e_{lam,i}) rho_r(e_{mu,j})."""
        L = self.L
        return rho_left(L.basis(L.index(lam, i))) @ rho_right(L.basis(L.index(mu, j)))

    def _letter_T(self, ell: int, prime: bool) -> AutomorphismT | None:
        kind, a, b = self.alg.letter_info(ell)
        if a != b:
            return None
        deg = self.alg.deg
        forward = (kind == L_KIND) != prime
        return deg.T(a) if forward else deg.T_inv(a)

    def _t_word(self, word: tuple):
        """T_{l1} o ... o T_{lk}, or None if some letter is off-diagonal."""
        acc = AutomorphismT.identity(self.L.npoints)
        for ell in word:
            t = self._letter_T(ell, False)
            if t is None:
                return None
            acc = acc.then(t)
        return acc

    def _t_word_prime(self, word: tuple):
        """epsilon-bar' of a word: T'_{lk} o ... o T'_{l1}."""
        acc = AutomorphismT.identity(self.L.npoints)
        for ell in word:
            t = self._letter_T(ell, True)
            if t is None:
                return None
            acc = t.then(acc)
        return acc

    def epsilon(self, el: FreeElement) -> LOperator:
        L = self.L
        out = LOperator.zero(L.dim, L.field)
        h = self.alg.h
        for (w, B, i, j), s in el.terms.items():
            T = self._tword(w)
            if T is None:
                continue
            lam, mu = divmod(B, h)
            out = out + (self._rho(lam, i, mu, j) @ T.operator(L)).scale(s)
        return out

    def epsilon_prime(self, el: FreeElement) -> LOperator:
        L = self.L
        out = LOperator.zero(L.dim, L.field)
        h = self.alg.h
        for (w, B, i, j), s in el.terms.items():
            T = self._tword_prime(w)
            if T is None:
                continue
            lam, mu = divmod(B, h)
            # l (x) l' -> rho_l(l') rho_r(l)
            out = out + (T.operator(L) @ self._rho(mu, j, lam, i)).scale(s)
        return out

    def _raw_letter(self, x, prime: bool) -> LOperator:
        L = self.L
        h = self.alg.h
        if isinstance(x, Coeff):
            op = LOperator.zero(L.dim, L.field)
            for (B, i, j), v in x.data:
                lam, mu = divmod(B, h)
                pair = self._rho(mu, j, lam, i) if prime else self._rho(lam, i, mu, j)
                op = op + pair.scale(v)
            return op
        T = self._letter_T(_raw_letter_id(self.alg, x), prime)
        if T is None:
            return LOperator.zero(L.dim, L.field)
        return T.operator(L)

    def epsilon_raw(self, raw, prime: bool = False) -> LOperator:
        """Evaluate on raw letter lists before straightening."""
        L = self.L
        total = LOperator.zero(L.dim, L.field)
        for scalar, letters in raw:
            acc = LOperator.identity(L.dim, L.field)
            for x in letters:
                op = self._raw_letter(x, prime)
                acc = op @ acc if prime else acc @ op
            total = total + acc.scale(L.field(scalar))
        return total

    def pi(self, el: FreeElement) -> FnElement:
        """pi_L(a) = epsilon(a)(1_L)."""
        return self.epsilon(el).apply(self.L.one)

    def pi_op(self, el: FreeElement) -> FnElement:
        """pi_{L^op}(a) = epsilon'(a)(1_L)."""
        return self.epsilon_prime(el).apply(self.L.one)


class Antipode:
    """S-bar: coefficient l (x) l' -> l' (x) l, L_ab -> Li_ab, Li_ab -> x_ab, reversing words."""

    def __init__(self, alg: FreeAlgebra, x: dict):
        self.alg = alg
        self.x = x
        self._word = lru_cache(maxsize=None)(self._s_word)

    def letter(self, ell: int) -> FreeElement:
        kind, a, b = self.alg.letter_info(ell)
        if kind == L_KIND:
            return self.alg.letter("Li", a, b)
        return self.x[(a, b)]

    def _s_word(self, word: tuple) -> FreeElement:
        if not word:
            return self.alg.unit
        return self._word(word[1:]) * self.letter(word[0])

    def __call__(self, el: FreeElement) -> FreeElement:
        alg = self.alg
        parts = []
        by_word: dict = {}
        for (w, B, i, j), s in el.terms.items():
            lam, mu = divmod(B, alg.h)
            key = (mu * alg.h + lam, j, i)
            by_word.setdefault(w, {})[key] = s
        for w, coeffs in sorted(by_word.items(), key=lambda kv: (len(kv[0]), kv[0])):
            c = alg.element({((), B, i, j): s for (B, i, j), s in coeffs.items()})
            parts.append(self._word(w) * c)
        return alg.sum(parts)

    def raw(self, raw) -> FreeElement:
        alg = self.alg
        total = alg.zero
        for scalar, letters in raw:
            acc = alg.unit
            for x in letters:
                if isinstance(x, Coeff):
                    img = alg.element({((), (B % alg.h) * alg.h + B // alg.h, j, i): v
                                       for (B, i, j), v in x.data})
                else:
                    img = self.letter(_raw_letter_id(alg, x))
                acc = img * acc
            total = total + acc.scale(alg.field(scalar))
        return total


# reports ----------------------------------------------------------------------

@dataclass
class CheckEntry:
    id: str
    anchor: str
    status: str
    witness: object = None
    certificate: object = None
    detail: str = ""

    def to_json(self, certificate_ref: str | None = None) -> dict:
        out = {"id": self.id, "anchor": self.anchor, "status": self.status}
        if self.detail:
            out["detail"] = self.detail
        if self.witness is not None:
            out["witness"] = self.witness
        if certificate_ref is not None:
            out["certificate"] = certificate_ref
        return out


@dataclass
class CheckReport:
    entries: list = field(default_factory=list)

    def extend(self, entries):
        self.entries.extend(entries)

    @property
    def status(self) -> str:
        statuses = {e.status for e in self.entries}
        if FAIL in statuses:
            return FAIL
        if INCONCLUSIVE in statuses:
            return INCONCLUSIVE
        return PASS

    def by_id(self, cid: str) -> CheckEntry:
        for e in self.entries:
            if e.id == cid:
                return e
        raise KeyError(cid)

    def select(self, prefix: str) -> list:
        return [e for e in self.entries if e.id.startswith(prefix)]


def _entry_from_modeq(cid, anchor, res) -> CheckEntry:
    if res.equal:
        return CheckEntry(cid, anchor, PASS, certificate=res.certificate)
    return CheckEntry(cid, anchor, INCONCLUSIVE, witness={"reason": res.reason or "not found at bound"})


# context ----------------------------------------------------------------------

class Verifier:
    """Everything the suites share for one instance: sigma, A_sigma, solvers, RNG seed."""

    def __init__(self, sigma: SigmaTensor, bound: int = 4, seed: int = 0, threads: int = 1,
                 modulus: int | None = None, max_vectors: int = 400_000):
        self.sigma = sigma
        self.alg = FreeAlgebra(sigma.L, sigma.deg)
        self.rels: RelationSet = relation_set(self.alg, sigma)
        self.D = bound
        self.seed = seed
        self.threads = threads
        self.solver = MembershipSolver(self.rels, bound, modulus, max_vectors=max_vectors)
        self.tensor = {side: TensorMembershipSolver(self.solver, side, max_vectors=max_vectors)
                       for side in ("right", "left")}
        self.cop = Coproduct(self.alg)
        self.counit = CounitMaps(self.alg)
        self._rigidity = None
        self._rigidity_error = None

    def map(self, fn, items):
        items = list(items)
        if self.threads <= 1 or len(items) < 2:
            return [fn(x) for x in items]
        with ThreadPoolExecutor(max_workers=self.threads) as ex:
            return list(ex.map(fn, items))

    def rng(self, salt: str) -> random.Random:
        return random.Random(f"{self.seed}:{salt}")

    # shared elements -----------------------------------------------------
    @property
    def rigidity(self) -> RigidityCertificate | None:
        if self._rigidity is None and self._rigidity_error is None:
            try:
                istar = solve_istar(self.sigma.tilde)
                qs = build_q_family(istar, self.sigma)
                x, x_alt, y, y_alt = antipode_elements(qs, self.alg)
                self._rigidity = RigidityCertificate(istar, qs, x, x_alt, y, y_alt)
            except RigidityFailure as e:
                self._rigidity_error = e
        return self._rigidity

    def letters(self):
        alg = self.alg
        return [(alg.letter_name(ell), alg.word((ell,))) for ell in range(alg.nletters)]

    def basis_coeffs(self):
        alg = self.alg
        return [((B, i, j), alg.basis_coeff(B, i, j))
                for B in range(alg.nblocks) for i in range(alg.r) for j in range(alg.r)]

    def basis_coeffs_named(self):
        return [(f"coeff{k}", el) for k, el in self.basis_coeffs()]

    def random_word(self, rng: random.Random, max_len: int = 2) -> FreeElement:
        alg = self.alg
        B = rng.randrange(alg.nblocks)
        i, j = rng.randrange(alg.r), rng.randrange(alg.r)
        w = tuple(rng.randrange(alg.nletters) for _ in range(rng.randint(0, max_len)))
        return alg.basis_coeff(B, i, j, ()) * alg.word(w)

    def membership(self, cid: str, anchor: str, target: FreeElement) -> CheckEntry:
        return _entry_from_modeq(cid, anchor, mod_eq(target, self.alg.zero, self.solver))

    def equality(self, cid: str, anchor: str, u: FreeElement, v: FreeElement) -> CheckEntry:
        return _entry_from_modeq(cid, anchor, mod_eq(u, v, self.solver))


# suites -----------------------------------------------------------------------

def sigma_suite(sigma: SigmaTensor) -> list[CheckEntry]:
    out = []
    checks = [
        ("sigma/tt", "T_{deg a^-1} T_{deg c^-1} sigma^{bd}_{ac} = T_{deg b^-1} T_{deg d^-1} sigma^{bd}_{ac}",
         check_tt),
        ("sigma/left-rho-T", "rho_l(sigma^{bd}_{ac}) T_{deg d} T_{deg b} = rho_r(sigma^{bd}_{ac}) T_{deg c} T_{deg a}",
         check_left_rhoT),
        ("sigma/right-rho-T",
         "T_{deg a^-1} T_{deg c^-1} rho_l(sigma^{bd}_{ac}) = T_{deg b^-1} T_{deg d^-1} rho_r(sigma^{bd}_{ac})",
         check_right_rhoT),
    ]
    for cid, anchor, fn in checks:
        cex = fn(sigma)
        out.append(CheckEntry(cid, anchor, PASS if cex is None else FAIL,
                              witness=None if cex is None else cex.to_json()))
    eq = check_remark_equivalence(sigma)
    out.append(CheckEntry("sigma/equivalence", "right rho-T condition <=> (left rho-T condition and TT condition)",
                          PASS if eq.consistent else FAIL, witness=eq.to_json()))
    return out


def rigidity_suite(v: Verifier) -> list[CheckEntry]:
    s = v.sigma
    L = s.L
    out = []
    anchors = {
        1: "sum_{a,b} i^{wa}_{zb} tilde-sigma^{by}_{ax} = sum_{a,b} tilde-sigma^{wa}_{zb} i^{by}_{ax} = delta_wx delta_yz 1_L",
        2: "sum_b Q_ab Qinv_bc = delta_ac 1_L",
        3: "sum_b Q'inv_bc Q'_ab = delta_ac 1_L",
        4: "sum_b Q''inv_ab Q''_bc = delta_ac 1_L",
        5: "sum_b Q'''_ab Q'''inv_bc = delta_ac 1_L",
    }
    try:
        istar = solve_istar(s.tilde)
    except RigidityFailure as e:
        out.append(CheckEntry("rigidity/condition-1", anchors[1], FAIL,
                              witness={"message": str(e), "point": e.point, **e.diagnostics}))
        for c in range(2, 6):
            out.append(CheckEntry(f"rigidity/condition-{c}", anchors[c], FAIL,
                                  witness={"message": "needs i_* from condition 1"}))
        return out
    out.append(CheckEntry("rigidity/condition-1", anchors[1], PASS))
    mats = q_matrices(istar, s)
    for c in range(2, 6):
        try:
            solve_condition(mats, c, L, s.n)
            out.append(CheckEntry(f"rigidity/condition-{c}", anchors[c], PASS))
        except RigidityFailure as e:
            out.append(CheckEntry(f"rigidity/condition-{c}", anchors[c], FAIL,
                                  witness={"message": str(e), "point": e.point, **e.diagnostics}))
    cert = v.rigidity
    if cert is not None:
        out.append(CheckEntry("rigidity/two-sided", "opportunistic two-sided inverses of the Q matrices", PASS,
                              witness=dict(cert.qs.two_sided), detail="informational"))
    return out


def epsilon_kills_suite(v: Verifier) -> list[CheckEntry]:
    out = []
    absorbed = list(absorbed_generators(v.alg))
    for prime, tag, anchor in ((False, "left", "epsilon-bar vanishes on every ideal generator"),
                               (True, "right", "epsilon-bar' vanishes on every ideal generator")):
        ev = v.counit.epsilon_prime if prime else v.counit.epsilon
        bad = [rid for rid, g in v.rels if not ev(g).is_zero()]
        out.append(CheckEntry(f"epsilon-kills/{tag}/relations", anchor, FAIL if bad else PASS,
                              witness={"generator": bad[0]} if bad else None,
                              detail=f"{len(v.rels)} residual generators"))
        bad = [rid for rid, raw in absorbed if not v.counit.epsilon_raw(raw, prime).is_zero()]
        out.append(CheckEntry(f"epsilon-kills/{tag}/absorbed", anchor, FAIL if bad else PASS,
                              witness={"generator": bad[0]} if bad else None,
                              detail=f"{len(absorbed)} coefficient-family instances before straightening"))
    return out


def _letter_chain(v: Verifier, ell: int, e: FnElement, side: str) -> bool:
    """Delta(letter) times (t(l) (x) 1 - 1 (x) s(l)) as sum of generators times Delta-terms."""
    alg = v.alg
    kind, a, b = alg.letter_info(ell)
    deg = v.sigma.deg
    gen = TensorSquare.pure(alg.t_map(e), alg.unit) - TensorSquare.pure(alg.unit, alg.s_map(e))
    lhs = v.cop(alg.word((ell,)))
    lhs = lhs * gen if side == "right" else gen * lhs
    rhs = TensorSquare.zero(alg)
    for c in range(alg.nx):
        if kind == L_KIND:
            le = deg.T(c).apply(e) if side == "right" else deg.T_inv(c).apply(e)
            legs = (alg.letter("L", a, c), alg.letter("L", c, b))
        else:
            le = deg.T_inv(c).apply(e) if side == "right" else deg.T(c).apply(e)
            legs = (alg.letter("Li", c, b), alg.letter("Li", a, c))
        g = TensorSquare.pure(alg.t_map(le), alg.unit) - TensorSquare.pure(alg.unit, alg.s_map(le))
        d = TensorSquare.pure(*legs)
        rhs = rhs + (g * d if side == "right" else d * g)
    return lhs == rhs


def coproduct_ideal_suite(v: Verifier, sides=("right",)) -> list[CheckEntry]:
    alg = v.alg
    out = []
    basis = alg.L.basis_elements()
    chain_anchor = ("Delta(v)(t(l) (x) 1 - 1 (x) s(l)) = sum_c (t(l_c) (x) 1 - 1 (x) s(l_c)) Delta_c(v), "
                    "hence lies in I_2")
    for kind, tag in ((L_KIND, "L"), (LI_KIND, "Li")):
        bad = [(alg.letter_name(ell), k) for ell in range(alg.nletters) if alg.letter_info(ell)[0] == kind
               for k, e in enumerate(basis) if not _letter_chain(v, ell, e, "right")]
        out.append(CheckEntry(f"coproduct-ideal/chain-{tag}", chain_anchor, FAIL if bad else PASS,
                              witness={"generator": bad[0][0], "basis": bad[0][1]} if bad else None,
                              detail="exact identity in F (x) F for every letter and basis element l of L"))
    bad = []
    for (B, i, j), xi in v.basis_coeffs():
        for k, e in enumerate(basis):
            gen = TensorSquare.pure(alg.t_map(e), alg.unit) - TensorSquare.pure(alg.unit, alg.s_map(e))
            if v.cop(xi) * gen != gen * v.cop(xi):
                bad.append((f"coeff{(B, i, j)}", k))
    out.append(CheckEntry("coproduct-ideal/chain-coefficient",
                          "Delta(s(f)t(g)) commutes with t(l) (x) 1 - 1 (x) s(l)", FAIL if bad else PASS,
                          witness={"generator": bad[0][0], "basis": bad[0][1]} if bad else None))
    absorbed = [rid for rid, raw in absorbed_generators(alg) if not v.cop.raw(raw).is_zero()]
    out.append(CheckEntry("coproduct-ideal/absorbed", "Delta vanishes on the coefficient-family generators",
                          FAIL if absorbed else PASS, witness={"generator": absorbed[0]} if absorbed else None))

    anchor = "Delta(g) lies in I_sigma (x) A + A (x) I_sigma + I_2 for every ideal generator g"

    def one(item):
        side, (rid, g) = item
        res = v.tensor[side].check(v.cop(g))
        cid = f"coproduct-ideal/{side}/{rid}"
        a = anchor if side == "right" else anchor.replace("I_2", "I_2'")
        if res.member:
            return CheckEntry(cid, a, PASS, certificate=res.certificate)
        return CheckEntry(cid, a, INCONCLUSIVE, witness={"reason": res.reason})

    out.extend(v.map(one, [(side, rg) for side in sides for rg in v.rels]))
    return out


def _missing_rigidity(prefix: str, v: Verifier) -> list[CheckEntry]:
    err = v._rigidity_error
    return [CheckEntry(f"{prefix}/rigidity", "rigidity certificate required", FAIL,
                       witness={"message": str(err)})]


def antipode_ideal_suite(v: Verifier) -> list[CheckEntry]:
    cert = v.rigidity
    if cert is None:
        return _missing_rigidity("antipode-ideal", v)
    S = Antipode(v.alg, cert.x)
    anchor = "S-bar maps every ideal generator into I_sigma"

    def one(item):
        rid, g = item
        return v.membership(f"antipode-ideal/{rid}", anchor, S(g))

    out = v.map(one, list(v.rels))
    nonzero = []
    certs = []
    for rid, raw in absorbed_generators(v.alg):
        img = S.raw(raw)
        if img.is_zero():
            continue
        res = mod_eq(img, v.alg.zero, v.solver)
        if not res.equal:
            nonzero.append(rid)
        else:
            certs.append(res.certificate)
    status = PASS if not nonzero else INCONCLUSIVE
    out.append(CheckEntry("antipode-ideal/absorbed", anchor, status,
                          witness={"generator": nonzero[0]} if nonzero else None,
                          certificate=certs or None,
                          detail="coefficient-family generators before straightening"))
    return out


def rigid_identities_suite(v: Verifier) -> list[CheckEntry]:
    cert = v.rigidity
    if cert is None:
        return _missing_rigidity("rigid-identities", v)
    alg = v.alg
    n = alg.nx
    L = lambda a, b: alg.letter("L", a, b)  # noqa: E731
    Li = lambda a, b: alg.letter("Li", a, b)  # noqa: E731
    x, y = cert.x, cert.y
    jobs = []
    for a, b in product(range(n), repeat=2):
        rhs = alg.unit if a == b else alg.zero
        forms = {
            "Li-x": (alg.sum(Li(c, b) * x[(a, c)] for c in range(n)), "sum_c Li_cb x_ac = delta_ab 1"),
            "x-Li": (alg.sum(x[(c, b)] * Li(a, c) for c in range(n)), "sum_c x_cb Li_ac = delta_ab 1"),
            "L-y": (alg.sum(L(c, b) * y[(a, c)] for c in range(n)), "sum_c L_cb y_ac = delta_ab 1"),
            "y-L": (alg.sum(y[(c, b)] * L(a, c) for c in range(n)), "sum_c y_cb L_ac = delta_ab 1"),
        }
        for name, (lhs, anchor) in forms.items():
            jobs.append((f"rigid-identities/{name}[{a},{b}]", anchor, lhs, rhs))
        jobs.append((f"rigid-identities/x-variants[{a},{b}]", "both formulas for x_ab agree in A_sigma",
                     x[(a, b)], cert.x_alt[(a, b)]))
        jobs.append((f"rigid-identities/y-variants[{a},{b}]", "both formulas for y_ab agree in A_sigma",
                     y[(a, b)], cert.y_alt[(a, b)]))
    return v.map(lambda j: v.equality(*j), jobs)


def _coassoc_word(v: Verifier, word: tuple) -> bool:
    """(Delta (x) id) Delta = (id (x) Delta) Delta on a bare word, compared as word triples.

    Coefficients ride along on the outer legs only, so bare words suffice for letters.
    """
    pairs = v.cop.word_pairs
    left = Counter((u1, u2, w2) for w1, w2 in pairs(word) for u1, u2 in pairs(w1))
    right = Counter((w1, u1, u2) for w1, w2 in pairs(word) for u1, u2 in pairs(w2))
    return left == right


def _coassoc(v: Verifier, el: FreeElement) -> bool:
    """Coordinate-level comparison; fine for coefficients and short elements."""
    d = v.cop(el)
    left: dict = {}
    right: dict = {}
    for (c1, c2), s in d.terms.items():
        for (a1, a2), t in v.cop.coord(c1).items():
            key = (a1, a2, c2)
            left[key] = left.get(key, 0) + s * t
        for (b1, b2), t in v.cop.coord(c2).items():
            key = (c1, b1, b2)
            right[key] = right.get(key, 0) + s * t
    left = {k: x for k, x in left.items() if x != 0}
    right = {k: x for k, x in right.items() if x != 0}
    return left == right


def _sweedler(v: Verifier, el: FreeElement):
    return v.cop(el).legs()


def bialgebroid_axioms_suite(v: Verifier, random_pairs: int = 500) -> list[CheckEntry]:
    alg = v.alg
    L = alg.L
    cm = v.counit
    out = []
    basis = L.basis_elements()
    gens = v.letters() + v.basis_coeffs_named()

    def exact(cid, anchor, bad, detail=""):
        out.append(CheckEntry(cid, anchor, FAIL if bad else PASS,
                              witness={"instance": bad[0]} if bad else None, detail=detail))

    exact("bialgebroid-axioms/source-target-commute", "s(l) t(l') = t(l') s(l)",
          [(p, q) for p, q in product(range(len(basis)), repeat=2)
           if alg.s_map(basis[p]) * alg.t_map(basis[q]) != alg.t_map(basis[q]) * alg.s_map(basis[p])])
    exact("bialgebroid-axioms/source-target-multiplicative", "s(ll') = s(l)s(l'), t(ll') = t(l')t(l)",
          [(p, q) for p, q in product(range(len(basis)), repeat=2)
           if alg.s_map(basis[p] * basis[q]) != alg.s_map(basis[p]) * alg.s_map(basis[q])
           or alg.t_map(basis[p] * basis[q]) != alg.t_map(basis[q]) * alg.t_map(basis[p])])
    bad = [alg.letter_name(ell) for ell in range(alg.nletters) if not _coassoc_word(v, (ell,))]
    bad += [name for name, el in v.basis_coeffs_named() if not _coassoc(v, el)]
    exact("bialgebroid-axioms/coassociativity", "(Delta (x) id) Delta = (id (x) Delta) Delta on generators", bad)
    exact("bialgebroid-axioms/coproduct-unit", "Delta(1) = 1 (x) 1",
          [] if v.cop(alg.unit) == tensor_unit(alg) else ["unit"])
    rng = v.rng("coproduct-multiplicative")
    pairs = [(v.random_word(rng), v.random_word(rng)) for _ in range(50)]
    exact("bialgebroid-axioms/coproduct-multiplicative", "Delta(ab) = Delta(a) Delta(b)",
          [k for k, (a, b) in enumerate(pairs) if v.cop(a * b) != v.cop(a) * v.cop(b)],
          detail="50 random word pairs of degree <= 2, exact in F (x) F")

    # leg exchange on generators: exact kernel membership
    bad_l, bad_r = [], []
    for name, el in gens:
        d = v.cop(el)
        for k, e in enumerate(basis):
            g = TensorSquare.pure(alg.t_map(e), alg.unit) - TensorSquare.pure(alg.unit, alg.s_map(e))
            if not in_i2(alg, d * g, "right"):
                bad_l.append((name, k))
            if not in_i2(alg, g * d, "left"):
                bad_r.append((name, k))
    exact("bialgebroid-axioms/leg-exchange-left", "a_(1) t(l) (x) a_(2) = a_(1) (x) a_(2) s(l) modulo I_2", bad_l,
          detail="generators times every basis element of L")
    exact("bialgebroid-axioms/leg-exchange-right", "t(l) a^(1) (x) a^(2) = a^(1) (x) s(l) a^(2) modulo I_2'", bad_r,
          detail="generators times every basis element of L")

    # counit laws on generators (membership)
    def counit_jobs():
        for name, el in gens:
            legs = _sweedler(v, el)
            yield (f"bialgebroid-axioms/counit-left-1/{name}", "sum s(pi(a_(1))) a_(2) = a",
                   alg.sum(alg.s_map(cm.pi(x)) * y for x, y in legs), el)
            yield (f"bialgebroid-axioms/counit-left-2/{name}", "sum t(pi(a_(2))) a_(1) = a",
                   alg.sum(alg.t_map(cm.pi(y)) * x for x, y in legs), el)
            yield (f"bialgebroid-axioms/counit-right-1/{name}", "sum a^(2) s(pi'(a^(1))) = a",
                   alg.sum(y * alg.s_map(cm.pi_op(x)) for x, y in legs), el)
            yield (f"bialgebroid-axioms/counit-right-2/{name}", "sum a^(1) t(pi'(a^(2))) = a",
                   alg.sum(x * alg.t_map(cm.pi_op(y)) for x, y in legs), el)

    out.extend(v.map(lambda j: v.equality(*j), list(counit_jobs())))

    exact("bialgebroid-axioms/counit-unit", "pi(1) = 1_L and pi'(1) = 1_L",
          [] if cm.pi(alg.unit) == L.one and cm.pi_op(alg.unit) == L.one else ["unit"])
    exact("bialgebroid-axioms/counit-source-target", "pi(s(l)) = l = pi(t(l)) and pi'(s(l)) = l = pi'(t(l))",
          [k for k, e in enumerate(basis)
           if cm.pi(alg.s_map(e)) != e or cm.pi(alg.t_map(e)) != e
           or cm.pi_op(alg.s_map(e)) != e or cm.pi_op(alg.t_map(e)) != e])
    rng = v.rng("counit-pairs")
    pairs = [(v.random_word(rng), v.random_word(rng)) for _ in range(random_pairs)]
    bad = []
    bad_p = []
    for k, (a, b) in enumerate(pairs):
        ab = cm.pi(a * b)
        pb = cm.pi(b)
        if cm.pi(a * alg.s_map(pb)) != ab or cm.pi(a * alg.t_map(pb)) != ab:
            bad.append(k)
        ab = cm.pi_op(a * b)
        pa = cm.pi_op(a)
        # right version with s' = t and t' = s
        if cm.pi_op(alg.t_map(pa) * b) != ab or cm.pi_op(alg.s_map(pa) * b) != ab:
            bad_p.append(k)
    exact("bialgebroid-axioms/counit-left-module", "pi(a s(pi(b))) = pi(ab) = pi(a t(pi(b)))", bad,
          detail=f"{random_pairs} random word pairs of degree <= 2, seed {v.seed}")
    exact("bialgebroid-axioms/counit-right-module", "pi'(s'(pi'(a)) b) = pi'(ab) = pi'(t'(pi'(a)) b)", bad_p,
          detail=f"{random_pairs} random word pairs of degree <= 2, seed {v.seed}")
    return out


def hopf_suite(v: Verifier, random_words: int = 12) -> list[CheckEntry]:
    cert = v.rigidity
    if cert is None:
        return _missing_rigidity("hopf", v)
    alg = v.alg
    cm = v.counit
    S = Antipode(alg, cert.x)
    out = []
    basis = alg.L.basis_elements()
    bad = [k for k, e in enumerate(basis) if S(alg.t_map(e)) != alg.s_map(e)]
    out.append(CheckEntry("hopf/antipode-target", "S(t(l)) = s(l)", FAIL if bad else PASS,
                          witness={"basis": bad[0]} if bad else None))
    rng = v.rng("antipode-anti")
    pairs = [(v.random_word(rng), v.random_word(rng)) for _ in range(50)]
    bad = [k for k, (a, b) in enumerate(pairs) if S(a * b) != S(b) * S(a)]
    out.append(CheckEntry("hopf/antipode-antimultiplicative", "S-bar(ab) = S-bar(b) S-bar(a)",
                          FAIL if bad else PASS, witness={"pair": bad[0]} if bad else None,
                          detail="50 random word pairs of degree <= 2"))
    anchor = "S(a_(1)) a_(2) = t(pi(S(a)))"

    def job(item):
        name, a = item
        lhs = alg.sum(S(x) * y for x, y in _sweedler(v, a))
        rhs = alg.t_map(cm.pi(S(a)))
        return v.equality(f"hopf/antipode-equation/{name}", anchor, lhs, rhs)

    items = v.letters() + v.basis_coeffs_named()
    rng = v.rng("antipode-words")
    items += [(f"random-{k}", v.random_word(rng)) for k in range(random_words)]
    out.extend(v.map(job, items))
    return out


SUITES = ("sigma", "rigidity", "epsilon-kills", "coproduct-ideal", "antipode-ideal",
          "rigid-identities", "bialgebroid-axioms", "hopf")


def run_suites(v: Verifier, suites=SUITES) -> CheckReport:
    report = CheckReport()
    runners = {
        "sigma": lambda: sigma_suite(v.sigma),
        "rigidity": lambda: rigidity_suite(v),
        "epsilon-kills": lambda: epsilon_kills_suite(v),
        "coproduct-ideal": lambda: coproduct_ideal_suite(v, sides=("right", "left")),
        "antipode-ideal": lambda: antipode_ideal_suite(v),
        "rigid-identities": lambda: rigid_identities_suite(v),
        "bialgebroid-axioms": lambda: bialgebroid_axioms_suite(v),
        "hopf": lambda: hopf_suite(v),
    }
    for name in SUITES:
        if name in suites:
            report.extend(runners[name]())
    return report


WEAK_HOPF_NOTE = ("R has a nonzero Jacobson radical, so L = R^H is not separable with an idempotent "
                  "Frobenius system and A_sigma is not a weak Hopf algebra")


def base_annotations(R) -> dict:
    """radical dimension of R and the weak-Hopf annotation when it is positive."""
    rd = radical_dim(R)
    return {"radical_dim": rd, "annotations": [WEAK_HOPF_NOTE] if rd > 0 else []}
