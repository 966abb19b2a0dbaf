"""Sufficient conditions for rigidity: i_*(tilde sigma), the four Q matrices and x_ab, y_ab."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

from . import linalg
from .ringcore import FnElement
from .sigma import SigmaTensor, SigmaTilde


class RigidityFailure(Exception):
    """A sufficient condition could not be met.

    ``condition`` is 1..5; ``point`` is the point of H where the pointwise
    system is singular, if known.
    """

    def __init__(self, condition: int, message: str, point: int | None = None, diagnostics=None):
        super().__init__(f"condition ({condition}) fails: {message}")
        self.condition = condition
        self.point = point
        self.diagnostics = diagnostics or {}


def _prod_coords(R, known, left_known: bool):
    """Linear map y -> known*y (or y*known) as {unknown index: {out index: coeff}}."""
    out: dict = {}
    for i, q in enumerate(known):
        if q == 0:
            continue
        for k in range(R.dim):
            pairs = R.sparse[(i, k)] if left_known else R.sparse[(k, i)]
            for l, c in pairs:
                row = out.setdefault(k, {})
                row[l] = row.get(l, 0) + q * c
    return out


@dataclass
class IStarTensor:
    """i^{ab}_{cd} stored under key (a, b, c, d)."""

    entries: dict
    n: int

    def __getitem__(self, key) -> FnElement:
        return self.entries[tuple(key)]

    def to_json(self) -> dict:
        return {",".join(map(str, k)): f.to_json() for k, f in sorted(self.entries.items())
                if not f.is_zero()}


def contraction_defects(istar: IStarTensor, st: SigmaTilde) -> list[tuple]:
    """Index tuples (w, x, y, z) where either contraction differs from delta_wx delta_yz 1_L."""
    L = st.sigma.L
    n = istar.n
    bad = []
    for w, x, y, z in product(range(n), repeat=4):
        target = L.one if (w == x and y == z) else L.zero
        s1 = L.zero
        s2 = L.zero
        for a, b in product(range(n), repeat=2):
            s1 = s1 + istar[(w, a, z, b)] * st[(b, y, a, x)]
            s2 = s2 + st[(w, a, z, b)] * istar[(b, y, a, x)]
        if s1 != target or s2 != target:
            bad.append((w, x, y, z))
    return bad


def solve_istar(st: SigmaTilde) -> IStarTensor:
    """Solve both contraction identities for i_* as one exact linear system per point.

    sum_{a,b} i^{wa}_{zb} ts^{by}_{ax} = sum_{a,b} ts^{wa}_{zb} i^{by}_{ax} = delta_wx delta_yz 1_L
    """
    s = st.sigma
    L = s.L
    R = L.R
    n = s.n
    r = R.dim
    nvar = n ** 4 * r

    def var(p, q, u, v, k):
        return (((p * n + q) * n + u) * n + v) * r + k

    values = {key: [] for key in product(range(n), repeat=4)}
    for pt in range(L.npoints):
        rows = []
        rhs = []
        for w, x, y, z in product(range(n), repeat=4):
            delta = w == x and y == z
            first: dict = {}
            second: dict = {}
            for a, b in product(range(n), repeat=2):
                # unknown on the left: i^{wa}_{zb} * ts^{by}_{ax}
                known = st[(b, y, a, x)].at(pt)
                for k, outs in _prod_coords(R, known, left_known=False).items():
                    col = var(w, a, z, b, k)
                    for l, c in outs.items():
                        row = first.setdefault(l, {})
                        row[col] = row.get(col, 0) + c
                # unknown on the right: ts^{wa}_{zb} * i^{by}_{ax}
                known = st[(w, a, z, b)].at(pt)
                for k, outs in _prod_coords(R, known, left_known=True).items():
                    col = var(b, y, a, x, k)
                    for l, c in outs.items():
                        row = second.setdefault(l, {})
                        row[col] = row.get(col, 0) + c
            for l in range(r):
                target = R.unit[l] if delta else R.field.zero
                rows.append(first.get(l, {}))
                rhs.append(target)
                rows.append(second.get(l, {}))
                rhs.append(target)
        sol = linalg.solve(rows, rhs, nvar, zero=R.field.zero)
        if sol.values is None:
            raise RigidityFailure(1, "contraction system is inconsistent", point=pt,
                                  diagnostics={"rank": sol.rank, "unknowns": nvar})
        for key in values:
            p, q, u, v = key
            values[key].append(tuple(sol.values[var(p, q, u, v, k)] for k in range(r)))
    istar = IStarTensor({key: L.from_values(v) for key, v in values.items()}, n)
    bad = contraction_defects(istar, st)
    if bad:  # pragma: no cover - the solve imposes both identities
        raise RigidityFailure(1, f"post-check failed at {bad[0]}")
    return istar


@dataclass
class QFamily:
    """Q, Q', Q'', Q''' (keyed (a, b)) and the one-sided inverses the conditions demand."""

    Q: dict
    Qp: dict
    Qpp: dict
    Qppp: dict
    Qinv: dict
    Qpinv: dict
    Qppinv: dict
    Qpppinv: dict
    n: int
    two_sided: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        def table(t):
            return [[t[(a, b)].to_json() for b in range(self.n)] for a in range(self.n)]

        return {
            "Q": table(self.Q), "Qp": table(self.Qp), "Qpp": table(self.Qpp),
            "Qppp": table(self.Qppp), "Qinv": table(self.Qinv), "Qpinv": table(self.Qpinv),
            "Qppinv": table(self.Qppinv), "Qpppinv": table(self.Qpppinv),
            "two_sided": dict(self.two_sided),
        }


# product orders of the four inverse conditions:
#   "QY":  sum_b Q_ab Y_bc        (2) and (5)
#   "YQ'": sum_b Y_bc Q_ab        (3)
#   "YQ":  sum_b Y_ab Q_bc        (4)
def _identity_holds(M, Y, n, L, order) -> bool:
    for a, c in product(range(n), repeat=2):
        acc = L.zero
        for b in range(n):
            if order == "QY":
                acc = acc + M[(a, b)] * Y[(b, c)]
            elif order == "YQ'":
                acc = acc + Y[(b, c)] * M[(a, b)]
            else:
                acc = acc + Y[(a, b)] * M[(b, c)]
        if acc != (L.one if a == c else L.zero):
            return False
    return True


def _solve_inverse(M: dict, n: int, L, order: str, condition: int) -> dict:
    R = L.R
    r = R.dim

    def var(b, c, k):
        return (b * n + c) * r + k

    vals = {(b, c): [] for b, c in product(range(n), repeat=2)}
    for pt in range(L.npoints):
        rows, rhs = [], []
        for a, c in product(range(n), repeat=2):
            eq: dict = {}
            for b in range(n):
                if order == "QY":
                    known, left, ykey = M[(a, b)].at(pt), True, (b, c)
                elif order == "YQ'":
                    known, left, ykey = M[(a, b)].at(pt), False, (b, c)
                else:
                    known, left, ykey = M[(b, c)].at(pt), False, (a, b)
                for k, outs in _prod_coords(R, known, left_known=left).items():
                    col = var(*ykey, k)
                    for l, co in outs.items():
                        row = eq.setdefault(l, {})
                        row[col] = row.get(col, 0) + co
            for l in range(r):
                rows.append(eq.get(l, {}))
                rhs.append(R.unit[l] if a == c else R.field.zero)
        sol = linalg.solve(rows, rhs, n * n * r, zero=R.field.zero)
        if sol.values is None:
            raise RigidityFailure(condition, "matrix has no inverse of the required side",
                                  point=pt, diagnostics={"rank": sol.rank})
        for (b, c) in vals:
            vals[(b, c)].append(tuple(sol.values[var(b, c, k)] for k in range(r)))
    Y = {key: L.from_values(v) for key, v in vals.items()}
    if not _identity_holds(M, Y, n, L, order):  # pragma: no cover
        raise RigidityFailure(condition, "inverse failed re-verification")
    return Y


def q_matrices(istar: IStarTensor, s: SigmaTensor) -> tuple[dict, dict, dict, dict]:
    """Q_ab = sum_u i^{ub}_{ua}, Q'_ab = sum_u i^{bu}_{au},
    Q''_ab = sum_u T_{deg b} i^{bu}_{au}, Q'''_ab = sum_u T_{deg a}^{-1} i^{ua}_{ub}."""
    L = s.L
    n = s.n
    deg = s.deg
    Q, Qp, Qpp, Qppp = {}, {}, {}, {}
    for a, b in product(range(n), repeat=2):
        q = qp = qpp = qppp = L.zero
        for u in range(n):
            q = q + istar[(u, b, u, a)]
            qp = qp + istar[(b, u, a, u)]
            qpp = qpp + deg.T(b).apply(istar[(b, u, a, u)])
            qppp = qppp + deg.T_inv(a).apply(istar[(u, a, u, b)])
        Q[(a, b)], Qp[(a, b)], Qpp[(a, b)], Qppp[(a, b)] = q, qp, qpp, qppp
    return Q, Qp, Qpp, Qppp


# condition number -> (position in q_matrices, product order)
INVERSE_CONDITIONS = {2: (0, "QY"), 3: (1, "YQ'"), 4: (2, "YQ"), 5: (3, "QY")}


def solve_condition(mats, condition: int, L, n: int) -> dict:
    idx, order = INVERSE_CONDITIONS[condition]
    return _solve_inverse(mats[idx], n, L, order, condition)


def build_q_family(istar: IStarTensor, s: SigmaTensor) -> QFamily:
    L = s.L
    n = s.n
    Q, Qp, Qpp, Qppp = q_matrices(istar, s)
    Qinv = _solve_inverse(Q, n, L, "QY", 2)
    Qpinv = _solve_inverse(Qp, n, L, "YQ'", 3)
    Qppinv = _solve_inverse(Qpp, n, L, "YQ", 4)
    Qpppinv = _solve_inverse(Qppp, n, L, "QY", 5)
    two = {
        "Q": _identity_holds(Qinv, Q, n, L, "QY"),
        "Qp": _identity_holds(Qpinv, Qp, n, L, "YQ'"),
        "Qpp": _identity_holds(Qppinv, Qpp, n, L, "YQ"),
        "Qppp": _identity_holds(Qpppinv, Qppp, n, L, "QY"),
    }
    return QFamily(Q, Qp, Qpp, Qppp, Qinv, Qpinv, Qppinv, Qpppinv, n, two)


@dataclass
class RigidityCertificate:
    istar: IStarTensor
    qs: QFamily
    x: dict      # x_ab, first displayed formula
    x_alt: dict  # x_ab, second displayed formula
    y: dict
    y_alt: dict

    def to_json(self) -> dict:
        def tab(t):
            return {f"{a},{b}": t[(a, b)].to_json() for (a, b) in sorted(t)}

        return {
            "istar": self.istar.to_json(),
            "q_family": self.qs.to_json(),
            "x": tab(self.x), "x_alt": tab(self.x_alt),
            "y": tab(self.y), "y_alt": tab(self.y_alt),
        }


def antipode_elements(qs: QFamily, alg) -> tuple[dict, dict, dict, dict]:
    """(x, x_alt, y, y_alt) as FreeElements of ``alg`` (a :class:`FreeAlgebra`).

    x_ab     = sum_{c,d} (Q_ac (x) Qinv_db) L_cd
    x_alt_ab = sum_{c,d} (Qppinv_ac (x) Qpp_db) L_cd
    y_ab     = sum_{c,d} (Qpinv_db (x) Qp_ac) Li_cd
    y_alt_ab = sum_{c,d} (Qppp_bd (x) Qpppinv_ca) Li_cd
    """
    n = qs.n
    x, x_alt, y, y_alt = {}, {}, {}, {}
    for a, b in product(range(n), repeat=2):
        terms = [[], [], [], []]
        for c, d in product(range(n), repeat=2):
            terms[0].append(alg.coeff(qs.Q[(a, c)], qs.Qinv[(d, b)]) * alg.letter("L", c, d))
            terms[1].append(alg.coeff(qs.Qppinv[(a, c)], qs.Qpp[(d, b)]) * alg.letter("L", c, d))
            terms[2].append(alg.coeff(qs.Qpinv[(d, b)], qs.Qp[(a, c)]) * alg.letter("Li", c, d))
            terms[3].append(alg.coeff(qs.Qppp[(b, d)], qs.Qpppinv[(c, a)]) * alg.letter("Li", c, d))
        x[(a, b)] = alg.sum(terms[0])
        x_alt[(a, b)] = alg.sum(terms[1])
        y[(a, b)] = alg.sum(terms[2])
        y_alt[(a, b)] = alg.sum(terms[3])
    return x, x_alt, y, y_alt


def certify_rigidity(s: SigmaTensor, alg) -> RigidityCertificate:
    istar = solve_istar(s.tilde)
    qs = build_q_family(istar, s)
    x, x_alt, y, y_alt = antipode_elements(qs, alg)
    return RigidityCertificate(istar, qs, x, x_alt, y, y_alt)
