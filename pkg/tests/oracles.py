"""Independent brute-force oracles shared by the unit and acceptance tests."""

from itertools import product

import sympy


def oracle_istar(s):
    """Pointwise inverse of the n^2 x n^2 matrix S[(a,b),(x,y)] = ts^{by}_{ax}.

    Entries live in R = k or k[x]/(x^2) (both commutative); for A + B x the inverse
    is A^-1 - A^-1 B A^-1 x.  Returns {(w,a,z,b): [per-point R-vector]}.
    """
    n, L, st = s.n, s.L, s.tilde
    r = L.R.dim
    pairs = list(product(range(n), repeat=2))
    out = {k: [] for k in product(range(n), repeat=4)}
    for p in range(L.npoints):
        A = sympy.zeros(n * n)
        B = sympy.zeros(n * n)
        for (i, (a, b)), (j, (x, y)) in product(enumerate(pairs), repeat=2):
            v = st[(b, y, a, x)].at(p)
            A[i, j] = v[0]
            if r == 2:
                B[i, j] = v[1]
        Ai = A.inv()
        Bi = -Ai * B * Ai
        for (i, (w, z)), (j, (a, b)) in product(enumerate(pairs), repeat=2):
            vec = (Ai[i, j],) if r == 1 else (Ai[i, j], Bi[i, j])
            out[(w, a, z, b)].append(vec)
    return out
