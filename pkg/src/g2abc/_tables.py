"""Index and sign tables for the exterior algebra of a 7-dimensional space.

Degree-k forms are stored as dense coefficient vectors over the basis
monomials e^I, I running through the lexicographically ordered k-subsets
of {1,...,7}.  Everything here is built once at import time and shared by
the numba and numpy kernel backends.
"""

import itertools

import numpy as np

DIM = 7
DEGREES = range(DIM + 1)

#: COMBS[k][r] is the ascending index tuple of the rank-r monomial of degree k.
COMBS = {k: tuple(itertools.combinations(range(1, DIM + 1), k)) for k in DEGREES}
#: RANK[k][I] inverts COMBS[k].
RANK = {k: {c: r for r, c in enumerate(COMBS[k])} for k in DEGREES}
#: DIMS[k] == C(7, k)
DIMS = {k: len(COMBS[k]) for k in DEGREES}

TOP = COMBS[DIM][0]  # (1,...,7)


def merge_sign(left, right):
    """Sign of sorting the concatenation of two ascending tuples; 0 if they share an index."""
    if set(left) & set(right):
        return 0
    inversions = sum(1 for x in left for y in right if x > y)
    return -1 if inversions & 1 else 1


def _build_wedge_tables():
    # (k1, k2) -> (ia, ja, ka, sa): out[ka] += sa * a[ia] * b[ja]
    tables = {}
    for k1 in DEGREES:
        for k2 in DEGREES:
            if k1 + k2 > DIM:
                continue
            ia, ja, ka, sa = [], [], [], []
            for i, left in enumerate(COMBS[k1]):
                for j, right in enumerate(COMBS[k2]):
                    s = merge_sign(left, right)
                    if s == 0:
                        continue
                    ia.append(i)
                    ja.append(j)
                    ka.append(RANK[k1 + k2][tuple(sorted(left + right))])
                    sa.append(float(s))
            tables[(k1, k2)] = (
                np.asarray(ia, dtype=np.int64),
                np.asarray(ja, dtype=np.int64),
                np.asarray(ka, dtype=np.int64),
                np.asarray(sa, dtype=np.float64),
            )
    return tables


def _build_contract_tables():
    # k -> (ms, ins, outs, sgns): out[outs] += sgns * x[ms] * a[ins]
    # Contraction in the first slot: iota_{e_m} e^I = (-1)^(t-1) e^(I \ m),
    # m the t-th entry of I.
    tables = {}
    for k in DEGREES:
        if k == 0:
            continue
        ms, ins, outs, sgns = [], [], [], []
        for r, comb in enumerate(COMBS[k]):
            for t, m in enumerate(comb):
                rest = comb[:t] + comb[t + 1:]
                ms.append(m - 1)
                ins.append(r)
                outs.append(RANK[k - 1][rest])
                sgns.append(-1.0 if t & 1 else 1.0)
        tables[k] = (
            np.asarray(ms, dtype=np.int64),
            np.asarray(ins, dtype=np.int64),
            np.asarray(outs, dtype=np.int64),
            np.asarray(sgns, dtype=np.float64),
        )
    return tables


def _build_star_tables():
    # k -> (comp, sgn): identity-metric Hodge star, out[comp[r]] = sgn[r] * a[r],
    # normalised so that e^I ^ star(e^I) = e^{1...7}.
    tables = {}
    for k in DEGREES:
        comp = np.empty(DIMS[k], dtype=np.int64)
        sgn = np.empty(DIMS[k], dtype=np.float64)
        for r, left in enumerate(COMBS[k]):
            rest = tuple(i for i in TOP if i not in left)
            comp[r] = RANK[DIM - k][rest]
            sgn[r] = float(merge_sign(left, rest))
        tables[k] = (comp, sgn)
    return tables


WEDGE_TABLES = _build_wedge_tables()
CONTRACT_TABLES = _build_contract_tables()
STAR_TABLES = _build_star_tables()
