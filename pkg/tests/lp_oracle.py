"""Brute-force LP reference used to cross-check the simplex kernel.

Independent of the solver: converts to equality form, enumerates every
basis for the optimum and every minimal dependent column set (circuit)
for unboundedness.  Batched over numpy's stacked linalg so 500 tiny
instances stay fast.  Only usable for tiny LPs.
"""

from __future__ import annotations

import itertools

import numpy as np


def _equality_form(lp):
    """Return (A, b, c_min) for min-form ``A z = b, z >= 0``."""
    A = np.array(lp.A, dtype=float)
    b = np.array(lp.b, dtype=float)
    c = np.array(lp.c, dtype=float)
    if lp.sense == "max":
        c = -c
    free = np.flatnonzero(lp.free)
    if free.size:
        A = np.hstack([A, -A[:, free]])
        c = np.concatenate([c, -c[free]])
    cols = []
    for i, rel in enumerate(lp.relations):
        if rel == "<=":
            e = np.zeros(len(b))
            e[i] = 1.0
            cols.append(e)
        elif rel == ">=":
            e = np.zeros(len(b))
            e[i] = -1.0
            cols.append(e)
    if cols:
        A = np.hstack([A, np.column_stack(cols)])
        c = np.concatenate([c, np.zeros(len(cols))])
    return A, b, c


def _best_vertex(A, b, c, tol):
    """Scan all bases at once; return (found_feasible, best_objective)."""
    m, total = A.shape
    if total < m:
        return False, None
    combos = np.array(list(itertools.combinations(range(total), m)))
    stacks = A.T[combos].transpose(0, 2, 1)      # (K, m, m)
    dets = np.abs(np.linalg.det(stacks))
    usable = dets > 1e-12
    if not usable.any():
        return False, None
    rhs = np.broadcast_to(b[:, None], (int(usable.sum()), m, 1)).copy()
    sols = np.linalg.solve(stacks[usable], rhs)[..., 0]
    feas = (sols >= -tol).all(axis=1)
    if not feas.any():
        return False, None
    objs = np.einsum("kj,kj->k", c[combos[usable]][feas], sols[feas])
    return True, float(objs.min())


def _improving_ray(A, c, tol):
    """True iff a recession direction d >= 0, A d = 0 with c @ d < 0 exists.

    Extreme rays live on minimal dependent column sets, found as subsets
    whose rank is exactly one less than their size.
    """
    m, total = A.shape
    scale = max(1.0, float(np.abs(A).max()))
    for size in range(1, min(m + 1, total) + 1):
        combos = np.array(list(itertools.combinations(range(total), size)))
        stacks = A.T[combos].transpose(0, 2, 1)  # (K, m, size)
        U, S, Vt = np.linalg.svd(stacks)
        ranks = (S > 1e-9 * scale).sum(axis=1)
        minimal = ranks == size - 1
        if not minimal.any():
            continue
        vs = Vt[minimal][:, -1, :]               # null vectors, (K', size)
        cs = c[combos[minimal]]
        for v, cv, cols in zip(vs, cs, combos[minimal]):
            for d in (v, -v):
                if d.min() >= -1e-9 and float(cv @ d) < -1e-7:
                    return True
    return False


def brute_solve(lp, tol: float = 1e-9):
    """Return (status_string, objective_or_None) for a tiny LP."""
    A, b, c = _equality_form(lp)
    feasible, best = _best_vertex(A, b, c, tol)
    if not feasible:
        return "infeasible", None
    if _improving_ray(A, c, tol):
        return "unbounded", None
    assert best is not None
    if lp.sense == "max":
        best = -best
    return "optimal", best


def random_lp(rng, max_rows: int = 6, max_vars: int = 6):
    """A random dense LP with mixed relations and occasional free vars."""
    from ardea.lp import LinearProgram

    m = int(rng.integers(1, max_rows + 1))
    n = int(rng.integers(1, max_vars + 1))
    A = rng.normal(size=(m, n))
    c = rng.normal(size=n)
    b = rng.normal(size=m)
    relations = tuple(rng.choice(["<=", "=", ">="], size=m, p=[0.5, 0.2, 0.3]))
    free = rng.random(n) < 0.2
    sense = "min" if rng.random() < 0.5 else "max"
    return LinearProgram(sense=sense, c=c, A=A, relations=relations, b=b, free=free)
