"""Dense linear-programming kernel: two-phase primal simplex on a tableau.

Every DEA model in this package compiles down to a :class:`LinearProgram`.
The instances are tiny (tens of variables), so the solver favours
robustness and determinism over speed: dense numpy arrays, a fixed pivot
rule (Dantzig, falling back to Bland's rule after a stall to break
cycles), and explicit tolerances.  Free variables are handled by the
standard split into a difference of nonnegative variables so a single
solver path covers all models.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

FEAS_TOL = 1e-8
GAP_TOL = 1e-7
PIVOT_TOL = 1e-10

LESS, EQUAL, GREATER = "<=", "=", ">="
_RELATIONS = (LESS, EQUAL, GREATER)

# reduced-cost threshold below which a column is considered improving
_RCOST_TOL = 1e-9


class LpStatus(Enum):
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"


class NumericalBreakdown(RuntimeError):
    """No legal pivot above ``pivot_tol`` (or the iteration cap was hit)."""


@dataclass(frozen=True)
class LinearProgram:
    """``min``/``max`` of ``c @ x`` subject to ``A x (<=|=|>=) b``.

    Variables are nonnegative unless flagged in ``free``.
    """

    sense: str
    c: np.ndarray
    A: np.ndarray
    relations: tuple[str, ...]
    b: np.ndarray
    free: np.ndarray | None = None

    def __post_init__(self):
        object.__setattr__(self, "c", np.asarray(self.c, dtype=float))
        object.__setattr__(self, "A", np.atleast_2d(np.asarray(self.A, dtype=float)))
        object.__setattr__(self, "b", np.asarray(self.b, dtype=float))
        object.__setattr__(self, "relations", tuple(self.relations))
        if self.sense not in ("min", "max"):
            raise ValueError(f"sense must be 'min' or 'max', got {self.sense!r}")
        k, n = self.A.shape
        if self.b.shape != (k,) or len(self.relations) != k:
            raise ValueError("rows of A, b and relations must agree")
        if self.c.shape != (n,):
            raise ValueError(f"c must have shape ({n},), got {self.c.shape}")
        bad = [r for r in self.relations if r not in _RELATIONS]
        if bad:
            raise ValueError(f"invalid relations {bad}; allowed: {_RELATIONS}")
        if self.free is None:
            object.__setattr__(self, "free", np.zeros(n, dtype=bool))
        else:
            free = np.asarray(self.free, dtype=bool)
            if free.shape != (n,):
                raise ValueError(f"free mask must have shape ({n},)")
            object.__setattr__(self, "free", free)
        for name, arr in (("c", self.c), ("A", self.A), ("b", self.b)):
            if not np.all(np.isfinite(arr)):
                raise ValueError(f"{name} contains non-finite entries")

    @property
    def n_vars(self) -> int:
        return self.A.shape[1]

    @property
    def n_rows(self) -> int:
        return self.A.shape[0]


@dataclass(frozen=True)
class LpSolution:
    """Solver outcome.  ``x``/``y`` are in the original variable/row space.

    For UNBOUNDED, ``x`` is a feasible point and ``ray`` an improving
    recession direction from it.
    """

    status: LpStatus
    x: np.ndarray | None = None
    y: np.ndarray | None = None
    objective: float | None = None
    ray: np.ndarray | None = None


def _standardize(lp: LinearProgram):
    """Convert to ``min c z, A z = b (b >= 0), z >= 0``.

    Returns (A, b, c, row_sign, free_idx, n_cols_real) where column layout
    is [original vars | negative parts of free vars | slack/surplus].
    """
    k, n = lp.A.shape
    free_idx = np.flatnonzero(lp.free)
    c_min = lp.c if lp.sense == "min" else -lp.c

    A = lp.A
    c = c_min
    if free_idx.size:
        A = np.hstack([A, -A[:, free_idx]])
        c = np.concatenate([c, -c_min[free_idx]])

    row_sign = np.where(lp.b < 0.0, -1.0, 1.0)
    A = A * row_sign[:, None]
    b = lp.b * row_sign
    relations = []
    for rel, sg in zip(lp.relations, row_sign):
        if sg < 0 and rel != EQUAL:
            rel = LESS if rel == GREATER else GREATER
        relations.append(rel)

    slack = np.zeros((k, k))
    slack_used = []
    for i, rel in enumerate(relations):
        if rel == LESS:
            slack[i, i] = 1.0
            slack_used.append(i)
        elif rel == GREATER:
            slack[i, i] = -1.0
            slack_used.append(i)
    slack = slack[:, slack_used]
    A = np.hstack([A, slack])
    c = np.concatenate([c, np.zeros(len(slack_used))])
    # rows needing an artificial basic variable in phase 1
    needs_art = np.array([rel != LESS for rel in relations], dtype=bool)
    slack_basis = {i: A.shape[1] - len(slack_used) + pos
                   for pos, i in enumerate(slack_used)}
    return A, b, c, relations, row_sign, free_idx, needs_art, slack_basis


def _pivot(T: np.ndarray, row: int, col: int) -> None:
    T[row] /= T[row, col]
    factor = T[:, col].copy()
    factor[row] = 0.0
    T -= np.outer(factor, T[row])


def _run_simplex(T, basis, n_cols, *, pivot_tol, bland_after, max_iter, verbose):
    """Iterate to optimality on the canonical tableau.

    ``T`` has the cost row last and the rhs column last; entering columns
    are restricted to ``range(n_cols)``.  Returns 'optimal' or
    ('unbounded', entering_col).
    """
    stall = 0
    bland = False
    last_obj = T[-1, -1]
    for it in range(max_iter):
        rc = T[-1, :n_cols]
        if bland:
            improving = np.flatnonzero(rc < -_RCOST_TOL)
            if improving.size == 0:
                return "optimal", None
            j = int(improving[0])
        else:
            j = int(np.argmin(rc))
            if rc[j] >= -_RCOST_TOL:
                return "optimal", None
        col = T[:-1, j]
        positive = col > pivot_tol
        if not positive.any():
            if (col > 0.0).any():
                raise NumericalBreakdown(
                    f"pivot candidates in column {j} all below pivot_tol")
            return "unbounded", j
        ratios = np.full(col.shape, np.inf)
        ratios[positive] = T[:-1, -1][positive] / col[positive]
        best = np.min(ratios)
        # deterministic tie-break: smallest basic-variable index
        tied = np.flatnonzero(ratios <= best + 1e-12)
        i = int(tied[np.argmin([basis[t] for t in tied])])
        _pivot(T, i, j)
        basis[i] = j
        if verbose:
            print(f"pivot #{it}: enter {j}, leave row {i}, obj={-T[-1, -1]:.9g}")
        if T[-1, -1] > last_obj + 1e-12:
            stall = 0
            last_obj = T[-1, -1]
        else:
            stall += 1
            if stall >= bland_after:
                bland = True
    raise NumericalBreakdown(f"simplex did not converge in {max_iter} pivots")


def _install_costs(T, basis, c):
    """Write reduced costs for cost vector ``c`` into the last row."""
    T[-1, :-1] = c
    T[-1, -1] = 0.0
    for i, bj in enumerate(basis):
        if c[bj] != 0.0:
            T[-1] -= c[bj] * T[i]


def solve(lp: LinearProgram, *, feas_tol: float = FEAS_TOL,
          pivot_tol: float = PIVOT_TOL, bland_after: int = 60,
          max_iter: int = 20_000, verbose: bool = False) -> LpSolution:
    """Solve ``lp`` with the two-phase primal simplex method.

    Deterministic: identical inputs take identical pivot sequences.
    Raises :class:`NumericalBreakdown` when pivot magnitudes degenerate.
    """
    A, b, c, relations, row_sign, free_idx, needs_art, slack_basis = _standardize(lp)
    k, n_real = A.shape

    art_rows = np.flatnonzero(needs_art)
    n_art = art_rows.size
    T = np.zeros((k + 1, n_real + n_art + 1))
    T[:k, :n_real] = A
    T[:k, -1] = b
    basis = [0] * k
    for pos, i in enumerate(art_rows):
        T[i, n_real + pos] = 1.0
        basis[i] = n_real + pos
    for i in range(k):
        if not needs_art[i]:
            basis[i] = slack_basis[i]

    # phase 1: minimize the sum of artificials
    if n_art:
        c1 = np.zeros(n_real + n_art)
        c1[n_real:] = 1.0
        _install_costs(T, basis, c1)
        status, _ = _run_simplex(T, basis, n_real, pivot_tol=pivot_tol,
                                 bland_after=bland_after, max_iter=max_iter,
                                 verbose=verbose)
        if status != "optimal":  # phase-1 objective is bounded below by 0
            raise NumericalBreakdown("phase 1 reported unbounded")
        if -T[-1, -1] > feas_tol:
            return LpSolution(status=LpStatus.INFEASIBLE)
        # drive remaining artificials out of the basis
        keep_rows = np.ones(k, dtype=bool)
        for i in range(k):
            if basis[i] >= n_real:
                row = T[i, :n_real]
                cands = np.flatnonzero(np.abs(row) > pivot_tol)
                if cands.size:
                    j = int(cands[0])
                    _pivot(T, i, j)
                    basis[i] = j
                else:
                    keep_rows[i] = False  # redundant constraint
        if not keep_rows.all():
            sel = np.flatnonzero(keep_rows)
            T = np.vstack([T[sel], T[-1:]])
            basis = [basis[i] for i in sel]
        kept = np.flatnonzero(keep_rows)
    else:
        kept = np.arange(k)
    # drop artificial columns entirely
    T = np.hstack([T[:, :n_real], T[:, -1:]])

    _install_costs(T, basis, c)
    status, j_unb = _run_simplex(T, basis, n_real, pivot_tol=pivot_tol,
                                 bland_after=bland_after, max_iter=max_iter,
                                 verbose=verbose)

    n = lp.n_vars

    def to_original(z: np.ndarray) -> np.ndarray:
        x = z[:n].copy()
        x[free_idx] -= z[n:n + free_idx.size]
        return x

    z = np.zeros(n_real)
    for i, bj in enumerate(basis):
        z[bj] = T[i, -1]
    x = to_original(z)

    if status == "unbounded":
        d = np.zeros(n_real)
        d[j_unb] = 1.0
        for i, bj in enumerate(basis):
            d[bj] = -T[i, j_unb]
        return LpSolution(status=LpStatus.UNBOUNDED, x=x, ray=to_original(d))

    # duals from the optimal basis: solve B^T y = c_B on the pristine matrix
    B = A[kept][:, basis]
    try:
        y_kept = np.linalg.solve(B.T, c[list(basis)])
    except np.linalg.LinAlgError as exc:
        raise NumericalBreakdown("optimal basis is numerically singular") from exc
    y = np.zeros(k)
    y[kept] = y_kept
    y *= row_sign
    if lp.sense == "max":
        y = -y
    objective = float(lp.c @ x)
    return LpSolution(status=LpStatus.OPTIMAL, x=x, y=y, objective=objective)


def primal_violation(lp: LinearProgram, x: np.ndarray) -> float:
    """Largest constraint/bound violation of ``x`` (0 when feasible)."""
    x = np.asarray(x, dtype=float)
    lhs = lp.A @ x
    worst = 0.0
    for i, rel in enumerate(lp.relations):
        r = lhs[i] - lp.b[i]
        if rel == LESS:
            worst = max(worst, r)
        elif rel == GREATER:
            worst = max(worst, -r)
        else:
            worst = max(worst, abs(r))
    bound = np.where(lp.free, 0.0, np.maximum(-x, 0.0))
    return float(max(worst, bound.max() if bound.size else 0.0))


def dual_violation(lp: LinearProgram, y: np.ndarray) -> float:
    """Largest dual-feasibility violation of row prices ``y``."""
    y = np.asarray(y, dtype=float)
    red = lp.A.T @ y - lp.c  # minimize: need A^T y <= c
    if lp.sense == "max":
        red = -red  # maximize: need A^T y >= c
    worst = float(np.max(red)) if red.size else 0.0
    worst = max(worst, float(np.max(np.abs(red[lp.free]))) if lp.free.any() else 0.0)
    for i, rel in enumerate(lp.relations):
        sign = y[i] if lp.sense == "min" else -y[i]
        if rel == LESS and sign > 0:
            worst = max(worst, sign)
        elif rel == GREATER and sign < 0:
            worst = max(worst, -sign)
    return max(worst, 0.0)
