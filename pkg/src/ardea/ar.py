"""Assurance regions: ratio-bound trade-off matrices and regularity checks.

Weight restrictions of ratio type, ``lo <= w_i / w_1 <= hi`` for the
input-weight vector and likewise for output weights, are compiled into
trade-off matrices whose columns each encode one inequality as
``w @ column <= 0``.  The same matrices drive the primal technology: a
column of the input matrix is a direction along which inputs may be
traded, a column of the output matrix one along which outputs may be
raised.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .lp import LinearProgram, LpStatus, solve

VCON_TOL = 1e-9


def _check_bounds(bounds) -> tuple[tuple[float, float], ...]:
    out = []
    for k, pair in enumerate(bounds):
        lo, hi = float(pair[0]), float(pair[1])
        if not (0.0 < lo <= hi) or not np.isfinite(hi):
            raise ValueError(
                f"ratio bound #{k + 1} must satisfy 0 < lower <= upper, got ({lo}, {hi})")
        out.append((lo, hi))
    return tuple(out)


@dataclass(frozen=True)
class RatioBounds:
    """Bounds on weight ratios relative to the first weight.

    ``inputs[k]`` bounds input weight ``k + 2`` over input weight 1;
    ``outputs`` likewise for output weights.
    """

    inputs: tuple[tuple[float, float], ...] = ()
    outputs: tuple[tuple[float, float], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "inputs", _check_bounds(self.inputs))
        object.__setattr__(self, "outputs", _check_bounds(self.outputs))


def ratio_tradeoff_matrix(bounds, size: int) -> np.ndarray:
    """Trade-off matrix for ratio bounds on ``size`` weights.

    Column pair (2k, 2k+1) encodes ``lo_k <= w_{k+2}/w_1 <= hi_k``:
    the first row carries ``+lo`` / ``-hi`` and row ``k+1`` carries
    ``-1`` / ``+1``, so ``w @ column <= 0`` reproduces both inequalities.
    """
    bounds = _check_bounds(bounds)
    if size < 1:
        raise ValueError("size must be at least 1")
    if len(bounds) != size - 1:
        raise ValueError(f"expected {size - 1} bound pairs for {size} weights, "
                         f"got {len(bounds)}")
    M = np.zeros((size, 2 * (size - 1)))
    for k, (lo, hi) in enumerate(bounds):
        M[0, 2 * k] = lo
        M[0, 2 * k + 1] = -hi
        M[k + 1, 2 * k] = -1.0
        M[k + 1, 2 * k + 1] = 1.0
    return M


def build_input_tradeoffs(bounds: RatioBounds, m: int) -> np.ndarray:
    """Input-weight trade-off matrix (m rows) from ratio bounds."""
    return ratio_tradeoff_matrix(bounds.inputs, m)


def build_output_tradeoffs(bounds: RatioBounds, s: int) -> np.ndarray:
    """Output-weight trade-off matrix (s rows) from ratio bounds."""
    return ratio_tradeoff_matrix(bounds.outputs, s)


@dataclass(frozen=True)
class AssuranceRegion:
    """Trade-off matrix pair restricting the multiplier weights.

    ``input_tradeoffs`` has one row per input, ``output_tradeoffs`` one
    per output; any number of columns (zero columns = no restriction).
    """

    input_tradeoffs: np.ndarray
    output_tradeoffs: np.ndarray
    source: str = "user"

    def __post_init__(self):
        P = np.atleast_2d(np.asarray(self.input_tradeoffs, dtype=float))
        Q = np.atleast_2d(np.asarray(self.output_tradeoffs, dtype=float))
        if not np.all(np.isfinite(P)) or not np.all(np.isfinite(Q)):
            raise ValueError("trade-off matrices must be finite")
        object.__setattr__(self, "input_tradeoffs", P)
        object.__setattr__(self, "output_tradeoffs", Q)

    @classmethod
    def from_ratio_bounds(cls, bounds: RatioBounds, m: int, s: int) -> "AssuranceRegion":
        return cls(input_tradeoffs=build_input_tradeoffs(bounds, m),
                   output_tradeoffs=build_output_tradeoffs(bounds, s),
                   source="ratio-bounds")

    @classmethod
    def unrestricted(cls, m: int, s: int) -> "AssuranceRegion":
        return cls(input_tradeoffs=np.zeros((m, 0)),
                   output_tradeoffs=np.zeros((s, 0)), source="empty")

    @property
    def n_inputs(self) -> int:
        return self.input_tradeoffs.shape[0]

    @property
    def n_outputs(self) -> int:
        return self.output_tradeoffs.shape[0]


@dataclass(frozen=True)
class AssumptionReport:
    """Result of the weight-regularity checks.

    ``input_regular``: every admissible nonzero input-weight vector is
    strictly positive.  ``output_regular``: an admissible nonzero
    output-weight vector exists and all of them are strictly positive.
    Minima are per-weight optima of the check LPs (None = infeasible).
    """

    input_minima: tuple
    output_minima: tuple
    input_regular: bool
    output_regular: bool

    @property
    def ok(self) -> bool:
        return self.input_regular and self.output_regular


def _weight_minima(M: np.ndarray, tol: float):
    """Min of each weight over the simplex slice of ``{w >= 0: w M <= 0}``."""
    size, cols = M.shape
    A = np.vstack([np.ones((1, size)), M.T])
    relations = ("=",) + ("<=",) * cols
    b = np.concatenate([[1.0], np.zeros(cols)])
    minima = []
    for i in range(size):
        c = np.zeros(size)
        c[i] = 1.0
        sol = solve(LinearProgram(sense="min", c=c, A=A, relations=relations, b=b))
        minima.append(sol.objective if sol.status is LpStatus.OPTIMAL else None)
    return tuple(minima)


def check_assumptions(ar: AssuranceRegion, *, tol: float = VCON_TOL) -> AssumptionReport:
    """Verify the weight-regularity assumptions by one LP per weight.

    Input side holds iff no minimum is (numerically) zero; an infeasible
    simplex slice means the admissible cone is {0}, which also counts as
    holding.  Output side requires feasibility and strictly positive
    minima everywhere.
    """
    in_min = _weight_minima(ar.input_tradeoffs, tol)
    out_min = _weight_minima(ar.output_tradeoffs, tol)
    input_regular = all(v is None or v > tol for v in in_min)
    output_regular = all(v is not None and v > tol for v in out_min)
    return AssumptionReport(input_minima=in_min, output_minima=out_min,
                            input_regular=input_regular,
                            output_regular=output_regular)
