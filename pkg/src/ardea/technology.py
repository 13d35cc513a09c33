"""Polyhedral production technology and frontier queries.

The technology is the set of input-output vectors reachable as a
nonnegative combination of the observed units, minus input trade-off
directions, plus output trade-off directions:

    sum_j lam_j x_j - P a <= x,   sum_j lam_j y_j + Q b >= y,
    lam, a, b >= 0.

Frontier membership and the oriented max-contraction / max-expansion
quantities are all answered by small LPs assembled here over those
constraints.  Points with negative coordinates are legal: the set has no
nonnegativity restriction, so projections like x -> -17.682 can occur.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from functools import cached_property

import numpy as np

from .ar import AssumptionReport, AssuranceRegion, check_assumptions
from .lp import LESS, EQUAL, GREATER, LinearProgram, LpStatus, solve

FRONTIER_TOL = 1e-7


class NotInTechnology(ValueError):
    """A query that requires membership was made for an outside point."""


class FrontierInconsistency(RuntimeError):
    """Weak/strong frontier disagreement where regularity forbids it."""


def _as_vector(z, length, name) -> np.ndarray:
    z = np.asarray(z, dtype=float).reshape(-1)
    if z.shape != (length,):
        raise ValueError(f"{name} must have length {length}, got {z.shape}")
    if not np.all(np.isfinite(z)):
        raise ValueError(f"{name} contains non-finite entries")
    return z


@dataclass(frozen=True)
class Dataset:
    """Observed units: ``inputs`` is (m, n), ``outputs`` is (s, n), column
    j holding unit j.  Entries are nonnegative; every unit needs at least
    one positive input and one positive output."""

    inputs: np.ndarray
    outputs: np.ndarray
    names: tuple[str, ...] = ()
    input_names: tuple[str, ...] = ()
    output_names: tuple[str, ...] = ()

    def __post_init__(self):
        X = np.atleast_2d(np.asarray(self.inputs, dtype=float))
        Y = np.atleast_2d(np.asarray(self.outputs, dtype=float))
        if X.shape[1] != Y.shape[1]:
            raise ValueError("inputs and outputs must cover the same units")
        if not np.all(np.isfinite(X)) or not np.all(np.isfinite(Y)):
            raise ValueError("data must be finite")
        if (X < 0).any() or (Y < 0).any():
            raise ValueError("data must be nonnegative")
        for j in range(X.shape[1]):
            if not (X[:, j] > 0).any():
                raise ValueError(f"unit {j} has an all-zero input vector")
            if not (Y[:, j] > 0).any():
                raise ValueError(f"unit {j} has an all-zero output vector")
        names = tuple(self.names) if self.names else tuple(
            f"DMU{j + 1}" for j in range(X.shape[1]))
        if len(names) != X.shape[1]:
            raise ValueError("names must match the number of units")
        in_names = tuple(self.input_names) if self.input_names else tuple(
            f"x{i + 1}" for i in range(X.shape[0]))
        out_names = tuple(self.output_names) if self.output_names else tuple(
            f"y{r + 1}" for r in range(Y.shape[0]))
        if len(in_names) != X.shape[0] or len(out_names) != Y.shape[0]:
            raise ValueError("coordinate names must match the dimensions")
        object.__setattr__(self, "inputs", X)
        object.__setattr__(self, "outputs", Y)
        object.__setattr__(self, "names", names)
        object.__setattr__(self, "input_names", in_names)
        object.__setattr__(self, "output_names", out_names)

    @classmethod
    def from_rows(cls, input_rows, output_rows, names=(),
                  input_names=(), output_names=()) -> "Dataset":
        """Build from per-unit rows (the CSV orientation)."""
        return cls(inputs=np.atleast_2d(np.asarray(input_rows, dtype=float)).T,
                   outputs=np.atleast_2d(np.asarray(output_rows, dtype=float)).T,
                   names=names, input_names=input_names,
                   output_names=output_names)

    @property
    def n_units(self) -> int:
        return self.inputs.shape[1]

    @property
    def n_inputs(self) -> int:
        return self.inputs.shape[0]

    @property
    def n_outputs(self) -> int:
        return self.outputs.shape[0]

    def unit(self, j: int) -> tuple[np.ndarray, np.ndarray]:
        return self.inputs[:, j].copy(), self.outputs[:, j].copy()


class FrontierLabel(Enum):
    OUTSIDE = "outside"
    INTERIOR = "interior"
    WEAKLY_EFFICIENT_ONLY = "weakly-efficient-only"
    STRONGLY_EFFICIENT = "strongly-efficient"


@dataclass(frozen=True)
class FrontierClass:
    label: FrontierLabel
    weak_gap: float | None = None
    strong_gap: float | None = None


class Technology:
    """Immutable frontier model over a dataset and an assurance region.

    All queries are pure LP solves; instances are safe to share across
    threads.
    """

    def __init__(self, dataset: Dataset, ar: AssuranceRegion | None = None,
                 *, tol: float = FRONTIER_TOL):
        if ar is None:
            ar = AssuranceRegion.unrestricted(dataset.n_inputs, dataset.n_outputs)
        if ar.n_inputs != dataset.n_inputs:
            raise ValueError("input trade-off matrix rows must match input count")
        if ar.n_outputs != dataset.n_outputs:
            raise ValueError("output trade-off matrix rows must match output count")
        self.dataset = dataset
        self.ar = ar
        self.tol = tol

    @property
    def m(self) -> int:
        return self.dataset.n_inputs

    @property
    def s(self) -> int:
        return self.dataset.n_outputs

    @property
    def n(self) -> int:
        return self.dataset.n_units

    @cached_property
    def assumptions(self) -> AssumptionReport:
        return check_assumptions(self.ar)

    # -- constraint assembly -------------------------------------------------
    #
    # Variable layout for every query: [lam (n), a (p), b (q), extras...],
    # with m input rows followed by s output rows.

    def _blocks(self, extra_in=None, extra_out=None):
        X, Y = self.dataset.inputs, self.dataset.outputs
        P, Q = self.ar.input_tradeoffs, self.ar.output_tradeoffs
        p, q = P.shape[1], Q.shape[1]
        m, s, n = self.m, self.s, self.n
        n_extra = 0 if extra_in is None else extra_in.shape[1]
        top = [X, -P, np.zeros((m, q))]
        bot = [Y, np.zeros((s, p)), Q]
        if n_extra:
            top.append(extra_in)
            bot.append(extra_out)
        A = np.vstack([np.hstack(top), np.hstack(bot)])
        return A, n + p + q + n_extra

    def _pps_lp(self, x, y, extra_in=None, extra_out=None, c_extra=None,
                relations=None, free_extra=None, sense="max"):
        A, total = self._blocks(extra_in, extra_out)
        c = np.zeros(total)
        free = np.zeros(total, dtype=bool)
        n_extra = 0 if c_extra is None else len(c_extra)
        if n_extra:
            c[-n_extra:] = c_extra
            if free_extra is not None:
                free[-n_extra:] = free_extra
        if relations is None:
            relations = (LESS,) * self.m + (GREATER,) * self.s
        b = np.concatenate([x, y])
        return LinearProgram(sense=sense, c=c, A=A, relations=relations, b=b,
                             free=free)

    # -- queries ---------------------------------------------------------------

    def contains(self, x, y) -> bool:
        """Membership in the technology (phase-1 feasibility)."""
        x = _as_vector(x, self.m, "x")
        y = _as_vector(y, self.s, "y")
        sol = solve(self._pps_lp(x, y))
        return sol.status is LpStatus.OPTIMAL

    def weak_gap(self, x, y) -> float:
        """Best uniform improvement: contract all inputs and expand all
        outputs by a common amount.  Zero exactly on the weak frontier;
        negative for outside points; ``inf`` if the region recedes."""
        x = _as_vector(x, self.m, "x")
        y = _as_vector(y, self.s, "y")
        lp = self._pps_lp(
            x, y,
            extra_in=np.ones((self.m, 1)), extra_out=-np.ones((self.s, 1)),
            c_extra=[1.0], free_extra=[True])
        sol = solve(lp)
        if sol.status is LpStatus.UNBOUNDED:
            return math.inf
        if sol.status is not LpStatus.OPTIMAL:
            raise NotInTechnology("uniform-improvement problem infeasible; "
                                  "point cannot be in the technology")
        return float(sol.objective)

    def strong_gap(self, x, y) -> float:
        """Total slack of the additive max-slack problem over the equality
        form of the technology.  Zero exactly on the strong frontier."""
        x = _as_vector(x, self.m, "x")
        y = _as_vector(y, self.s, "y")
        m, s = self.m, self.s
        extra_in = np.hstack([np.eye(m), np.zeros((m, s))])
        extra_out = np.hstack([np.zeros((s, m)), -np.eye(s)])
        lp = self._pps_lp(x, y, extra_in=extra_in, extra_out=extra_out,
                          c_extra=np.ones(m + s),
                          relations=(EQUAL,) * (m + s))
        sol = solve(lp)
        if sol.status is LpStatus.UNBOUNDED:
            return math.inf
        if sol.status is not LpStatus.OPTIMAL:
            raise NotInTechnology("additive slack problem infeasible; "
                                  "point is outside the technology")
        return float(sol.objective)

    def classify(self, x, y) -> FrontierClass:
        """Outside / interior / weakly-only / strongly efficient.

        The strong-frontier check runs only when the weak gap vanishes,
        saving one LP per interior point.
        """
        x = _as_vector(x, self.m, "x")
        y = _as_vector(y, self.s, "y")
        if not self.contains(x, y):
            return FrontierClass(label=FrontierLabel.OUTSIDE)
        wg = self.weak_gap(x, y)
        if wg > self.tol:
            return FrontierClass(label=FrontierLabel.INTERIOR, weak_gap=wg)
        sg = self.strong_gap(x, y)
        if sg <= self.tol:
            return FrontierClass(label=FrontierLabel.STRONGLY_EFFICIENT,
                                 weak_gap=wg, strong_gap=sg)
        # Under the regularity assumptions, weak-only points cannot carry a
        # nonzero nonnegative output vector: treat a clear-cut disagreement
        # as an internal error rather than a classification.
        if (self.assumptions.ok and (y >= 0).all() and (y > 0).any()
                and wg <= self.tol / 100 and sg > 1e-4):
            raise FrontierInconsistency(
                f"weak gap {wg:.3e} but strong gap {sg:.3e} at a point where "
                "the frontiers must coincide")
        return FrontierClass(label=FrontierLabel.WEAKLY_EFFICIENT_ONLY,
                             weak_gap=wg, strong_gap=sg)

    def _max_shift(self, x, y, column_in, column_out) -> float:
        lp = self._pps_lp(x, y, extra_in=column_in, extra_out=column_out,
                          c_extra=[1.0], free_extra=[True])
        sol = solve(lp)
        if sol.status is LpStatus.UNBOUNDED:
            return math.inf
        if sol.status is not LpStatus.OPTIMAL:
            raise NotInTechnology("max-shift problem infeasible; the starting "
                                  "point is outside the technology")
        delta = float(sol.objective)
        if delta < -self.tol:
            raise NotInTechnology(
                f"starting point is outside the technology (shift {delta:.3e})")
        return max(delta, 0.0)

    def max_contraction(self, x, y, i: int) -> float:
        """Largest fraction of input ``i`` removable while staying inside.

        Requires ``x[i] > 0``; returns ``inf`` when the set recedes in
        that direction.
        """
        x = _as_vector(x, self.m, "x")
        y = _as_vector(y, self.s, "y")
        if not 0 <= i < self.m:
            raise IndexError(f"input index {i} out of range")
        if x[i] <= 0:
            raise ValueError(f"input {i} is zero; contraction ratio undefined")
        col = np.zeros((self.m, 1))
        col[i, 0] = x[i]
        return self._max_shift(x, y, col, np.zeros((self.s, 1)))

    def max_expansion(self, x, y, r: int) -> float:
        """Largest multiple of output ``r`` addable while staying inside."""
        x = _as_vector(x, self.m, "x")
        y = _as_vector(y, self.s, "y")
        if not 0 <= r < self.s:
            raise IndexError(f"output index {r} out of range")
        if y[r] <= 0:
            raise ValueError(f"output {r} is zero; expansion ratio undefined")
        col = np.zeros((self.s, 1))
        col[r, 0] = -y[r]
        return self._max_shift(x, y, np.zeros((self.m, 1)), col)
