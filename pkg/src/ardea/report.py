"""Shared result types: slack profiles, multiplier weights, reports.

Report layout mirrors the usual score / projection / diff / rate tables:
input diffs are reductions (original minus projection), output diffs are
gains (projection minus original), and a rate is diff over the original
coordinate, undefined (None) when that coordinate is zero.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

import numpy as np


@dataclass(frozen=True)
class SlackProfile:
    """Primal solution of a slacks-based model."""

    input_slacks: np.ndarray
    output_slacks: np.ndarray
    intensities: np.ndarray
    input_tradeoff_weights: np.ndarray
    output_tradeoff_weights: np.ndarray

    def __post_init__(self):
        for name in ("input_slacks", "output_slacks", "intensities",
                     "input_tradeoff_weights", "output_tradeoff_weights"):
            object.__setattr__(self, name,
                               np.asarray(getattr(self, name), dtype=float))


@dataclass(frozen=True)
class DualWeights:
    """Multiplier-side solution (input and output weights)."""

    input_weights: np.ndarray
    output_weights: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "input_weights",
                           np.asarray(self.input_weights, dtype=float))
        object.__setattr__(self, "output_weights",
                           np.asarray(self.output_weights, dtype=float))


def _rates(diffs: np.ndarray, original: np.ndarray) -> tuple:
    return tuple(float(d) / float(o) if o != 0 else None
                 for d, o in zip(diffs, original))


@dataclass(frozen=True)
class EfficiencyReport:
    """Score plus benchmarking detail for one evaluated unit."""

    model: str
    score: float
    inputs: np.ndarray
    outputs: np.ndarray
    projected_inputs: np.ndarray
    projected_outputs: np.ndarray
    slacks: SlackProfile | None = None
    weights: DualWeights | None = None
    certified: bool = True
    branch: str | None = None
    moved_coordinate: int | None = None
    multiplicity: int = 1
    natural: bool = False
    distances: Any = None
    notes: tuple[str, ...] = ()

    def __post_init__(self):
        for name in ("inputs", "outputs", "projected_inputs", "projected_outputs"):
            object.__setattr__(self, name,
                               np.asarray(getattr(self, name), dtype=float))

    @property
    def input_diffs(self) -> np.ndarray:
        return self.inputs - self.projected_inputs

    @property
    def output_diffs(self) -> np.ndarray:
        return self.projected_outputs - self.outputs

    @property
    def input_rates(self) -> tuple:
        return _rates(self.input_diffs, self.inputs)

    @property
    def output_rates(self) -> tuple:
        return _rates(self.output_diffs, self.outputs)

    def to_dict(self) -> dict:
        """JSON-ready representation (floats kept at full precision)."""
        return {
            "model": self.model,
            "score": float(self.score),
            "inputs": [float(v) for v in self.inputs],
            "outputs": [float(v) for v in self.outputs],
            "projected_inputs": [float(v) for v in self.projected_inputs],
            "projected_outputs": [float(v) for v in self.projected_outputs],
            "input_diffs": [float(v) for v in self.input_diffs],
            "output_diffs": [float(v) for v in self.output_diffs],
            "input_rates": [None if r is None else float(r) for r in self.input_rates],
            "output_rates": [None if r is None else float(r) for r in self.output_rates],
            "certified": self.certified,
            "branch": self.branch,
            "moved_coordinate": self.moved_coordinate,
            "multiplicity": self.multiplicity,
            "natural": self.natural,
            "notes": list(self.notes),
        }


@dataclass(frozen=True)
class ProfileCheck:
    """Independent feasibility/objective check of a supplied profile."""

    feasible: bool
    objective: float | None
    residuals: dict = field(default_factory=dict)
