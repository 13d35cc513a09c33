"""Scikit-learn style wrapper so the measures compose with pipelines.

``fit`` builds the frontier technology from reference units given as
rows of ``[inputs | outputs]``; ``predict``/``transform`` then score
arbitrary units against that fitted frontier.  Hyperparameters follow
the sklearn convention (stored verbatim, validated at fit time), so
``get_params``/``set_params``/``clone`` work as usual.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_array, check_is_fitted

from . import classic, closest
from .ar import AssuranceRegion, RatioBounds
from .technology import Dataset, Technology

_MODELS = {
    "sbm-ar": classic.sbm_ar,
    "brwz-ar": classic.brwz_ar,
    "max-sbm-ar": closest.max_sbm_ar,
    "max-brwz-ar": closest.max_brwz_ar,
}


class EfficiencyScorer(TransformerMixin, BaseEstimator):
    """Score units against a DEA frontier fitted on reference units.

    Parameters
    ----------
    n_inputs : int
        How many leading columns of ``X`` are inputs; the rest are
        outputs.
    model : str
        One of ``sbm-ar``, ``brwz-ar``, ``max-sbm-ar``, ``max-brwz-ar``.
    input_bounds, output_bounds : sequence of (lower, upper), optional
        Ratio bounds on the multiplier weights relative to the first
        input/output weight.
    input_tradeoffs, output_tradeoffs : array-like, optional
        Explicit trade-off matrices instead of ratio bounds.
    """

    def __init__(self, n_inputs: int = 1, model: str = "max-sbm-ar",
                 input_bounds=None, output_bounds=None,
                 input_tradeoffs=None, output_tradeoffs=None):
        self.n_inputs = n_inputs
        self.model = model
        self.input_bounds = input_bounds
        self.output_bounds = output_bounds
        self.input_tradeoffs = input_tradeoffs
        self.output_tradeoffs = output_tradeoffs

    def _split(self, X):
        X = check_array(X, dtype=float, ensure_min_features=2)
        if not 1 <= self.n_inputs < X.shape[1]:
            raise ValueError("n_inputs must leave at least one output column")
        if (X < 0).any():
            raise ValueError("unit data must be nonnegative")
        return X[:, :self.n_inputs], X[:, self.n_inputs:]

    def _region(self, m, s):
        explicit = self.input_tradeoffs is not None or \
            self.output_tradeoffs is not None
        bounded = self.input_bounds is not None or self.output_bounds is not None
        if explicit and bounded:
            raise ValueError("pass either ratio bounds or explicit matrices, "
                             "not both")
        if explicit:
            P = self.input_tradeoffs if self.input_tradeoffs is not None \
                else np.zeros((m, 0))
            Q = self.output_tradeoffs if self.output_tradeoffs is not None \
                else np.zeros((s, 0))
            return AssuranceRegion(input_tradeoffs=P, output_tradeoffs=Q)
        if bounded:
            from .ar import build_input_tradeoffs, build_output_tradeoffs
            P = (build_input_tradeoffs(
                 RatioBounds(inputs=tuple(map(tuple, self.input_bounds))), m)
                 if self.input_bounds else np.zeros((m, 0)))
            Q = (build_output_tradeoffs(
                 RatioBounds(outputs=tuple(map(tuple, self.output_bounds))), s)
                 if self.output_bounds else np.zeros((s, 0)))
            return AssuranceRegion(input_tradeoffs=P, output_tradeoffs=Q,
                                   source="ratio-bounds")
        return AssuranceRegion.unrestricted(m, s)

    def fit(self, X, y=None):
        """Build the technology from reference units.

        :param X: array of shape (n_units, n_inputs + n_outputs).
        :param y: ignored, sklearn API compatibility.
        """
        if self.model not in _MODELS:
            raise ValueError(f"unknown model {self.model!r}; "
                             f"choose from {sorted(_MODELS)}")
        inputs, outputs = self._split(X)
        dataset = Dataset.from_rows(inputs, outputs)
        region = self._region(dataset.n_inputs, dataset.n_outputs)
        self.technology_ = Technology(dataset, region)
        self.n_features_in_ = X.shape[1] if hasattr(X, "shape") else \
            inputs.shape[1] + outputs.shape[1]
        return self

    def score_reports(self, X):
        """Full per-unit reports against the fitted frontier."""
        check_is_fitted(self, "technology_")
        inputs, outputs = self._split(X)
        fn = _MODELS[self.model]
        return [fn(self.technology_, x, y) for x, y in zip(inputs, outputs)]

    def predict(self, X):
        """Efficiency score of each row, shape (n_units,)."""
        return np.array([rep.score for rep in self.score_reports(X)])

    def transform(self, X):
        """Scores as a single feature column, shape (n_units, 1)."""
        return self.predict(X).reshape(-1, 1)
