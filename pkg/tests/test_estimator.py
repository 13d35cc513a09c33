import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError
from sklearn.pipeline import Pipeline
from sklearn.preprocessing import StandardScaler

from ardea.closest import max_sbm_ar
from ardea.estimator import EfficiencyScorer

from conftest import EIGHT_INPUT_ROWS, EIGHT_OUTPUT_ROWS

ROWS = np.hstack([np.array(EIGHT_INPUT_ROWS, dtype=float),
                  np.array(EIGHT_OUTPUT_ROWS, dtype=float)])
BOUNDS = dict(input_bounds=[(1.0, 2.0)], output_bounds=[(1.0, 2.0)])


def test_get_set_params_and_clone():
    est = EfficiencyScorer(n_inputs=2, model="max-brwz-ar", **BOUNDS)
    params = est.get_params()
    assert params["n_inputs"] == 2 and params["model"] == "max-brwz-ar"
    twin = clone(est)
    assert twin.get_params() == params
    est.set_params(model="max-sbm-ar")
    assert est.model == "max-sbm-ar"


def test_predict_matches_library(eight_tech):
    est = EfficiencyScorer(n_inputs=2, model="max-sbm-ar", **BOUNDS)
    scores = est.fit(ROWS).predict(ROWS)
    for j, got in enumerate(scores):
        x, y = eight_tech.dataset.unit(j)
        assert got == pytest.approx(max_sbm_ar(eight_tech, x, y).score,
                                    abs=1e-12)


def test_predict_unfitted_raises():
    with pytest.raises(NotFittedError):
        EfficiencyScorer(n_inputs=2, **BOUNDS).predict(ROWS)


def test_new_units_scored_against_fitted_frontier():
    est = EfficiencyScorer(n_inputs=2, model="max-sbm-ar", **BOUNDS).fit(ROWS)
    fresh = np.array([[8.0, 2.0, 6.0, 2.0]])  # unit C with extra input 2
    score = est.predict(fresh)[0]
    assert 0.0 < score < 1.0


def test_transform_shape_and_pipeline():
    pipe = Pipeline([
        ("efficiency", EfficiencyScorer(n_inputs=2, model="max-sbm-ar",
                                        **BOUNDS)),
        ("scale", StandardScaler()),
    ])
    out = pipe.fit_transform(ROWS)
    assert out.shape == (len(ROWS), 1)


def test_validation_errors():
    est = EfficiencyScorer(n_inputs=4, **BOUNDS)
    with pytest.raises(ValueError):
        est.fit(ROWS)  # no output column left
    est = EfficiencyScorer(n_inputs=2, model="nope", **BOUNDS)
    with pytest.raises(ValueError):
        est.fit(ROWS)
    est = EfficiencyScorer(n_inputs=2, **BOUNDS)
    with pytest.raises(ValueError):
        est.fit(-ROWS)


def test_explicit_matrices():
    M = np.array([[1.0, -2.0], [-1.0, 1.0]])
    est = EfficiencyScorer(n_inputs=2, model="max-sbm-ar",
                           input_tradeoffs=M, output_tradeoffs=M)
    scores = est.fit(ROWS).predict(ROWS)
    ref = EfficiencyScorer(n_inputs=2, model="max-sbm-ar", **BOUNDS)
    assert np.allclose(scores, ref.fit(ROWS).predict(ROWS))
