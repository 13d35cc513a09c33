import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from ardea.ar import (
    AssuranceRegion,
    RatioBounds,
    build_input_tradeoffs,
    build_output_tradeoffs,
    check_assumptions,
    ratio_tradeoff_matrix,
)


def test_two_input_matrix():
    bounds = RatioBounds(inputs=((1.0, 2.0),))
    P = build_input_tradeoffs(bounds, 2)
    assert np.array_equal(P, np.array([[1.0, -2.0], [-1.0, 1.0]]))


def test_two_output_matrix():
    bounds = RatioBounds(outputs=((1.0, 2.0),))
    Q = build_output_tradeoffs(bounds, 2)
    assert np.array_equal(Q, np.array([[1.0, -2.0], [-1.0, 1.0]]))


def test_single_weight_gives_zero_columns():
    assert build_input_tradeoffs(RatioBounds(), 1).shape == (1, 0)
    assert build_output_tradeoffs(RatioBounds(), 1).shape == (1, 0)


def test_invalid_bounds_rejected():
    with pytest.raises(ValueError):
        RatioBounds(inputs=((0.0, 2.0),))
    with pytest.raises(ValueError):
        RatioBounds(inputs=((3.0, 2.0),))
    with pytest.raises(ValueError):
        ratio_tradeoff_matrix([(1.0, 2.0)], 3)  # wrong bound count


def _sign_predicates_match(M, bounds, grid):
    """Every grid weight vector satisfies w @ M <= 0 iff it obeys the bounds."""
    for w in grid:
        satisfies_cols = np.all(w @ M <= 1e-12)
        satisfies_bounds = all(
            lo * w[0] <= w[k + 1] <= hi * w[0] + 1e-12
            for k, (lo, hi) in enumerate(bounds)
        )
        assert satisfies_cols == satisfies_bounds, (w, M)


def test_three_input_matrix_encodes_bounds_by_sampling():
    bounds = ((1.0, 2.0), (3.0, 4.0))
    M = ratio_tradeoff_matrix(bounds, 3)
    assert M.shape == (3, 4)
    pts = np.linspace(0.25, 4.5, 7)
    grid = [np.array([1.0, a, b]) for a in pts for b in pts]
    _sign_predicates_match(M, bounds, grid)


def test_three_output_matrix_encodes_bounds_by_sampling():
    bounds = ((0.5, 1.5), (2.0, 2.0))
    M = ratio_tradeoff_matrix(bounds, 3)
    pts = np.linspace(0.1, 3.0, 7)
    grid = [np.array([1.0, a, b]) for a in pts for b in pts]
    _sign_predicates_match(M, bounds, grid)


@settings(max_examples=25, deadline=None)
@given(st.lists(st.tuples(st.floats(0.1, 5.0), st.floats(0.1, 5.0)),
                min_size=1, max_size=3),
       st.floats(0.2, 3.0), st.floats(0.2, 3.0))
def test_bound_violation_flips_some_column(raw, w1, scale):
    bounds = tuple((min(a, b), max(a, b)) for a, b in raw)
    size = len(bounds) + 1
    M = ratio_tradeoff_matrix(bounds, size)
    # on-bounds vector satisfies every column
    w = np.array([w1] + [w1 * (lo + hi) / 2 for lo, hi in bounds]) * scale
    assert np.all(w @ M <= 1e-9)
    # pushing one ratio above its upper bound violates that pair's column
    k = len(bounds) - 1
    w_bad = w.copy()
    w_bad[k + 1] = w[0] * (bounds[k][1] * 1.5 + 0.1)
    assert np.any(w_bad @ M > 1e-9)


def test_reference_region_passes_checks():
    ar = AssuranceRegion.from_ratio_bounds(
        RatioBounds(inputs=((1.0, 2.0),), outputs=((1.0, 2.0),)), m=2, s=2)
    report = check_assumptions(ar)
    assert report.ok
    # hand-derived: v1 in [1/3, 1/2] on the simplex slice
    assert report.input_minima[0] == pytest.approx(1 / 3, abs=1e-9)
    assert report.input_minima[1] == pytest.approx(1 / 2, abs=1e-9)
    assert report.output_minima[0] == pytest.approx(1 / 3, abs=1e-9)
    assert report.output_minima[1] == pytest.approx(1 / 2, abs=1e-9)


def test_unrestricted_two_inputs_fails_input_side():
    ar = AssuranceRegion(input_tradeoffs=np.zeros((2, 0)),
                         output_tradeoffs=np.zeros((1, 0)))
    report = check_assumptions(ar)
    assert not report.input_regular  # v = (1, 0) attains minimum 0
    assert report.output_regular     # scalar weight is always positive


def test_scalar_input_side_holds():
    ar = AssuranceRegion.unrestricted(1, 1)
    report = check_assumptions(ar)
    assert report.input_regular and report.output_regular


def test_empty_admissible_cone_counts_as_input_regular():
    # w P <= 0 forces w1 <= -w1 and w2 <= -w2, so only w = 0 is admissible,
    # and the simplex slice is infeasible
    P = np.array([[2.0, 0.0], [0.0, 2.0]])
    ar = AssuranceRegion(input_tradeoffs=P, output_tradeoffs=np.zeros((1, 0)))
    report = check_assumptions(ar)
    assert report.input_minima == (None, None)
    assert report.input_regular


@settings(max_examples=20, deadline=None)
@given(st.lists(st.tuples(st.floats(0.05, 8.0), st.floats(0.05, 8.0)),
                min_size=0, max_size=2),
       st.lists(st.tuples(st.floats(0.05, 8.0), st.floats(0.05, 8.0)),
                min_size=1, max_size=2))
def test_ratio_bound_regions_always_pass(in_raw, out_raw):
    bounds = RatioBounds(
        inputs=tuple((min(a, b), max(a, b)) for a, b in in_raw),
        outputs=tuple((min(a, b), max(a, b)) for a, b in out_raw),
    )
    ar = AssuranceRegion.from_ratio_bounds(
        bounds, m=len(bounds.inputs) + 1, s=len(bounds.outputs) + 1)
    assert check_assumptions(ar).ok
