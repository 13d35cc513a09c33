import math

import numpy as np
import pytest

from ardea.ar import AssuranceRegion
from ardea.technology import (
    Dataset,
    FrontierLabel,
    NotInTechnology,
    Technology,
)

from conftest import unit


def test_dataset_validation():
    with pytest.raises(ValueError):
        Dataset.from_rows([[1, 2]], [[1], [1]])  # unit counts differ
    with pytest.raises(ValueError):
        Dataset.from_rows([[-1, 2]], [[1]])
    with pytest.raises(ValueError):
        Dataset.from_rows([[0, 0]], [[1]])
    with pytest.raises(ValueError):
        Dataset.from_rows([[1, 1]], [[0]])
    ds = Dataset.from_rows([[0, 10]], [[1, 0]], names=("G",))
    assert ds.n_inputs == 2 and ds.n_outputs == 2 and ds.n_units == 1


def test_observed_units_are_members(five_tech):
    for j in range(five_tech.n):
        x, y = five_tech.dataset.unit(j)
        assert five_tech.contains(x, y)


def test_huge_outputs_not_member(five_tech):
    assert not five_tech.contains([0.0, 0.0], [1e6, 1e6])


def test_inefficient_unit_is_still_inside(five_tech):
    # (6, 20, 1, 1) is dominated but lies inside the technology
    x, y = unit(five_tech, "B")
    assert five_tech.contains(x, y)
    assert five_tech.weak_gap(x, y) > 1e-6


def test_weak_gap_zero_on_efficient_unit(five_tech):
    x, y = unit(five_tech, "C")
    assert five_tech.weak_gap(x, y) == pytest.approx(0.0, abs=1e-9)


def test_weak_gap_toy_hand_value():
    # single observed unit (1, 1), no trade-offs; from (2, 1) the best
    # uniform move solves 1 + phi <= lam <= 2 - phi, i.e. phi = 1/2
    tech = Technology(Dataset.from_rows([[1.0]], [[1.0]]))
    assert tech.weak_gap([2.0], [1.0]) == pytest.approx(0.5, abs=1e-9)


def test_strong_gap_examples(five_tech):
    x_e, y_e = unit(five_tech, "E")
    assert five_tech.strong_gap(x_e, y_e) == pytest.approx(0.0, abs=1e-8)
    x_d, y_d = unit(five_tech, "D")
    assert five_tech.strong_gap(x_d, y_d) > 1e-6


def test_classify(five_tech):
    x_c, y_c = unit(five_tech, "C")
    assert five_tech.classify(x_c, y_c).label is FrontierLabel.STRONGLY_EFFICIENT
    interior = five_tech.classify(x_c + 1.0, y_c - 0.1)
    assert interior.label is FrontierLabel.INTERIOR
    outside = five_tech.classify([0.0, 0.0], [1e6, 1e6])
    assert outside.label is FrontierLabel.OUTSIDE


def test_classify_never_weak_only_under_regularity(eight_tech):
    rng = np.random.default_rng(5)
    X, Y = eight_tech.dataset.inputs, eight_tech.dataset.outputs
    for _ in range(25):
        lam = rng.exponential(size=eight_tech.n)
        lam /= lam.sum()
        x = X @ lam + rng.uniform(0, 2, size=2)
        y = (Y @ lam) * rng.uniform(0.3, 1.0)
        label = eight_tech.classify(x, y).label
        assert label is not FrontierLabel.WEAKLY_EFFICIENT_ONLY


def test_max_contraction_zero_input_unit(eight_tech):
    x, y = unit(eight_tech, "G")
    assert eight_tech.max_contraction(x, y, 1) == pytest.approx(0.8875, abs=1e-9)
    with pytest.raises(ValueError):
        eight_tech.max_contraction(x, y, 0)  # zero input coordinate


def test_max_expansion_table_value(eight_tech):
    x, y = unit(eight_tech, "F")
    assert eight_tech.max_expansion(x, y, 1) == pytest.approx(15.75, abs=1e-8)


def test_max_contraction_table_value(eight_tech):
    x, y = unit(eight_tech, "B")
    assert eight_tech.max_contraction(x, y, 1) == pytest.approx(1.075, abs=1e-9)


def test_max_shift_zero_on_strongly_efficient(five_tech):
    x, y = unit(five_tech, "C")
    for i in range(2):
        assert five_tech.max_contraction(x, y, i) == pytest.approx(0.0, abs=1e-9)
    for r in range(2):
        assert five_tech.max_expansion(x, y, r) == pytest.approx(0.0, abs=1e-9)


def test_max_shift_toy_value():
    tech = Technology(Dataset.from_rows([[2.0], [1.0]], [[1.0], [1.0]]))
    assert tech.max_contraction([2.0], [1.0], 0) == pytest.approx(0.5, abs=1e-12)


def test_max_shift_outside_point_rejected(five_tech):
    with pytest.raises(NotInTechnology):
        five_tech.max_contraction([0.1, 0.1], [100.0, 100.0], 0)


def test_tradeoff_closure(five_tech):
    rng = np.random.default_rng(1)
    P = five_tech.ar.input_tradeoffs
    Q = five_tech.ar.output_tradeoffs
    for j in range(five_tech.n):
        x, y = five_tech.dataset.unit(j)
        a = rng.uniform(0, 2, size=P.shape[1])
        c = rng.uniform(0, 2, size=Q.shape[1])
        assert five_tech.contains(x - P @ a, y + Q @ c)


def test_strong_frontier_within_weak(five_tech):
    # every point with zero total slack also has zero uniform gap
    for j in range(five_tech.n):
        x, y = five_tech.dataset.unit(j)
        if five_tech.strong_gap(x, y) <= 1e-8:
            assert five_tech.weak_gap(x, y) <= 1e-8


def test_monotone_classification(five_tech):
    # worsening a member strictly in one coordinate cannot stay strongly
    # efficient
    for j in range(five_tech.n):
        x, y = five_tech.dataset.unit(j)
        worse = five_tech.classify(x + np.array([0.5, 0.0]), y)
        assert worse.label is not FrontierLabel.STRONGLY_EFFICIENT


def test_ar_row_mismatch_rejected(five_dataset):
    bad = AssuranceRegion(input_tradeoffs=np.zeros((3, 0)),
                          output_tradeoffs=np.zeros((2, 0)))
    with pytest.raises(ValueError):
        Technology(five_dataset, bad)


def test_weak_gap_equals_normalized_multiplier_dual(five_tech):
    # the uniform-improvement value must equal the minimum of v@x - u@y
    # over unit-feasible, region-feasible, normalized weights
    from ardea.lp import LinearProgram, LpStatus, solve

    X, Y = five_tech.dataset.inputs, five_tech.dataset.outputs
    P, Q = five_tech.ar.input_tradeoffs, five_tech.ar.output_tradeoffs
    m, s, n = five_tech.m, five_tech.s, five_tech.n

    def dual_value(x, y):
        rows = [np.concatenate([X[:, j], -Y[:, j]]) for j in range(n)]
        rels = [">="] * n
        rhs = [0.0] * n
        for col in P.T:
            rows.append(np.concatenate([col, np.zeros(s)]))
            rels.append("<=")
            rhs.append(0.0)
        for col in Q.T:
            rows.append(np.concatenate([np.zeros(m), col]))
            rels.append("<=")
            rhs.append(0.0)
        rows.append(np.ones(m + s))
        rels.append("=")
        rhs.append(1.0)
        sol = solve(LinearProgram(sense="min", c=np.concatenate([x, -y]),
                                  A=np.vstack(rows), relations=tuple(rels),
                                  b=np.array(rhs)))
        assert sol.status is LpStatus.OPTIMAL
        return sol.objective

    for name in ("A", "B", "C"):
        x, y = unit(five_tech, name)
        assert five_tech.weak_gap(x, y) == pytest.approx(dual_value(x, y),
                                                         abs=1e-7)


def test_solver_verbose_smoke(capsys):
    from ardea.lp import LinearProgram, solve

    lp = LinearProgram(sense="max", c=[1.0, 2.0], A=[[1.0, 1.0]],
                       relations=["<="], b=[1.0])
    solve(lp, verbose=True)
    assert "pivot" in capsys.readouterr().out
