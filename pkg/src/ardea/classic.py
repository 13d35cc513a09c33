"""Classic slacks-based efficiency measures under an assurance region.

Two models share the slack feasible set (intensities plus trade-off
directions reproducing the assessed point up to slacks):

* the ratio model, average input retention over average output growth,
  solved exactly by a pair of LPs (a direct multiplier LP and the
  Charnes-Cooper linearization of the ratio form), and
* the product model, input retention times the mean reciprocal output
  growth, a nonconvex minimization handled by multi-start coordinate
  descent -- its reports are tagged non-certified.

Scores can legitimately be negative here; they are reported as-is with a
warning note.  Both models require strictly positive data for the
assessed point; the zero-tolerant variants live in :mod:`ardea.closest`.
"""

from __future__ import annotations

import numpy as np

from .lp import EQUAL, GREATER, LESS, LinearProgram, LpStatus, solve
from .report import DualWeights, EfficiencyReport, ProfileCheck, SlackProfile
from .technology import Technology, _as_vector

AGREEMENT_TOL = 1e-6


def _check_positive(z, name):
    if (np.asarray(z) <= 0).any():
        raise ValueError(f"{name} must be strictly positive for the classic "
                         "measures; use the max variants for zero data")


def input_retention(d_minus, x) -> float:
    """One minus the average input slack rate: equals 1 iff no slack."""
    d_minus = np.asarray(d_minus, dtype=float)
    x = np.asarray(x, dtype=float)
    _check_positive(x, "inputs")
    if (d_minus < 0).any():
        raise ValueError("slacks must be nonnegative")
    return float(1.0 - np.mean(d_minus / x))


def inverse_mean_output_growth(d_plus, y) -> float:
    """Reciprocal of the arithmetic mean of the output growth factors."""
    d_plus = np.asarray(d_plus, dtype=float)
    y = np.asarray(y, dtype=float)
    _check_positive(y, "outputs")
    if (d_plus < 0).any():
        raise ValueError("slacks must be nonnegative")
    return float(len(y) / np.sum(1.0 + d_plus / y))


def mean_inverse_output_growth(d_plus, y) -> float:
    """Arithmetic mean of the reciprocal output growth factors.

    Always at least :func:`inverse_mean_output_growth` (AM-HM), with
    equality iff all growth rates agree.
    """
    d_plus = np.asarray(d_plus, dtype=float)
    y = np.asarray(y, dtype=float)
    _check_positive(y, "outputs")
    if (d_plus < 0).any():
        raise ValueError("slacks must be nonnegative")
    return float(np.mean(1.0 / (1.0 + d_plus / y)))


def _objective(model: str, profile: SlackProfile, x, y) -> float:
    g = input_retention(profile.input_slacks, x)
    if model == "sbm-ar":
        return g * inverse_mean_output_growth(profile.output_slacks, y)
    if model == "brwz-ar":
        return g * mean_inverse_output_growth(profile.output_slacks, y)
    raise ValueError(f"unknown model {model!r}")


# -- slack feasibility ---------------------------------------------------------


def _slack_lp(tech: Technology, x, y, *, fixed_dplus=None, c=None, sense="min"):
    """LP over (lam, a, b, d-, [d+]) meeting the slack equalities at (x, y)."""
    X, Y = tech.dataset.inputs, tech.dataset.outputs
    P, Q = tech.ar.input_tradeoffs, tech.ar.output_tradeoffs
    m, s, n = tech.m, tech.s, tech.n
    p, q = P.shape[1], Q.shape[1]
    with_dplus = fixed_dplus is None
    cols = n + p + q + m + (s if with_dplus else 0)
    A = np.zeros((m + s, cols))
    A[:m, :n] = X
    A[:m, n:n + p] = -P
    A[:m, n + p + q:n + p + q + m] = np.eye(m)
    A[m:, :n] = Y
    A[m:, n + p:n + p + q] = Q
    if with_dplus:
        A[m:, n + p + q + m:] = -np.eye(s)
        b = np.concatenate([x, y])
    else:
        b = np.concatenate([x, y + np.asarray(fixed_dplus, dtype=float)])
    if c is None:
        c = np.zeros(cols)
    return LinearProgram(sense=sense, c=c, A=A, relations=(EQUAL,) * (m + s), b=b)


def _unpack(tech, z, *, fixed_dplus=None) -> SlackProfile:
    n, p, q, m, s = tech.n, tech.ar.input_tradeoffs.shape[1], \
        tech.ar.output_tradeoffs.shape[1], tech.m, tech.s
    d_plus = z[n + p + q + m:n + p + q + m + s] if fixed_dplus is None \
        else np.asarray(fixed_dplus, dtype=float)
    return SlackProfile(
        input_slacks=np.maximum(z[n + p + q:n + p + q + m], 0.0),
        output_slacks=np.maximum(d_plus, 0.0),
        intensities=z[:n],
        input_tradeoff_weights=z[n:n + p],
        output_tradeoff_weights=z[n + p:n + p + q])


# -- ratio model ---------------------------------------------------------------


def _solve_multiplier_side(tech, x, y):
    """Direct multiplier LP; optimal value is the ratio-model score."""
    X, Y = tech.dataset.inputs, tech.dataset.outputs
    P, Q = tech.ar.input_tradeoffs, tech.ar.output_tradeoffs
    m, s, n = tech.m, tech.s, tech.n
    rows = []
    rels = []
    rhs = []
    # unit feasibility: u y_j - v x_j <= 0
    for j in range(n):
        rows.append(np.concatenate([-X[:, j], Y[:, j]]))
        rels.append(LESS)
        rhs.append(0.0)
    # input-weight floors v_i >= 1 / (m x_i)
    for i in range(m):
        row = np.zeros(m + s)
        row[i] = 1.0
        rows.append(row)
        rels.append(GREATER)
        rhs.append(1.0 / (m * x[i]))
    # output-weight floors, linearized: v x - u y + s y_r u_r >= 1
    for r in range(s):
        row = np.concatenate([x, -y])
        row[m + r] += s * y[r]
        rows.append(row)
        rels.append(GREATER)
        rhs.append(1.0)
    for col in P.T:
        rows.append(np.concatenate([col, np.zeros(s)]))
        rels.append(LESS)
        rhs.append(0.0)
    for col in Q.T:
        rows.append(np.concatenate([np.zeros(m), col]))
        rels.append(LESS)
        rhs.append(0.0)
    lp = LinearProgram(sense="max", c=np.concatenate([-x, y]),
                       A=np.vstack(rows), relations=tuple(rels),
                       b=np.array(rhs))
    sol = solve(lp)
    if sol.status is not LpStatus.OPTIMAL:
        raise RuntimeError(f"multiplier problem ended {sol.status.value}")
    score = float(sol.objective) + 1.0
    return score, DualWeights(input_weights=sol.x[:m], output_weights=sol.x[m:])


def _solve_envelopment_side(tech, x, y):
    """Charnes-Cooper linearization of the ratio form.

    Variables [t, lam, a, b, D-, D+], all scaled by t; the growth
    denominator is normalized to one, every technology row is
    homogeneous in t.
    """
    X, Y = tech.dataset.inputs, tech.dataset.outputs
    P, Q = tech.ar.input_tradeoffs, tech.ar.output_tradeoffs
    m, s, n = tech.m, tech.s, tech.n
    p, q = P.shape[1], Q.shape[1]
    cols = 1 + n + p + q + m + s
    A = np.zeros((1 + m + s, cols))
    b = np.zeros(1 + m + s)
    # normalization: t + (1/s) sum D+_r / y_r = 1
    A[0, 0] = 1.0
    A[0, 1 + n + p + q + m:] = 1.0 / (s * y)
    b[0] = 1.0
    A[1:1 + m, 0] = -x
    A[1:1 + m, 1:1 + n] = X
    A[1:1 + m, 1 + n:1 + n + p] = -P
    A[1:1 + m, 1 + n + p + q:1 + n + p + q + m] = np.eye(m)
    A[1 + m:, 0] = -y
    A[1 + m:, 1:1 + n] = Y
    A[1 + m:, 1 + n + p:1 + n + p + q] = Q
    A[1 + m:, 1 + n + p + q + m:] = -np.eye(s)
    c = np.zeros(cols)
    c[0] = 1.0
    c[1 + n + p + q:1 + n + p + q + m] = -1.0 / (m * x)
    lp = LinearProgram(sense="min", c=c, A=A,
                       relations=(EQUAL,) * (1 + m + s), b=b)
    sol = solve(lp)
    if sol.status is not LpStatus.OPTIMAL:
        raise RuntimeError(f"envelopment problem ended {sol.status.value}")
    t = sol.x[0]
    if t <= 1e-9:
        raise RuntimeError("ratio linearization degenerated (t ~ 0)")
    profile = _unpack(tech, sol.x[1:] / t)
    return float(sol.objective), profile


def sbm_ar(tech: Technology, x, y) -> EfficiencyReport:
    """Ratio-model score via two independent LPs that must agree.

    The multiplier side supplies the weights, the envelopment side the
    slack profile and projection.  Disagreement beyond ``AGREEMENT_TOL``
    raises.
    """
    x = _as_vector(x, tech.m, "x")
    y = _as_vector(y, tech.s, "y")
    _check_positive(x, "inputs")
    _check_positive(y, "outputs")
    score_w, weights = _solve_multiplier_side(tech, x, y)
    score_e, profile = _solve_envelopment_side(tech, x, y)
    if abs(score_w - score_e) > AGREEMENT_TOL:
        raise RuntimeError(f"multiplier/envelopment disagreement: "
                           f"{score_w!r} vs {score_e!r}")
    notes = ()
    if score_e < 0:
        notes = ("negative score: average slack exceeds the input scale",)
    return EfficiencyReport(
        model="sbm-ar", score=score_e, inputs=x, outputs=y,
        projected_inputs=x - profile.input_slacks,
        projected_outputs=y + profile.output_slacks,
        slacks=profile, weights=weights, notes=notes)


# -- product model -------------------------------------------------------------


def _best_retention(tech, x, y, fixed_dplus):
    """Minimize input retention at a fixed output-slack vector (one LP)."""
    m = tech.m
    n, p, q = tech.n, tech.ar.input_tradeoffs.shape[1], \
        tech.ar.output_tradeoffs.shape[1]
    c = np.zeros(n + p + q + m)
    c[n + p + q:] = -1.0 / (m * x)  # minimize retention = maximize slack rate
    lp = _slack_lp(tech, x, y, fixed_dplus=fixed_dplus, c=c, sense="min")
    sol = solve(lp)
    if sol.status is not LpStatus.OPTIMAL:
        return None
    profile = _unpack(tech, sol.x, fixed_dplus=fixed_dplus)
    return 1.0 + float(sol.objective), profile


def _max_output_slack(tech, x, y, fixed_dplus, r):
    """Largest feasible value of output slack ``r`` holding the others."""
    m, s = tech.m, tech.s
    n, p, q = tech.n, tech.ar.input_tradeoffs.shape[1], \
        tech.ar.output_tradeoffs.shape[1]
    X, Y = tech.dataset.inputs, tech.dataset.outputs
    P, Q = tech.ar.input_tradeoffs, tech.ar.output_tradeoffs
    # variables [lam, a, b, d-, tau]; output row r carries -tau
    cols = n + p + q + m + 1
    A = np.zeros((m + s, cols))
    A[:m, :n] = X
    A[:m, n:n + p] = -P
    A[:m, n + p + q:n + p + q + m] = np.eye(m)
    A[m:, :n] = Y
    A[m:, n + p:n + p + q] = Q
    A[m + r, -1] = -1.0
    other = np.asarray(fixed_dplus, dtype=float).copy()
    other[r] = 0.0
    b = np.concatenate([x, y + other])
    c = np.zeros(cols)
    c[-1] = 1.0
    sol = solve(LinearProgram(sense="max", c=c, A=A,
                              relations=(EQUAL,) * (m + s), b=b))
    if sol.status is LpStatus.UNBOUNDED:
        return np.inf
    if sol.status is not LpStatus.OPTIMAL:
        return None
    return max(float(sol.objective), 0.0)


def _golden_minimize(f, lo, hi, *, iters=36, width_tol=1e-10):
    inv_phi = (np.sqrt(5.0) - 1.0) / 2.0
    a, b = lo, hi
    c1 = b - inv_phi * (b - a)
    c2 = a + inv_phi * (b - a)
    f1, f2 = f(c1), f(c2)
    for _ in range(iters):
        if b - a < width_tol * (1.0 + abs(a) + abs(b)):
            break
        if f1 <= f2:
            b, c2, f2 = c2, c1, f1
            c1 = b - inv_phi * (b - a)
            f1 = f(c1)
        else:
            a, c1, f1 = c1, c2, f2
            c2 = a + inv_phi * (b - a)
            f2 = f(c2)
    return (c1, f1) if f1 <= f2 else (c2, f2)


def brwz_ar(tech: Technology, x, y, *, grid: int = 13,
            sweep_tol: float = 1e-10, max_sweeps: int = 500) -> EfficiencyReport:
    """Product-model score by multi-start coordinate descent.

    For fixed output slacks the inner problem is an LP in the input
    slacks; output slacks are then improved one coordinate at a time by
    a bracketed line search.  Starts: the zero profile, the ratio-model
    optimum, and each single-output max-expansion profile.  The result
    is a best local minimum only, so the report is tagged non-certified.
    """
    x = _as_vector(x, tech.m, "x")
    y = _as_vector(y, tech.s, "y")
    _check_positive(x, "inputs")
    _check_positive(y, "outputs")
    s = tech.s

    ratio_report = sbm_ar(tech, x, y)
    starts = [np.zeros(s), ratio_report.slacks.output_slacks.copy()]
    for r in range(s):
        delta = tech.max_expansion(x, y, r)
        if np.isfinite(delta) and delta > 1e-12:
            seed = np.zeros(s)
            seed[r] = delta * y[r]
            starts.append(seed)
    uniq, seen = [], set()
    for seed in starts:
        key = tuple(np.round(seed, 12))
        if key not in seen:
            seen.add(key)
            uniq.append(seed)

    def evaluate(dplus):
        got = _best_retention(tech, x, y, dplus)
        if got is None:
            return np.inf, None
        retention, profile = got
        return retention * mean_inverse_output_growth(dplus, y), profile

    best_val, best_profile = np.inf, None
    for seed in uniq:
        dplus = seed.copy()
        val, profile = evaluate(dplus)
        if profile is None:
            continue
        for _ in range(max_sweeps):
            improved = val
            for r in range(s):
                hi = _max_output_slack(tech, x, y, dplus, r)
                if hi is None:
                    continue
                if not np.isfinite(hi):
                    hi = max(1e3 * y[r], 10.0 * (dplus[r] + 1.0))
                if hi <= 1e-12:
                    continue

                def line(tau, _r=r):
                    trial = dplus.copy()
                    trial[_r] = tau
                    return evaluate(trial)[0]

                taus = np.linspace(0.0, hi, grid)
                vals = [line(t) for t in taus]
                k = int(np.argmin(vals))
                lo_b = taus[max(k - 1, 0)]
                hi_b = taus[min(k + 1, grid - 1)]
                tau_star, v_star = _golden_minimize(line, lo_b, hi_b)
                if min(vals[k], v_star) < val - 1e-12:
                    if vals[k] <= v_star:
                        tau_star, v_star = taus[k], vals[k]
                    dplus[r] = tau_star
                    val, profile = evaluate(dplus)
            if improved - val < sweep_tol:
                break
        if val < best_val:
            best_val, best_profile = val, profile

    if best_profile is None:
        raise RuntimeError("no feasible start for the product model")
    notes = ("local search; optimum not certified",)
    if best_val < 0:
        notes += ("negative score: average slack exceeds the input scale",)
    return EfficiencyReport(
        model="brwz-ar", score=float(best_val), inputs=x, outputs=y,
        projected_inputs=x - best_profile.input_slacks,
        projected_outputs=y + best_profile.output_slacks,
        slacks=best_profile, certified=False, notes=notes)


# -- independent profile verification ------------------------------------------


def verify_profile(tech: Technology, x, y, profile: SlackProfile,
                   model: str = "sbm-ar", *, tol: float = 1e-7) -> ProfileCheck:
    """Check a supplied profile against the slack equalities directly.

    No solver involved: residuals come from plain matrix arithmetic, so
    externally reported optima can be validated independently.
    """
    x = _as_vector(x, tech.m, "x")
    y = _as_vector(y, tech.s, "y")
    X, Y = tech.dataset.inputs, tech.dataset.outputs
    P, Q = tech.ar.input_tradeoffs, tech.ar.output_tradeoffs
    lam = profile.intensities
    res_in = X @ lam - P @ profile.input_tradeoff_weights \
        + profile.input_slacks - x
    res_out = Y @ lam + Q @ profile.output_tradeoff_weights \
        - profile.output_slacks - y
    negativity = min(
        0.0,
        float(min(lam.min(initial=0.0),
                  profile.input_tradeoff_weights.min(initial=0.0),
                  profile.output_tradeoff_weights.min(initial=0.0),
                  profile.input_slacks.min(initial=0.0),
                  profile.output_slacks.min(initial=0.0))))
    residuals = {
        "input_rows": float(np.max(np.abs(res_in), initial=0.0)),
        "output_rows": float(np.max(np.abs(res_out), initial=0.0)),
        "negativity": -negativity,
    }
    feasible = all(v <= tol for v in residuals.values())
    objective = _objective(model, profile, x, y) if feasible else None
    return ProfileCheck(feasible=feasible, objective=objective,
                        residuals=residuals)
