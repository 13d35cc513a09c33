"""Closest-target efficiency measures computed from per-coordinate probes.

Instead of minimizing over the whole technology, these variants maximize
the classic objectives over the strong frontier.  Their optima reduce to
closed forms in two least-distance quantities: the smallest
max-contraction ratio over inputs and the smallest max-expansion ratio
over outputs, each obtained from one univariate LP per coordinate.  The
same formulas cover zero coordinates by probing only the supports while
still averaging over the full input/output counts, so no data
transformation is needed, and the scores stay in (0, 1].
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .report import EfficiencyReport
from .technology import NotInTechnology, Technology, _as_vector

BRANCH_TIE_TOL = 1e-9


class UnboundedDistance(RuntimeError):
    """Every probe on one side receded; the score is refused."""


def support(z) -> np.ndarray:
    """Indices of strictly positive coordinates (exact comparison)."""
    z = np.asarray(z, dtype=float)
    if (z < 0).any():
        raise ValueError("support is defined for nonnegative vectors")
    return np.flatnonzero(z > 0)


def natural_input_retention(delta_minus, input_support, m: int) -> float:
    """Input retention from ratios, summed over the support, averaged
    over all ``m`` inputs."""
    delta_minus = np.asarray(delta_minus, dtype=float)
    return float(1.0 - delta_minus[input_support].sum() / m)


def natural_inverse_mean_output_growth(delta_plus, output_support, s: int) -> float:
    delta_plus = np.asarray(delta_plus, dtype=float)
    return float(s / (s + delta_plus[output_support].sum()))


def natural_mean_inverse_output_growth(delta_plus, output_support, s: int) -> float:
    delta_plus = np.asarray(delta_plus, dtype=float)
    inv = (1.0 / (1.0 + delta_plus[output_support])).sum()
    return float(inv / s + 1.0 - len(output_support) / s)


@dataclass(frozen=True)
class DistanceProfile:
    """Per-coordinate max-shift ratios and their minima.

    Ratios are NaN off the support and ``inf`` where the technology
    recedes; the minima ignore non-finite entries.
    """

    input_ratios: np.ndarray
    output_ratios: np.ndarray
    input_support: np.ndarray
    output_support: np.ndarray
    warnings: tuple[str, ...] = ()

    def _min(self, ratios, support) -> tuple[float, int | None]:
        finite = [(ratios[i], i) for i in support if math.isfinite(ratios[i])]
        if not finite:
            return math.inf, None
        val = min(v for v, _ in finite)
        idx = min(i for v, i in finite if v <= val)
        return float(val), int(idx)

    @property
    def input_distance(self) -> float:
        return self._min(self.input_ratios, self.input_support)[0]

    @property
    def output_distance(self) -> float:
        return self._min(self.output_ratios, self.output_support)[0]

    @property
    def argmin_input(self) -> int | None:
        return self._min(self.input_ratios, self.input_support)[1]

    @property
    def argmin_output(self) -> int | None:
        return self._min(self.output_ratios, self.output_support)[1]

    @property
    def natural(self) -> bool:
        """True when some coordinate sits off its support."""
        return (len(self.input_support) < len(self.input_ratios)
                or len(self.output_support) < len(self.output_ratios))


def distance_profile(tech: Technology, x, y) -> DistanceProfile:
    """Solve one max-shift LP per supported coordinate (at most m+s)."""
    x = _as_vector(x, tech.m, "x")
    y = _as_vector(y, tech.s, "y")
    if (x < 0).any() or (y < 0).any() or not (x > 0).any() or not (y > 0).any():
        raise ValueError("point must be nonnegative with a nonzero input "
                         "vector and a nonzero output vector")
    if not tech.contains(x, y):
        raise NotInTechnology("distance profile requires a member point")
    in_sup = support(x)
    out_sup = support(y)
    in_ratios = np.full(tech.m, np.nan)
    out_ratios = np.full(tech.s, np.nan)
    warnings = []
    for i in in_sup:
        in_ratios[i] = tech.max_contraction(x, y, int(i))
        if math.isinf(in_ratios[i]):
            warnings.append(f"input {i}: contraction unbounded; excluded from the minimum")
    for r in out_sup:
        out_ratios[r] = tech.max_expansion(x, y, int(r))
        if math.isinf(out_ratios[r]):
            warnings.append(f"output {r}: expansion unbounded; excluded from the minimum")
    return DistanceProfile(input_ratios=in_ratios, output_ratios=out_ratios,
                           input_support=in_sup, output_support=out_sup,
                           warnings=tuple(warnings))


def _score_from_profile(tech, x, y, profile, model, output_branch_value):
    d_in = profile.input_distance
    d_out = profile.output_distance
    if math.isinf(d_in) or math.isinf(d_out):
        raise UnboundedDistance(
            f"{model}: least-distance value unbounded "
            f"(inputs {d_in}, outputs {d_out}); score refused. "
            + " / ".join(profile.warnings))
    input_branch = 1.0 - d_in / tech.m
    output_branch = output_branch_value(d_out)
    candidates = []  # (value, branch, coordinate)
    for i in profile.input_support:
        v = 1.0 - profile.input_ratios[i] / tech.m
        if math.isfinite(v):
            candidates.append((v, "input", int(i)))
    for r in profile.output_support:
        v = output_branch_value(profile.output_ratios[r])
        if math.isfinite(v):
            candidates.append((v, "output", int(r)))
    score = max(input_branch, output_branch)
    near = [c for c in candidates if c[0] >= score - BRANCH_TIE_TOL]
    # deterministic winner: input branch first, then lowest coordinate
    near.sort(key=lambda c: (c[1] != "input", c[2]))
    _, branch, coord = near[0]
    multiplicity = len(near)
    proj_x, proj_y = x.copy(), y.copy()
    if branch == "input":
        proj_x[coord] = x[coord] * (1.0 - profile.input_ratios[coord])
    else:
        proj_y[coord] = y[coord] * (1.0 + profile.output_ratios[coord])
    notes = profile.warnings
    if multiplicity > 1:
        notes += (f"{multiplicity} optimal single-coordinate targets",)
    return EfficiencyReport(
        model=model, score=float(score), inputs=x, outputs=y,
        projected_inputs=proj_x, projected_outputs=proj_y,
        branch=branch, moved_coordinate=coord, multiplicity=multiplicity,
        natural=profile.natural, distances=profile, notes=notes)


def max_sbm_ar(tech: Technology, x, y,
               profile: DistanceProfile | None = None) -> EfficiencyReport:
    """Closest-target score for the ratio model.

    Equals the larger of the input branch ``1 - D_in / m`` and the
    output branch ``1 / (1 + D_out / s)``; the projection moves the
    winning branch's argmin coordinate only.  A precomputed distance
    profile for the same point may be passed to avoid repeated probes.
    """
    x = _as_vector(x, tech.m, "x")
    y = _as_vector(y, tech.s, "y")
    if not tech.assumptions.ok:
        raise RuntimeError("weight-regularity assumptions fail: the closed "
                           "forms are not available; check the region first")
    if profile is None:
        profile = distance_profile(tech, x, y)
    return _score_from_profile(tech, x, y, profile, "max-sbm-ar",
                               lambda d: 1.0 / (1.0 + d / tech.s))


def max_brwz_ar(tech: Technology, x, y,
                profile: DistanceProfile | None = None) -> EfficiencyReport:
    """Closest-target score for the product model.

    Output branch ``1 - (1/s) * D_out / (1 + D_out)``; strictly
    monotone whenever there are at least as many outputs as inputs.
    """
    x = _as_vector(x, tech.m, "x")
    y = _as_vector(y, tech.s, "y")
    if not tech.assumptions.ok:
        raise RuntimeError("weight-regularity assumptions fail: the closed "
                           "forms are not available; check the region first")
    if profile is None:
        profile = distance_profile(tech, x, y)
    return _score_from_profile(tech, x, y, profile, "max-brwz-ar",
                               lambda d: 1.0 - (d / (1.0 + d)) / tech.s)


@dataclass(frozen=True)
class ContinuityRecord:
    """Scores at shrinking perturbations of the zero coordinates."""

    epsilons: tuple[float, ...]
    ratio_scores: tuple[float, ...]
    product_scores: tuple[float, ...]
    ratio_limit: float
    product_limit: float

    @property
    def ratio_gaps(self) -> tuple[float, ...]:
        return tuple(abs(v - self.ratio_limit) for v in self.ratio_scores)

    @property
    def product_gaps(self) -> tuple[float, ...]:
        return tuple(abs(v - self.product_limit) for v in self.product_scores)


def continuity_probe(tech: Technology, x, y, epsilons) -> ContinuityRecord:
    """Evaluate both max measures at ``(x, y)`` perturbed on its zeros.

    Each epsilon is added to every zero coordinate (and only those), so
    the perturbed points are strictly positive; the scores must approach
    the zero-tolerant values computed directly at ``(x, y)``.
    """
    x = _as_vector(x, tech.m, "x")
    y = _as_vector(y, tech.s, "y")
    epsilons = tuple(float(e) for e in epsilons)
    if not epsilons or any(e <= 0 for e in epsilons):
        raise ValueError("epsilons must be positive")
    if any(b > a for a, b in zip(epsilons, epsilons[1:])):
        raise ValueError("epsilons must be non-increasing")
    zero_in = x == 0
    zero_out = y == 0
    if not zero_in.any() and not zero_out.any():
        raise ValueError("point has no zero coordinate to perturb")
    ratio_limit = max_sbm_ar(tech, x, y).score
    product_limit = max_brwz_ar(tech, x, y).score
    ratio_scores = []
    product_scores = []
    for eps in epsilons:
        xe = x + eps * zero_in
        ye = y + eps * zero_out
        ratio_scores.append(max_sbm_ar(tech, xe, ye).score)
        product_scores.append(max_brwz_ar(tech, xe, ye).score)
    return ContinuityRecord(
        epsilons=epsilons,
        ratio_scores=tuple(ratio_scores),
        product_scores=tuple(product_scores),
        ratio_limit=ratio_limit, product_limit=product_limit)
