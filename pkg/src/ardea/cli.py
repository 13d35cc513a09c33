"""Command-line front end: dataset ingestion, scoring runs, checks.

Exit codes: 0 success, 2 input error, 3 assurance-region regularity
failure while a closest-target model was requested, 4 solver failure or
refused score, 5 property-suite failure.
"""

from __future__ import annotations

import csv
import json
import sys
from concurrent.futures import ThreadPoolExecutor

import click
import numpy as np

from . import classic, closest
from .ar import AssuranceRegion, RatioBounds
from .axioms import run_axiom_suite
from .lp import NumericalBreakdown
from .technology import Dataset, Technology

EXIT_INPUT = 2
EXIT_ASSUMPTIONS = 3
EXIT_SOLVER = 4
EXIT_PROPERTIES = 5

MODEL_FUNS = {
    "sbm-ar": classic.sbm_ar,
    "brwz-ar": classic.brwz_ar,
    "max-sbm-ar": closest.max_sbm_ar,
    "max-brwz-ar": closest.max_brwz_ar,
}
MAX_MODELS = ("max-sbm-ar", "max-brwz-ar")


class InputError(click.ClickException):
    exit_code = EXIT_INPUT


# -- ingestion -------------------------------------------------------------


def read_dataset(path) -> Dataset:
    """Load a CSV whose header is ``dmu`` followed by ``in:``/``out:``
    prefixed column names; zeros are legal, negatives are not."""
    try:
        with open(path, newline="") as fh:
            rows = [row for row in csv.reader(fh) if row and any(row)]
    except OSError as exc:
        raise InputError(f"cannot read dataset: {exc}") from exc
    if not rows:
        raise InputError(f"{path}: empty dataset file")
    header = [h.strip() for h in rows[0]]
    if not header or header[0].lower() != "dmu":
        raise InputError(f"{path}: first header column must be 'dmu'")
    in_cols = [k for k, h in enumerate(header) if h.startswith("in:")]
    out_cols = [k for k, h in enumerate(header) if h.startswith("out:")]
    if not in_cols or not out_cols:
        raise InputError(f"{path}: need at least one 'in:' and one 'out:' column")
    names, input_rows, output_rows = [], [], []
    for lineno, row in enumerate(rows[1:], start=2):
        if len(row) != len(header):
            raise InputError(f"{path}:{lineno}: expected {len(header)} cells")
        names.append(row[0].strip())
        values = {}
        for k in in_cols + out_cols:
            try:
                v = float(row[k])
            except ValueError as exc:
                raise InputError(
                    f"{path}:{lineno}: column '{header[k]}' is not a number") from exc
            if not np.isfinite(v) or v < 0:
                raise InputError(
                    f"{path}:{lineno}: column '{header[k]}' must be a "
                    f"finite nonnegative number, got {row[k]}")
            values[k] = v
        input_rows.append([values[k] for k in in_cols])
        output_rows.append([values[k] for k in out_cols])
    try:
        return Dataset.from_rows(
            input_rows, output_rows, names=tuple(names),
            input_names=tuple(header[k][3:] or header[k] for k in in_cols),
            output_names=tuple(header[k][4:] or header[k] for k in out_cols))
    except ValueError as exc:
        raise InputError(f"{path}: {exc}") from exc


def _load_config(path) -> dict:
    try:
        with open(path) as fh:
            cfg = json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read config: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: malformed JSON ({exc})") from exc
    if not isinstance(cfg, dict):
        raise InputError(f"{path}: config must be a JSON object")
    return cfg


def region_from_config(cfg: dict, m: int | None = None,
                       s: int | None = None) -> AssuranceRegion:
    """Build the assurance region from ratio bounds or explicit matrices."""
    explicit = "input_tradeoffs" in cfg or "output_tradeoffs" in cfg
    bounded = "input_bounds" in cfg or "output_bounds" in cfg
    if explicit and bounded:
        raise InputError("config mixes ratio bounds with explicit matrices")
    try:
        if explicit:
            P = np.atleast_2d(np.asarray(cfg.get("input_tradeoffs", []), dtype=float))
            Q = np.atleast_2d(np.asarray(cfg.get("output_tradeoffs", []), dtype=float))
            if P.size == 0:
                P = np.zeros((m if m is not None else Q.shape[0], 0))
            if Q.size == 0:
                Q = np.zeros((s if s is not None else P.shape[0], 0))
            return AssuranceRegion(input_tradeoffs=P, output_tradeoffs=Q)
        in_bounds = tuple(tuple(b) for b in cfg.get("input_bounds", []))
        out_bounds = tuple(tuple(b) for b in cfg.get("output_bounds", []))
        m = m if m is not None else (len(in_bounds) + 1 if in_bounds else None)
        s = s if s is not None else (len(out_bounds) + 1 if out_bounds else None)
        if m is None or s is None:
            raise InputError("cannot infer dimensions from the config alone; "
                             "pass --data or use explicit matrices")
        if in_bounds and len(in_bounds) != m - 1:
            raise InputError(f"expected {m - 1} input bound pairs, got {len(in_bounds)}")
        if out_bounds and len(out_bounds) != s - 1:
            raise InputError(f"expected {s - 1} output bound pairs, got {len(out_bounds)}")
        from .ar import build_input_tradeoffs, build_output_tradeoffs

        P = (build_input_tradeoffs(RatioBounds(inputs=in_bounds), m)
             if in_bounds else np.zeros((m, 0)))
        Q = (build_output_tradeoffs(RatioBounds(outputs=out_bounds), s)
             if out_bounds else np.zeros((s, 0)))
        source = "ratio-bounds" if (in_bounds or out_bounds) else "empty"
        return AssuranceRegion(input_tradeoffs=P, output_tradeoffs=Q,
                               source=source)
    except ValueError as exc:
        raise InputError(f"invalid assurance-region config: {exc}") from exc


def build_technology(data_path, config_path) -> Technology:
    dataset = read_dataset(data_path)
    cfg = _load_config(config_path)
    region = region_from_config(cfg, m=dataset.n_inputs, s=dataset.n_outputs)
    tol = float(cfg.get("tolerances", {}).get("frontier", 1e-7))
    return Technology(dataset, region, tol=tol)


# -- scoring ---------------------------------------------------------------


def score_dataset(tech: Technology, models, jobs: int = 1):
    """Score every unit under every model; results ordered by unit index.

    Returns (records, refused) where each record is either a report or an
    error entry for that unit/model.
    """
    def one(j):
        x, y = tech.dataset.unit(j)
        out = {}
        for model in models:
            try:
                out[model] = MODEL_FUNS[model](tech, x, y)
            except (ValueError, closest.UnboundedDistance,
                    NumericalBreakdown, RuntimeError) as exc:
                out[model] = exc
        return out

    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            per_unit = list(pool.map(one, range(tech.n)))
    else:
        per_unit = [one(j) for j in range(tech.n)]
    refused = any(not hasattr(r, "score") for unit in per_unit
                  for r in unit.values())
    return per_unit, refused


def _fmt(value) -> str:
    return f"{value:.3f}"


def render_table(tech, models, per_unit) -> str:
    lines = []
    kinds = [f"in:{n}" for n in tech.dataset.input_names] + \
            [f"out:{n}" for n in tech.dataset.output_names]
    for j, results in enumerate(per_unit):
        lines.append(f"DMU {tech.dataset.names[j]}")
        for model in models:
            rep = results[model]
            if not hasattr(rep, "score"):
                lines.append(f"  {model:<14} refused: {rep}")
                continue
            tag = "" if rep.certified else "  [non-certified]"
            lines.append(f"  {model:<14} score={rep.score:.3f}{tag}")
            lines.append(f"    {'coord':<8}{'data':>10}{'projection':>12}"
                         f"{'diff':>10}{'rate':>10}")
            data = np.concatenate([rep.inputs, rep.outputs])
            proj = np.concatenate([rep.projected_inputs, rep.projected_outputs])
            diffs = np.concatenate([rep.input_diffs, rep.output_diffs])
            rates = list(rep.input_rates) + list(rep.output_rates)
            for k, kind in enumerate(kinds):
                # a rate is undefined on zero data; print the diff there
                rate = rates[k] if rates[k] is not None else diffs[k]
                lines.append(f"    {kind:<8}{_fmt(data[k]):>10}"
                             f"{_fmt(proj[k]):>12}{_fmt(diffs[k]):>10}"
                             f"{_fmt(rate):>10}")
        lines.append("")
    return "\n".join(lines)


def results_payload(tech, models, per_unit) -> dict:
    report = tech.assumptions
    units = []
    for j, results in enumerate(per_unit):
        entry = {"name": tech.dataset.names[j], "scores": {}}
        for model in models:
            rep = results[model]
            entry["scores"][model] = (rep.to_dict() if hasattr(rep, "score")
                                      else {"error": str(rep)})
        units.append(entry)
    return {
        "models": list(models),
        "assumptions": {
            "input_regular": report.input_regular,
            "output_regular": report.output_regular,
            "input_minima": [None if v is None else float(v)
                             for v in report.input_minima],
            "output_minima": [None if v is None else float(v)
                              for v in report.output_minima],
        },
        "units": units,
    }


def render_csv(tech, models, per_unit) -> str:
    out = ["dmu,model,score,coord,data,projection,diff,rate"]
    kinds = [f"in:{n}" for n in tech.dataset.input_names] + \
            [f"out:{n}" for n in tech.dataset.output_names]
    for j, results in enumerate(per_unit):
        name = tech.dataset.names[j]
        for model in models:
            rep = results[model]
            if not hasattr(rep, "score"):
                out.append(f"{name},{model},,,,,,")
                continue
            data = np.concatenate([rep.inputs, rep.outputs])
            proj = np.concatenate([rep.projected_inputs, rep.projected_outputs])
            diffs = np.concatenate([rep.input_diffs, rep.output_diffs])
            rates = list(rep.input_rates) + list(rep.output_rates)
            for k, kind in enumerate(kinds):
                rate = "" if rates[k] is None else repr(float(rates[k]))
                out.append(f"{name},{model},{float(rep.score)!r},{kind},"
                           f"{float(data[k])!r},{float(proj[k])!r},"
                           f"{float(diffs[k])!r},{rate}")
    return "\n".join(out) + "\n"


# -- commands ----------------------------------------------------------------


@click.group()
def main():
    """Efficiency scoring over assurance-region DEA technologies."""


@main.command("score")
@click.option("--data", "data_path", required=True,
              type=click.Path(exists=True, dir_okay=False))
@click.option("--config", "config_path", required=True,
              type=click.Path(exists=True, dir_okay=False))
@click.option("--models", default="max-sbm-ar,max-brwz-ar", show_default=True,
              help="comma-separated subset of: " + ",".join(MODEL_FUNS))
@click.option("--format", "fmt", default="table", show_default=True,
              type=click.Choice(["table", "json", "csv"]))
@click.option("--jobs", default=1, show_default=True, type=click.IntRange(1, 64))
@click.pass_context
def score_cmd(ctx, data_path, config_path, models, fmt, jobs):
    """Score every unit in the dataset under the selected models."""
    models = tuple(m.strip() for m in models.split(",") if m.strip())
    unknown = [m for m in models if m not in MODEL_FUNS]
    if unknown or not models:
        raise InputError(f"unknown models: {', '.join(unknown) or '(none)'}")
    tech = build_technology(data_path, config_path)
    report = tech.assumptions
    if not report.ok:
        wanted_max = [m for m in models if m in MAX_MODELS]
        if wanted_max:
            click.echo("assurance-region regularity failed; the requested "
                       f"models {', '.join(wanted_max)} are not valid", err=True)
            ctx.exit(EXIT_ASSUMPTIONS)
        click.echo("warning: assurance-region regularity failed; classic "
                   "scores remain defined but frontier guarantees do not hold",
                   err=True)
    try:
        per_unit, refused = score_dataset(tech, models, jobs=jobs)
    except NumericalBreakdown as exc:
        click.echo(f"solver failure: {exc}", err=True)
        ctx.exit(EXIT_SOLVER)
    if fmt == "table":
        click.echo(render_table(tech, models, per_unit))
    elif fmt == "json":
        click.echo(json.dumps(results_payload(tech, models, per_unit), indent=2))
    else:
        click.echo(render_csv(tech, models, per_unit), nl=False)
    if refused:
        click.echo("one or more scores were refused", err=True)
        ctx.exit(EXIT_SOLVER)


@main.command("check-ar")
@click.option("--config", "config_path", required=True,
              type=click.Path(exists=True, dir_okay=False))
@click.option("--data", "data_path", default=None,
              type=click.Path(exists=True, dir_okay=False),
              help="optional dataset used to size an empty region")
@click.pass_context
def check_ar_cmd(ctx, config_path, data_path):
    """Check the weight-regularity assumptions of the region."""
    cfg = _load_config(config_path)
    m = s = None
    if data_path:
        ds = read_dataset(data_path)
        m, s = ds.n_inputs, ds.n_outputs
    region = region_from_config(cfg, m=m, s=s)
    from .ar import check_assumptions
    tol = float(cfg.get("tolerances", {}).get("regularity", 1e-9))
    report = check_assumptions(region, tol=tol)
    fmt_min = lambda v: "infeasible" if v is None else f"{v:.6g}"
    click.echo("input weight minima:  "
               + ", ".join(fmt_min(v) for v in report.input_minima))
    click.echo("output weight minima: "
               + ", ".join(fmt_min(v) for v in report.output_minima))
    click.echo(f"input side regular:  {'yes' if report.input_regular else 'NO'}")
    click.echo(f"output side regular: {'yes' if report.output_regular else 'NO'}")
    if not report.ok:
        ctx.exit(EXIT_ASSUMPTIONS)


@main.command("verify")
@click.option("--data", "data_path", required=True,
              type=click.Path(exists=True, dir_okay=False))
@click.option("--config", "config_path", required=True,
              type=click.Path(exists=True, dir_okay=False))
@click.option("--seed", default=None, type=int,
              help="random seed (default: config 'seed' or 0)")
@click.option("--samples", default=200, show_default=True,
              type=click.IntRange(1, 100_000))
@click.option("--json-out", "json_out", default=None,
              type=click.Path(dir_okay=False, writable=True),
              help="also write the machine-readable report here")
@click.pass_context
def verify_cmd(ctx, data_path, config_path, seed, samples, json_out):
    """Run the property suite against the dataset's technology."""
    cfg = _load_config(config_path)
    if seed is None:
        seed = int(cfg.get("seed", 0))
    tech = build_technology(data_path, config_path)
    if not tech.assumptions.ok:
        click.echo("assurance-region regularity failed; property suite "
                   "requires a regular region", err=True)
        ctx.exit(EXIT_ASSUMPTIONS)
    try:
        result = run_axiom_suite(tech, seed=seed, samples=samples)
    except NumericalBreakdown as exc:
        click.echo(f"solver failure: {exc}", err=True)
        ctx.exit(EXIT_SOLVER)
    for rep in result.reports:
        status = "pass" if rep.ok else "FAIL"
        claim = "" if rep.claimed else " (not claimed)"
        click.echo(f"[{status}] {rep.property_id}{claim}: "
                   f"{rep.tested} checked, {len(rep.failures)} failures")
        for note in rep.info:
            click.echo(f"       note: {note}")
        for witness in rep.failures[:5]:
            click.echo(f"       witness: {json.dumps(witness)}")
    if json_out:
        with open(json_out, "w") as fh:
            json.dump(result.to_dict(), fh, indent=2)
    if not result.ok:
        ctx.exit(EXIT_PROPERTIES)


if __name__ == "__main__":
    main()
