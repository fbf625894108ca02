"""Command line entry point: estimate, simulate, roc and univariate."""

import logging
import math
import sys
from dataclasses import replace
from pathlib import Path
from typing import Any, Dict, List, Optional

import click
import numpy as np
import pandas as pd

from . import __version__
from .config import ConfigError, GsmConfig, load_config
from .io import read_dataset, write_dataset
from .manifest import SCHEMA, RunManifest
from ..evaluation.diagnostics import population_diagnostics
from ..evaluation.experiment import ExperimentSpec, build_truth, run_experiment
from ..loss import (
    AmplifierSpec,
    amplify,
    assemble,
    back_transform_estimate,
    multiplier_upper_bound,
    profile_out_eta,
    write_snapshot,
)
from ..loss.amplify import MULTIPLIER_LEVELS
from ..loss.assembly import HArg, h_label
from ..model import DomainError, ModelSpec, NumericError, parse_hspec_list, standardize
from ..reporter import CSVReporter, JSONReporter, RunReport, create_reporters
from ..sampling import GraphSpec, sample_model, trial_rng
from ..selection import select
from ..solver import (
    EstimatePath,
    SolverConfig,
    coordinate_descent,
    lambda_grid,
    lambda_max,
    solve_path,
)
from ..univariate import Target, UnivariateStudy, run_study

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DOMAIN = 2
EXIT_NUMERIC = 3


config_option = click.option(
    "--config",
    "config_path",
    type=click.Path(path_type=Path),
    default=None,
    help="YAML configuration file; explicit flags override its values",
)


def parse_mult(text: Optional[str], n: int, m: int) -> Optional[float]:
    """A real multiplier, or ``auto``/``high``/``medium``/``low`` for the bound."""
    if text is None:
        return None
    key = text.strip().lower()
    if key == "auto":
        key = "high"
    if key in MULTIPLIER_LEVELS:
        return multiplier_upper_bound(n, m, level=key)
    try:
        return float(key)
    except ValueError:
        raise click.BadParameter(
            f"expected a number or one of auto, {', '.join(MULTIPLIER_LEVELS)}; got '{text}'",
            param_hint="--mult",
        )


def parse_ratio(text: Optional[str]) -> Optional[float]:
    if text is None:
        return None
    if text.strip().lower() in ("inf", "infinity"):
        return math.inf
    try:
        return float(text)
    except ValueError:
        raise click.BadParameter(f"expected a number or inf, got '{text}'", param_hint="--lambda-ratio")


def parse_h(text: str) -> HArg:
    hs = parse_hspec_list(text)
    if not hs:
        raise DomainError(f"No h function in '{text}'")
    return hs[0] if len(hs) == 1 else hs


def parse_grid(text: str) -> List[float]:
    """``start:stop:step`` with both ends included."""
    parts = text.split(":")
    if len(parts) != 3:
        raise click.BadParameter(f"expected start:stop:step, got '{text}'", param_hint="--grid")
    try:
        start, stop, step = (float(p) for p in parts)
    except ValueError:
        raise click.BadParameter(f"grid bounds must be numbers, got '{text}'", param_hint="--grid")
    if not step > 0 or stop < start:
        raise click.BadParameter(
            f"need step > 0 and stop >= start, got '{text}'", param_hint="--grid"
        )
    count = int(math.floor((stop - start) / step + 1e-9)) + 1
    return [start + k * step for k in range(count)]


def solver_settings(
    cfg: GsmConfig, lambda_ratio: Optional[str], no_penalize_diagonal: bool
) -> SolverConfig:
    solver = cfg.solver
    ratio = parse_ratio(lambda_ratio)
    if ratio is not None:
        solver = replace(solver, lambda_ratio=ratio)
    if no_penalize_diagonal:
        solver = replace(solver, penalize_diagonal=False)
    return solver


def check_mean_flags(mu: Optional[float], mu_sd: Optional[float], eta: Optional[float]) -> None:
    if sum(v is not None for v in (mu, mu_sd, eta)) > 1:
        raise click.UsageError("--mu, --mu-sd and --eta are mutually exclusive")


def write_json(document: Dict[str, Any], path: Path, title: str) -> Path:
    report = RunReport(kind=document.get("kind", ""), title=title, document=document)
    return JSONReporter(path.parent).write_to_file(report, path.name)


@click.group()
@click.option("--verbose", "-v", is_flag=True, default=False, help="Log progress (INFO)")
@click.option("--debug", is_flag=True, default=False, help="Log solver sweeps (DEBUG)")
@click.version_option(version=__version__, prog_name="gsm")
def cli(verbose: bool, debug: bool) -> None:
    """Generalized score matching for non-negative data."""
    level = logging.DEBUG if debug else logging.INFO if verbose else logging.WARNING
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s")


@cli.command()
@click.option("--data", "data_path", required=True, type=click.Path(path_type=Path), help="CSV data file")
@click.option("--a", "a", required=True, type=float, help="Interaction exponent a > 0")
@click.option("--b", "b", required=True, type=float, help="Linear exponent b >= 0 (0 means log)")
@click.option("--centered", is_flag=True, default=False, help="Fix eta to zero")
@click.option("--h", "h", required=True, help="h function, e.g. pow:1:3, or one per column")
@click.option("--mult", default=None, help="Multiplier: a real, auto, high, medium or low")
@click.option("--profile-eta", is_flag=True, default=False, help="Profile eta out before solving")
@click.option("--lambda-ratio", default=None, help="lambda_eta / lambda_K (0 to inf)")
@click.option("--no-penalize-diagonal", is_flag=True, default=False, help="Leave K[j, j] unpenalized")
@click.option("--nlambda", type=int, default=None, help="Path length")
@click.option("--lambda-min-ratio", type=float, default=None, help="Smallest over largest lambda")
@click.option("--lambda", "lam", type=float, default=None, help="Fit a single lambda instead of a path")
@click.option("--ebic", is_flag=True, default=False, help="Select lambda by eBIC")
@click.option("--refit", is_flag=True, default=False, help="Refit each support before eBIC scoring")
@click.option("--no-scale", is_flag=True, default=False, help="Do not standardize columns")
@click.option("--dump-loss", type=click.Path(path_type=Path), default=None, help="Write a loss snapshot")
@click.option("--out", required=True, type=click.Path(path_type=Path), help="Estimate JSON file")
@config_option
def estimate(
    data_path: Path,
    a: float,
    b: float,
    centered: bool,
    h: str,
    mult: Optional[str],
    profile_eta: bool,
    lambda_ratio: Optional[str],
    no_penalize_diagonal: bool,
    nlambda: Optional[int],
    lambda_min_ratio: Optional[float],
    lam: Optional[float],
    ebic: bool,
    refit: bool,
    no_scale: bool,
    dump_loss: Optional[Path],
    out: Path,
    config_path: Optional[Path],
) -> None:
    """Estimate K (and eta) from a CSV of non-negative observations."""
    cfg = load_config(config_path)
    solver = solver_settings(cfg, lambda_ratio, no_penalize_diagonal)
    nlambda = nlambda if nlambda is not None else cfg.path.nlambda
    min_ratio = lambda_min_ratio if lambda_min_ratio is not None else cfg.path.lambda_min_ratio
    spec = ModelSpec(a=a, b=b, centered=centered)
    h_arg = parse_h(h)

    manifest = RunManifest("estimate", inputs=[str(data_path)])
    data = read_dataset(data_path)
    if not no_scale:
        data = standardize(data)
    click.echo(f"Read {data.n} observations of {data.m} variables from {data_path}")

    loss = assemble(spec, h_arg, data)
    delta = parse_mult(mult, data.n, data.m)
    if delta is not None and delta != 1.0:
        loss = amplify(loss, AmplifierSpec.multiplier(delta))
    if dump_loss is not None:
        write_snapshot(loss, dump_loss)
        manifest.add_output(dump_loss)

    solved, recovery = loss, None
    if profile_eta and loss.has_eta:
        solved, recovery = profile_out_eta(loss)

    if lam is not None:
        est = coordinate_descent(solved, lam, solver.lambda_eta(lam), cfg=solver)
        if recovery is not None:
            est.eta = recovery.recover(est.K)
        path = EstimatePath([est])
    else:
        grid = lambda_grid(lambda_max(solved, solver.lambda_ratio), nlambda, min_ratio)
        path = solve_path(solved, grid, solver, recovery)

    selected = len(path) - 1
    chosen = path[selected]
    scores = None
    if ebic:
        selected, scores, scored = select(path, loss, data.n, refit, solved, solver, recovery)
        chosen = scored[selected]
    if not no_scale:
        chosen = back_transform_estimate(chosen, data.scale, spec)

    records = []
    for k, entry in enumerate(path):
        records.append(
            {
                "lambda": entry.lam,
                "support_size": len(entry.edges),
                "ebic": scores[k].score if scores else None,
                "refitted": scores[k].refitted if scores else False,
                "converged": entry.converged,
            }
        )
    document = {
        "schema": SCHEMA,
        "kind": "estimate",
        "spec": spec.to_dict(),
        "h": h_label(h_arg if isinstance(h_arg, list) else [h_arg]),
        "lambda": chosen.lam,
        "K": chosen.K,
        "eta": chosen.eta,
        "support": [list(edge) for edge in chosen.edges],
        "converged": path[selected].converged,
        "iterations": path[selected].iterations,
        "scale": data.scale,
        "multiplier": delta,
        "path": records,
        "selected_index": selected,
    }
    out.parent.mkdir(parents=True, exist_ok=True)
    manifest.add_output(write_json(document, out, "Estimate"))
    manifest.config = {
        "data": str(data_path),
        "spec": spec.to_dict(),
        "h": h,
        "mult": mult,
        "profile_eta": profile_eta,
        "lambda": lam,
        "nlambda": nlambda,
        "lambda_min_ratio": min_ratio,
        "ebic": ebic,
        "refit": refit,
        "scale": not no_scale,
        "settings": {**cfg.to_dict(), "solver": dict(vars(solver))},
    }
    manifest.write(out)
    click.echo(
        f"Estimate at lambda={chosen.lam:.4g} with {len(chosen.edges)} edge(s) "
        f"written to {out}"
    )


@cli.command()
@click.option("--model", required=True, help="Exponents as <a>:<b>")
@click.option("--centered", is_flag=True, default=False, help="Fix eta0 to zero")
@click.option("--m", "m", required=True, type=int, help="Number of variables")
@click.option("--n", "n", required=True, type=int, help="Number of observations")
@click.option("--graph", default="block:0.2:10", help="block:<pi>:<blocks> or er:<pi>")
@click.option("--mu", type=float, default=None, help="Constant mean (a=b=1), eta0 = K0 mu0")
@click.option("--mu-sd", type=float, default=None, help="Random N(0, sd^2) means (a=b=1)")
@click.option("--eta", type=float, default=None, help="Constant eta0")
@click.option("--seed", type=int, default=None, help="Master seed")
@click.option("--diagnostics", is_flag=True, default=False, help="Estimate population constants")
@click.option("--h", "h", default="pow:1:3", help="h function used by --diagnostics")
@click.option("--mc-n", type=int, default=10000, help="Monte Carlo size for --diagnostics")
@click.option("--out", required=True, type=click.Path(path_type=Path), help="Data CSV file")
@config_option
def simulate(
    model: str,
    centered: bool,
    m: int,
    n: int,
    graph: str,
    mu: Optional[float],
    mu_sd: Optional[float],
    eta: Optional[float],
    seed: Optional[int],
    diagnostics: bool,
    h: str,
    mc_n: int,
    out: Path,
    config_path: Optional[Path],
) -> None:
    """Generate K0 on a random graph and Gibbs-sample a dataset from it."""
    check_mean_flags(mu, mu_sd, eta)
    cfg = load_config(config_path)
    seed = seed if seed is not None else cfg.gibbs.seed
    spec = ModelSpec.parse(model, centered=centered)
    h_arg = parse_h(h)
    espec = ExperimentSpec(
        spec=spec,
        m=m,
        n=n,
        graph=GraphSpec.parse(graph),
        h=h_arg,
        mu=mu,
        mu_sd=mu_sd,
        eta=eta,
        seed=seed,
        solver=cfg.solver,
        gibbs=cfg.gibbs,
        copositivity=cfg.copositivity,
    )
    manifest = RunManifest("simulate", config=espec.to_dict(), seeds=[seed])

    truth = build_truth(espec, 0)
    data = sample_model(spec, truth.params, n, cfg.gibbs, trial_rng(seed, 0, 1))
    out.parent.mkdir(parents=True, exist_ok=True)
    manifest.add_output(write_dataset(data, out))
    click.echo(f"Sampled {data.n} x {data.m} dataset into {out}")

    document: Dict[str, Any] = {
        "schema": SCHEMA,
        "kind": "truth",
        "spec": spec.to_dict(),
        "K0": truth.params.K,
        "eta0": truth.params.eta,
        "mu0": truth.mu,
        "support": [list(edge) for edge in truth.support],
        "min_eigenvalue": truth.min_eigenvalue,
        "seed": seed,
        "attempt": truth.attempt,
    }
    if diagnostics:
        report = population_diagnostics(
            spec, truth.params, h_arg, mc_n, cfg.gibbs, trial_rng(seed, 0, 2)
        )
        document["diagnostics"] = report.to_dict()
        click.echo(f"Incoherence alpha = {report.alpha:.4f}")
    truth_path = out.with_name(f"{out.stem}.truth.json")
    manifest.add_output(write_json(document, truth_path, "Ground truth"))
    manifest.write(out)
    click.echo(f"Truth with {len(truth.support)} edge(s) written to {truth_path}")


@cli.command()
@click.option("--model", required=True, help="Exponents as <a>:<b>")
@click.option("--centered", is_flag=True, default=False, help="Centered model and estimator")
@click.option("--graph", default="block:0.2:10", help="block:<pi>:<blocks> or er:<pi>")
@click.option("--m", "m", required=True, type=int, help="Number of variables")
@click.option("--n", "n", required=True, type=int, help="Number of observations")
@click.option("--h", "h", required=True, help="h function, e.g. pow:1:3")
@click.option("--mult", default=None, help="Multiplier: a real, auto, high, medium or low")
@click.option("--trials", type=int, default=10, help="Trials per K0")
@click.option("--num-k0", type=int, default=5, help="Distinct K0 draws")
@click.option("--nlambda", type=int, default=None, help="Path length")
@click.option("--lambda-min-ratio", type=float, default=None, help="Smallest over largest lambda")
@click.option("--lambda-ratio", default=None, help="lambda_eta / lambda_K (0 to inf)")
@click.option("--no-penalize-diagonal", is_flag=True, default=False, help="Leave K[j, j] unpenalized")
@click.option("--profile-eta", is_flag=True, default=False, help="Profile eta out before solving")
@click.option("--mu", type=float, default=None, help="Constant mean (a=b=1), eta0 = K0 mu0")
@click.option("--mu-sd", type=float, default=None, help="Random N(0, sd^2) means (a=b=1)")
@click.option("--eta", type=float, default=None, help="Constant eta0")
@click.option("--scale", is_flag=True, default=False, help="Standardize each sampled dataset")
@click.option("--ebic", is_flag=True, default=False, help="Record the eBIC-selected (TPR, FPR)")
@click.option("--seed", type=int, default=None, help="Master seed")
@click.option("--workers", type=int, default=1, help="Worker processes")
@click.option("--grid-size", type=int, default=1001, help="Points of the averaged ROC curve")
@click.option("--report", default="", help="Extra summary formats, e.g. md or json,md")
@click.option("--out-prefix", required=True, help="Prefix of the output files")
@config_option
def roc(
    model: str,
    centered: bool,
    graph: str,
    m: int,
    n: int,
    h: str,
    mult: Optional[str],
    trials: int,
    num_k0: int,
    nlambda: Optional[int],
    lambda_min_ratio: Optional[float],
    lambda_ratio: Optional[str],
    no_penalize_diagonal: bool,
    profile_eta: bool,
    mu: Optional[float],
    mu_sd: Optional[float],
    eta: Optional[float],
    scale: bool,
    ebic: bool,
    seed: Optional[int],
    workers: int,
    grid_size: int,
    report: str,
    out_prefix: str,
    config_path: Optional[Path],
) -> None:
    """Average ROC curves and AUCs of edge recovery over simulated replicates."""
    check_mean_flags(mu, mu_sd, eta)
    cfg = load_config(config_path)
    seed = seed if seed is not None else cfg.gibbs.seed
    prefix = Path(out_prefix)
    try:
        extra = create_reporters(report, prefix.parent) if report else []
    except ValueError as e:
        raise click.BadParameter(str(e), param_hint="--report")

    espec = ExperimentSpec(
        spec=ModelSpec.parse(model, centered=centered),
        m=m,
        n=n,
        graph=GraphSpec.parse(graph),
        h=parse_h(h),
        mult=parse_mult(mult, n, m),
        num_k0=num_k0,
        trials=trials,
        nlambda=nlambda if nlambda is not None else cfg.path.nlambda,
        lambda_min_ratio=(
            lambda_min_ratio if lambda_min_ratio is not None else cfg.path.lambda_min_ratio
        ),
        seed=seed,
        profile_eta=profile_eta,
        mu=mu,
        mu_sd=mu_sd,
        eta=eta,
        scale=scale,
        ebic=ebic,
        solver=solver_settings(cfg, lambda_ratio, no_penalize_diagonal),
        gibbs=cfg.gibbs,
        copositivity=cfg.copositivity,
    )
    manifest = RunManifest("roc", config=espec.to_dict(), seeds=[seed])
    click.echo(f"Running {num_k0} x {trials} replicates with {workers} worker(s)")

    result = run_experiment(espec, workers=workers, grid_size=grid_size)
    manifest.failures = result.failures

    table = None
    if result.curve is not None:
        table = pd.DataFrame({"fpr": result.curve.fpr, "tpr": result.curve.tpr})
    summary = result.summary()
    document = {
        "schema": SCHEMA,
        "kind": "auc",
        **summary,
        "config": espec.to_dict(),
    }
    run_report = RunReport(
        kind="auc",
        title=f"ROC experiment {prefix.name}",
        document=document,
        table=table,
        summary={k: v for k, v in summary.items() if k not in ("aucs", "ebic_point")},
    )
    prefix.parent.mkdir(parents=True, exist_ok=True)
    manifest.add_output(
        JSONReporter(prefix.parent).write_to_file(run_report, f"{prefix.name}.auc.json")
    )
    if table is not None:
        manifest.add_output(
            CSVReporter(prefix.parent).write_to_file(run_report, f"{prefix.name}.roc.csv")
        )
    for reporter in extra:
        if table is None and isinstance(reporter, CSVReporter):
            continue
        name = f"{prefix.name}.summary.{reporter.file_extension}"
        manifest.add_output(reporter.write_to_file(run_report, name))
    manifest.write(prefix.with_name(f"{prefix.name}.json"))

    if table is None:
        raise NumericError(f"All {result.failures} replicate(s) failed")
    click.echo(
        f"Mean AUC {result.mean_auc:.4f} (sd {result.sd_auc:.4f}) over "
        f"{len(result.aucs)} trial(s), {result.failures} failure(s)"
    )


@cli.command()
@click.option(
    "--target", required=True, type=click.Choice([t.value for t in Target]), help="Estimated parameter"
)
@click.option("--known", required=True, type=float, help="Known variance (mu) or known mean (sigma2)")
@click.option("--grid", required=True, help="True values as start:stop:step")
@click.option("--h", "h", required=True, help="Comma-separated h functions")
@click.option("--out", required=True, type=click.Path(path_type=Path), help="Study CSV file")
@config_option
def univariate(
    target: str,
    known: float,
    grid: str,
    h: str,
    out: Path,
    config_path: Optional[Path],
) -> None:
    """Asymptotic efficiency of the univariate truncated normal estimators."""
    cfg = load_config(config_path)
    study = UnivariateStudy(
        target=Target(target), known_value=known, grid=parse_grid(grid), hspecs=parse_hspec_list(h)
    )
    manifest = RunManifest(
        "univariate",
        config={
            "target": target,
            "known": known,
            "grid": study.grid,
            "h": [hf.spec_string() for hf in study.hspecs],
            "quadrature": dict(vars(cfg.quadrature)),
        },
    )
    frame = run_study(study, cfg.quadrature)
    failed = int(np.sum(frame["status"] != "ok"))
    manifest.failures = failed

    report = RunReport(kind="univariate", title="Univariate efficiency", table=frame)
    out.parent.mkdir(parents=True, exist_ok=True)
    manifest.add_output(CSVReporter(out.parent).write_to_file(report, out.name))
    manifest.write(out)
    if failed == len(frame):
        raise NumericError(f"All {failed} study point(s) failed")
    click.echo(f"Wrote {len(frame)} row(s) to {out} ({failed} failed)")


def _fail(error: Exception, code: int) -> None:
    click.echo(f"Error: {error}", err=True)
    sys.exit(code)


def main(argv: Optional[List[str]] = None) -> None:
    """Entry point mapping failures onto the exit code contract."""
    try:
        rv = cli.main(args=argv, prog_name="gsm", standalone_mode=False)
    except click.ClickException as e:
        e.show()
        sys.exit(EXIT_USAGE)
    except click.Abort:
        _fail(Exception("aborted"), EXIT_USAGE)
    except ConfigError as e:
        _fail(e, EXIT_USAGE)
    except DomainError as e:
        _fail(e, EXIT_DOMAIN)
    except NumericError as e:
        _fail(e, EXIT_NUMERIC)
    sys.exit(rv if isinstance(rv, int) else EXIT_OK)


if __name__ == "__main__":
    main()
