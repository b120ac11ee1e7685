"""
`gradpush run`: ejecuta el experimento Monte Carlo y escribe el CSV de trazas.

Sale con 2 si algún run divergió (el CSV se escribe igualmente con lo registrado).
"""
import logging
from pathlib import Path

import click

from gradpush.dependencies import load_config
from gradpush.errors import EXIT_DIVERGENCE, EXIT_OK
from gradpush.harness.experiment import run_experiment
from gradpush.harness.traces import emit_csv
from gradpush.schemas import RunSummary

logger = logging.getLogger(__name__)


@click.command("run")
@click.option("--config", "config_path", required=True, type=click.Path(dir_okay=False), help="YAML del experimento.")
@click.option("--out", "out_dir", type=click.Path(file_okay=False), default=None, help="Directorio de salida del CSV.")
@click.option("--seed", type=click.IntRange(min=0), default=None, help="Semilla maestra (sobrescribe la del fichero).")
@click.option("--runs", type=int, default=None, help="Número de runs R.")
@click.option("--horizon", type=int, default=None, help="Número de pasos T.")
@click.option("--n-jobs", type=int, default=None, help="Procesos en paralelo.")
def run_command(config_path, out_dir, seed, runs, horizon, n_jobs) -> int:
    cfg = load_config(config_path, seed=seed, runs=runs, horizon=horizon)
    output = Path(cfg.output)
    if out_dir is not None:
        output = Path(out_dir) / output.name

    result = run_experiment(cfg, n_jobs=n_jobs)
    emit_csv(result.traces, output, comment=result.header_comment())

    summary = RunSummary(
        output=str(output),
        runs=cfg.runs,
        horizon=cfg.horizon,
        n=cfg.n,
        tracked_nodes=result.tracked_nodes,
        diverged_runs=result.diverged_runs,
        p=result.schedule.p,
        z_star=result.objective.z_star.tolist(),
        elapsed_seconds=result.elapsed_seconds,
    )
    click.echo(summary.model_dump_json(indent=2))
    return EXIT_DIVERGENCE if result.diverged_runs else EXIT_OK
