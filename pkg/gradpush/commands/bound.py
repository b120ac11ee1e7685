"""`gradpush bound`: compara el lado izquierdo medido con la cota de convergencia."""
import click

from gradpush.dependencies import build_graph_sequence, build_objective, build_schedule, load_config
from gradpush.errors import EXIT_OK
from gradpush.graphs.spectral import spectral_constants
from gradpush.harness.theorem1 import theorem1_bound_report
from gradpush.harness.traces import read_csv


def default_taus(horizon: int) -> list[int]:
    return sorted({tau for tau in (10, 50, horizon - 1) if 2 <= tau <= horizon})


@click.command("bound")
@click.option("--config", "config_path", required=True, type=click.Path(dir_okay=False), help="YAML con el que se generó la traza.")
@click.option("--trace", "trace_path", required=True, type=click.Path(dir_okay=False), help="CSV de `gradpush run`.")
@click.option("--D", "D", required=True, type=click.FloatRange(min=0.0), help="Cota a priori de ‖z_i(t)‖.")
@click.option("--tau", "taus", multiple=True, type=click.IntRange(min=2), help="τ a evaluar (repetible).")
@click.option("--B", "B", type=click.IntRange(min=1), default=None, help="B para δ y λ; por defecto el de la secuencia.")
def bound_command(config_path, trace_path, D, taus, B) -> int:
    cfg = load_config(config_path)
    traces = read_csv(trace_path)
    objective = build_objective(cfg)
    seq = build_graph_sequence(cfg)
    schedule = build_schedule(cfg, objective, seq)
    constants = spectral_constants(seq, B or seq.declared_B or 1, cfg.horizon)

    report = theorem1_bound_report(
        traces,
        objective,
        p=schedule.p,
        constants=constants,
        D=D,
        tau_list=list(taus) or default_taus(cfg.horizon),
    )
    click.echo(report.model_dump_json(indent=2))
    return EXIT_OK
