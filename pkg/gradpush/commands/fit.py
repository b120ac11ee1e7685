"""`gradpush fit`: pendiente log-log de una métrica de la traza."""
import click

from gradpush.errors import EXIT_OK
from gradpush.harness.fitting import rate_fit
from gradpush.harness.traces import read_csv


@click.command("fit")
@click.option("--trace", "trace_path", required=True, type=click.Path(dir_okay=False), help="CSV de `gradpush run`.")
@click.option("--metric", required=True, help="Nombre de la métrica (p. ej. gap_zhat).")
@click.option("--from", "from_t", required=True, type=click.IntRange(min=1), help="Primer t de la ventana.")
@click.option("--to", "to_t", required=True, type=click.IntRange(min=1), help="Último t de la ventana.")
@click.option("--node", type=int, default=None, help="Ajustar solo este nodo.")
@click.option("--conservative", is_flag=True, help="Ajustar media + 2·SE.")
def fit_command(trace_path, metric, from_t, to_t, node, conservative) -> int:
    traces = read_csv(trace_path)
    result = rate_fit(traces, metric, (from_t, to_t), node=node, conservative=conservative)
    click.echo(result.model_dump_json(indent=2))
    return EXIT_OK
