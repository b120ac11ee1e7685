"""`gradpush verify-graph`: comprueba la B-conectividad fuerte y calcula δ, λ si pasa."""
import logging

import click

from gradpush.dependencies import build_graph_sequence, load_config
from gradpush.errors import EXIT_OK, EXIT_VALIDATION, SpectralError
from gradpush.graphs.connectivity import verify_B_strong_connectivity
from gradpush.graphs.spectral import spectral_constants
from gradpush.schemas import ConnectivityResponse

logger = logging.getLogger(__name__)


@click.command("verify-graph")
@click.option("--config", "config_path", required=True, type=click.Path(dir_okay=False), help="YAML del experimento.")
@click.option("--B", "B", required=True, type=click.IntRange(min=1), help="Longitud de ventana B.")
@click.option("--horizon", required=True, type=click.IntRange(min=1), help="Pasos a comprobar.")
def verify_graph_command(config_path, B, horizon) -> int:
    cfg = load_config(config_path)
    seq = build_graph_sequence(cfg)
    report = verify_B_strong_connectivity(seq, B, horizon)
    response = ConnectivityResponse(
        ok=report.ok,
        generator=seq.name,
        n=seq.n,
        B=B,
        horizon=horizon,
        windows_checked=report.windows_checked,
        first_failing_window=report.first_failing_window,
    )
    if report:
        try:
            constants = spectral_constants(seq, B, horizon)
            response.delta, response.lam, response.method = constants.delta, constants.lam, constants.method
        except SpectralError as e:
            logger.warning("Spectral constants not available: %s", e)
    logger.info("Sequence '%s' %s %d-strongly connected over %d steps", seq.name, "is" if report else "is NOT", B, horizon)
    click.echo(response.model_dump_json(indent=2))
    return EXIT_OK if report else EXIT_VALIDATION
