import logging
import os
import sys

from dotenv import load_dotenv
load_dotenv()

import click
from pydantic import ValidationError

from gradpush import __version__
from gradpush.commands.bound import bound_command
from gradpush.commands.fit import fit_command
from gradpush.commands.run import run_command
from gradpush.commands.verify_graph import verify_graph_command
from gradpush.errors import EXIT_IO, EXIT_OK, EXIT_VALIDATION, GradPushError

# Configurar logging (stderr; stdout queda para los informes JSON)
logging.basicConfig(
    level=os.getenv("GRADPUSH_LOG_LEVEL", "INFO").upper(),
    format='%(asctime)s - %(name)s - %(levelname)s - %(message)s'
)
logger = logging.getLogger(__name__)


@click.group()
@click.version_option(__version__, prog_name="gradpush")
def cli():
    """Subgradient-push estocástico sobre grafos dirigidos variables en el tiempo."""


cli.add_command(run_command)
cli.add_command(verify_graph_command)
cli.add_command(bound_command)
cli.add_command(fit_command)


def run_cli(args: list[str] | None = None) -> int:
    """
    Ejecuta el CLI y devuelve el código de salida en lugar de terminar el proceso.

    Manejador global: errores de validación -> 1, divergencia -> 2, I/O -> 3.
    """
    try:
        code = cli.main(args=args, prog_name="gradpush", standalone_mode=False)
    except click.exceptions.Abort:
        click.echo("Aborted!", err=True)
        return EXIT_VALIDATION
    except click.ClickException as e:
        e.show()
        return EXIT_VALIDATION
    except GradPushError as e:
        logger.error("%s: %s", type(e).__name__, e)
        return e.exit_code
    except (ValidationError, ValueError) as e:
        logger.error("Validation error: %s", e)
        return EXIT_VALIDATION
    except OSError as e:
        logger.error("I/O error: %s", e)
        return EXIT_IO
    return EXIT_OK if code is None else int(code)


def main() -> None:
    sys.exit(run_cli())


if __name__ == "__main__":
    main()
